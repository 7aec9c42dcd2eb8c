import json

from brauercell.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_basis_split_example(capsys):
    code, out = run(capsys, "basis", "--flavor", "symplectic", "--r", "2",
                    "--N", "1", "--split")
    assert code == 0
    data = json.loads(out)
    assert len(data["entries"]) == 3
    assert sum(e["kernel"] for e in data["entries"]) == 1


def test_basis_symmetric_dual(capsys):
    code, out = run(capsys, "basis", "--flavor", "symmetric", "--r", "3", "--dual")
    assert code == 0
    assert len(json.loads(out)["entries"]) == 6


def test_cap_exit_code(capsys):
    code, _ = run(capsys, "basis", "--flavor", "symplectic", "--r", "99", "--N", "1")
    assert code == 2


def test_usage_errors(capsys):
    assert main(["certify", "--flavor", "symplectic", "--r", "2"]) == 1  # no N
    assert main(["certify", "--flavor", "orthogonal", "--r", "2", "--N", "2",
                 "--field", "Fp", "--p", "2"]) == 1
    assert main(["certify", "--flavor", "nosuch", "--r", "2", "--N", "1"]) == 1
    assert main(["nosuchcommand"]) == 1
    capsys.readouterr()


def test_certify_exit_codes(capsys):
    code, out = run(capsys, "certify", "--flavor", "symplectic", "--r", "3", "--N", "1")
    assert code == 0
    data = json.loads(out)
    assert data["pass"] is True
    checks = {c["name"]: c for c in data["sections"]["split_basis"]["checks"]}
    assert checks["image rank over Q = sum of squared permissible path counts"]["got"] == 5
    code, out = run(capsys, "certify", "--flavor", "symmetric", "--r", "3", "--N", "2")
    assert code == 0
    code, out = run(capsys, "certify", "--flavor", "orthogonal", "--r", "2", "--N", "1")
    assert code == 0
    data = json.loads(out)
    assert data["pass"] is True


def test_certify_failure_exit_code(capsys, monkeypatch):
    import brauercell.cli as cli
    from brauercell.sft import Certificate

    def fake_harterich(r, n, max_tensor_dim=65536, fields=()):
        cert = Certificate({"flavor": "symmetric", "r": r, "N": n})
        cert.add("forced failure", 1, 2)
        return cert

    monkeypatch.setattr("brauercell.sft.harterich_check", fake_harterich)
    code, out = run(capsys, "certify", "--flavor", "symmetric", "--r", "2", "--N", "2")
    assert code == 3
    assert json.loads(out)["pass"] is False


def test_dims_symplectic_catalan(capsys):
    code, out = run(capsys, "dims", "--flavor", "symplectic", "--N", "1", "--r", "4")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["sum_squared_permissible_paths"] for r in rows] == [1, 2, 5, 14]
    assert [r["image_rank"] for r in rows] == [1, 2, 5, 14]


def test_dims_table_format(capsys):
    code, out = run(capsys, "dims", "--flavor", "symmetric", "--N", "2", "--r", "3",
                    "--format", "table")
    assert code == 0
    assert out.splitlines()[0] == "flavor=symmetric N=2"
    assert out.strip().splitlines()[-1].split() == ["3", "6", "5", "5"]


def test_dims_respects_tensor_cap(capsys):
    code, out = run(capsys, "dims", "--flavor", "symplectic", "--N", "2", "--r", "3",
                    "--max-tensor-dim", "16")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert rows[0]["image_rank"] == 1 and rows[1]["image_rank"] == 3
    assert rows[2]["image_rank"] is None


def test_determinism(tmp_path, capsys):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for out in (out1, out2):
        code = main(["certify", "--flavor", "symplectic", "--r", "2", "--N", "1",
                     "--out", str(out)])
        assert code == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_field_fp_check(capsys):
    code, out = run(capsys, "certify", "--flavor", "symplectic", "--r", "2",
                    "--N", "1", "--field", "Fp", "--p", "3")
    assert code == 0
    names = [c["name"] for c in json.loads(out)["sections"]["split_basis"]["checks"]]
    assert "image rank over F_3" in names


def test_composite_p_rejected(capsys):
    assert main(["certify", "--flavor", "symplectic", "--r", "2", "--N", "1",
                 "--field", "Fp", "--p", "6"]) == 1
    capsys.readouterr()

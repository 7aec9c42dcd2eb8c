"""Command-line front end: build bases, run certificates, dump reports.

Exit codes: 0 success, 1 usage error, 2 cap exceeded, 3 certificate failure.
All numeric output is exact (integers and fraction strings); JSON output is
byte-identical across runs for the same configuration, with wall-clock
timing reported on stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import CapExceeded

USAGE_ERROR = 1
CAP_ERROR = 2
CERT_FAILURE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(USAGE_ERROR)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="brauercell",
                description="Cellular bases of Brauer/symmetric group algebras "
                            "and kernel/image certificates on tensor space")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, need_n=False):
        sp.add_argument("--flavor", required=True,
                        choices=["symplectic", "orthogonal", "symmetric"])
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--N", type=int, required=need_n, default=None)
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        sp.add_argument("--format", choices=["json", "table"], default="json")
        sp.add_argument("--max-r", type=int, default=5, dest="max_r")
        sp.add_argument("--max-tensor-dim", type=int, default=65536,
                        dest="max_tensor_dim")
        sp.add_argument("--jobs", type=int, default=1,
                        help="reserved; runs are deterministic and single-process")

    b = sub.add_parser("basis", help="dump a cellular basis")
    common(b)
    b.add_argument("--dual", action="store_true",
                   help="use the dual cellular structure")
    b.add_argument("--split", action="store_true",
                   help="dump the split (kernel/image adapted) basis")

    c = sub.add_parser("certify", help="run the kernel/image certificate")
    common(c)
    c.add_argument("--field", choices=["Q", "Fp"], default="Q")
    c.add_argument("--p", type=int, default=None)
    c.add_argument("--seminormal-cap", type=int, default=4, dest="seminormal_cap",
                   help="run seminormal specialization checks for r up to this")

    d = sub.add_parser("dims", help="permissible path counts and image ranks")
    common(d)
    return p


def _validate(args) -> None:
    if args.command in ("certify", "dims") or getattr(args, "split", False):
        if args.N is None:
            raise UsageError("--N is required for this command")
    if args.N is not None and args.N < 1:
        raise UsageError("--N must be positive")
    if args.r < 1:
        raise UsageError("--r must be positive")
    if args.max_r < 1 or args.max_tensor_dim < 1:
        raise UsageError("caps must be positive")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    if getattr(args, "field", "Q") == "Fp":
        if args.p is None or not _is_prime(args.p):
            raise UsageError("--field Fp requires a prime --p")
        if args.flavor == "orthogonal" and args.p == 2:
            raise UsageError("the orthogonal case excludes characteristic 2")
    if args.r > args.max_r:
        raise CapExceeded(f"r={args.r} exceeds the cap {args.max_r}")


class UsageError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _basis_flavor(flavor: str, dual: bool) -> str:
    if flavor == "symmetric":
        return "symmetric-dual" if dual else "symmetric"
    if flavor == "symplectic":
        return "brauer-dual-murphy" if dual else "brauer-murphy"
    return "brauer-murphy" if dual else "brauer-dual-murphy"


def cmd_basis(args) -> tuple[dict, int]:
    from .murphy import murphy_basis
    if args.split:
        if args.flavor == "symmetric":
            # the dual-Murphy basis of the symmetric group already splits
            basis = murphy_basis(args.r, "symmetric-dual", max_r=args.max_r)
            entries = []
            for (v, s, t) in basis.index:
                entries.append({
                    "vertex": v.to_json(),
                    "s": [w.to_json() for w in basis.paths[v][s]],
                    "t": [w.to_json() for w in basis.paths[v][t]],
                    "kernel": len(v.lam) > args.N,
                    "element": basis.elements[(v, s, t)].to_json(),
                })
        else:
            from .sft import SplitBasis
            split = SplitBasis(args.r, args.N, args.flavor, max_r=args.max_r)
            entries = split.to_json()
        payload = {"command": "basis", "flavor": args.flavor, "r": args.r,
                   "N": args.N, "split": True, "entries": entries}
        return payload, 0
    basis = murphy_basis(args.r, _basis_flavor(args.flavor, args.dual),
                         max_r=args.max_r)
    payload = {"command": "basis", "flavor": args.flavor, "r": args.r,
               "dual": args.dual, "split": False, "entries": basis.basis_json()}
    return payload, 0


def cmd_certify(args) -> tuple[dict, int]:
    from .sft import SplitBasis, certify_sft, quotient_cell_modules
    fields = (args.p,) if args.field == "Fp" else ()
    sections = []
    if args.flavor == "symmetric":
        from .sft import harterich_check
        cert = harterich_check(args.r, args.N, max_tensor_dim=args.max_tensor_dim,
                               fields=fields)
        sections.append(("harterich", cert))
        all_pass = cert.passed
    else:
        split = SplitBasis(args.r, args.N, args.flavor, max_r=args.max_r)
        cert = certify_sft(args.r, args.N, args.flavor, split=split,
                           max_tensor_dim=args.max_tensor_dim, fields=fields)
        quo = quotient_cell_modules(args.r, args.N, args.flavor, split=split)
        sections = [("split_basis", cert), ("quotient_cell_modules", quo)]
        all_pass = cert.passed and quo.passed
        if args.r <= args.seminormal_cap:
            from .murphy import murphy_basis
            from .seminormal import gz_idempotents, specialize_quotient
            basis = murphy_basis(args.r, split.basis.flavor)
            records = []
            for v in basis.vertices:
                sd = gz_idempotents(basis, v)
                rec = specialize_quotient(sd, split.delta0, args.flavor, args.N)
                records.append(rec)
                if not rec.skipped:
                    all_pass = all_pass and rec.passed
            sections.append(("seminormal", records))
    payload = {"command": "certify", "flavor": args.flavor, "r": args.r,
               "N": args.N, "pass": all_pass, "sections": {}}
    for name, obj in sections:
        if isinstance(obj, list):
            payload["sections"][name] = [rec.to_json() for rec in obj]
        else:
            payload["sections"][name] = obj.to_json()
    return payload, 0 if all_pass else CERT_FAILURE


def cmd_dims(args) -> tuple[dict, int]:
    from .diagrams import all_diagrams, all_permutation_diagrams
    from .diagrams import AlgebraElement
    from .sft import FLAVOR_DATA, algebra_dimension, expected_image_dimension
    from .tensorrep import TensorRep, image_rank
    _bf, delta_fn, _pk = FLAVOR_DATA[args.flavor]
    delta0 = delta_fn(args.N)
    rows = []
    for r in range(1, args.r + 1):
        expected = expected_image_dimension(r, args.N, args.flavor)
        row = {"r": r, "dim_algebra": algebra_dimension(r, args.flavor),
               "sum_squared_permissible_paths": expected, "image_rank": None}
        dim_v = {"symplectic": 2 * args.N, "orthogonal": args.N,
                 "symmetric": args.N}[args.flavor]
        if dim_v ** r <= args.max_tensor_dim:
            if args.flavor == "symmetric":
                rep = TensorRep("permutation", args.N, r,
                                max_tensor_dim=args.max_tensor_dim)
                gens = [AlgebraElement.from_diagram(d)
                        for d in all_permutation_diagrams(r)]
            else:
                rep = TensorRep(args.flavor, args.N, r,
                                max_tensor_dim=args.max_tensor_dim)
                gens = [AlgebraElement.from_diagram(d, 1, delta0)
                        for d in all_diagrams(r)]
            row["image_rank"] = image_rank(gens, rep)
        rows.append(row)
    payload = {"command": "dims", "flavor": args.flavor, "N": args.N,
               "rows": rows}
    return payload, 0


def render(payload: dict, fmt: str) -> str:
    if fmt == "json" or payload.get("command") != "dims":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    lines = [f"flavor={payload['flavor']} N={payload['N']}",
             f"{'r':>3} {'dim':>8} {'sum#perm^2':>12} {'image_rank':>12}"]
    for row in payload["rows"]:
        rank = "-" if row["image_rank"] is None else str(row["image_rank"])
        lines.append(f"{row['r']:>3} {row['dim_algebra']:>8} "
                     f"{row['sum_squared_permissible_paths']:>12} {rank:>12}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    t0 = time.monotonic()
    try:
        _validate(args)
        if args.command == "basis":
            payload, code = cmd_basis(args)
        elif args.command == "certify":
            payload, code = cmd_certify(args)
        else:
            payload, code = cmd_dims(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR
    except CapExceeded as exc:
        sys.stderr.write(f"cap exceeded: {exc}\n")
        return CAP_ERROR
    text = render(payload, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    sys.stderr.write(f"elapsed: {time.monotonic() - t0:.3f}s\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())

from fractions import Fraction

import pytest

import brauercell.branching as br
from brauercell.branching import Vertex
from brauercell.diagrams import AlgebraElement, BrauerDiagram, all_diagrams, walled_filter
from brauercell.exactmat import sparse_solve_q
from brauercell.murphy import murphy_basis
from brauercell.sft import (FLAVOR_DATA, SplitBasis, algebra_dimension,
                            build_b_generator, build_d_generator, certify_sft,
                            expected_image_dimension, harterich_check,
                            ideal_generators, ideal_span_rank,
                            marginal_vertices, quotient_cell_modules,
                            sum_all_diagrams, walled_signed_sum)
from brauercell.tensorrep import TensorRep


def elt(d, coeff=1, delta=None):
    return AlgebraElement.from_diagram(d, coeff, delta)


def test_b_generator_b2():
    g = build_b_generator(Vertex((2,), 0), 1, 2)
    assert g.b == sum_all_diagrams(2, -2)
    assert g.b_prime == elt(BrauerDiagram.e(1, 2), 1, -2)
    assert g.beta_prime == elt(BrauerDiagram.e(1, 2), Fraction(1, 2), -2)
    x = murphy_basis(2, "brauer-murphy").generators[Vertex((2,), 0)].with_delta(-2)
    assert x * g.beta_prime == g.b_prime
    assert x == g.b - g.b_prime
    with pytest.raises(ValueError):
        build_b_generator(Vertex((1,), 0), 1, 2)


def test_b_generator_level4():
    # b_((2),1) at level 4 = (all of B_2) (x) 1 followed by e_3
    g = build_b_generator(Vertex((2,), 1), 1, 4)
    expected = sum_all_diagrams(2, -2).tensor(AlgebraElement.one(2, -2)) \
        * elt(BrauerDiagram.e(3, 4), 1, -2)
    assert g.b == expected


def test_d_generator_examples():
    # vertex (2) has conjugate (1,1), so it carries d_{1,1} = 1 - e_1;
    # vertex (1,1) has conjugate (2) and carries d_{2,0} = 1 - s_1
    g = build_d_generator(Vertex((2,), 0), 1, 2)
    assert g.b == AlgebraElement.one(2, 1) - elt(BrauerDiagram.e(1, 2), 1, 1)
    g2 = build_d_generator(Vertex((1, 1), 0), 1, 2)
    assert g2.b == AlgebraElement.one(2, 1) - elt(BrauerDiagram.s(1, 2), 1, 1)
    assert g2.b_prime.is_zero
    # (2,1)-walled diagrams of B_3 number 6 (they biject with S_3)
    count = sum(1 for d in all_diagrams(3) if walled_filter(2, 1, d)[0])
    assert count == 6
    g21 = build_d_generator(Vertex((2, 1), 0), 2, 3)
    assert len(g21.b.terms) == 6
    assert g21.b == walled_signed_sum(2, 1, 2)


def test_walled_orbit_correction_with_stabilizers():
    # the (12)(34) double swap stabilizes corank-2 (2,2)-walled diagrams,
    # so beta' picks up 1/2 weights there; the factorization still holds
    g = build_d_generator(Vertex((2, 2), 0), 3, 4)
    y = murphy_basis(4, "brauer-dual-murphy").generators[Vertex((2, 2), 0)]
    assert y.with_delta(3) * g.beta_prime == g.b_prime
    assert y.with_delta(3) * g.beta == g.b
    assert any(isinstance(c, Fraction) and c.denominator == 2
               for c in g.beta_prime.terms.values())


@pytest.mark.parametrize("flavor,ns,max_level", [("symplectic", (1, 2), 5),
                                                 ("orthogonal", (1, 2, 3), 5)])
def test_marginal_identity_and_factorization(flavor, ns, max_level):
    """m = b - b'; b' = m beta' with support of corank >= m+1 (axiom Q2)."""
    basis_flavor = FLAVOR_DATA[flavor][0]
    build = build_b_generator if flavor == "symplectic" else build_d_generator
    for n in ns:
        delta0 = -2 * n if flavor == "symplectic" else n
        for level in range(1, max_level + 1):
            mb = murphy_basis(level, basis_flavor)
            for v in marginal_vertices(level, n, flavor):
                if v.level != level:
                    continue
                g = build(v, n, level)
                gen = mb.generators[v].with_delta(delta0)
                assert gen == g.b - g.b_prime
                assert gen * g.beta_prime == g.b_prime
                assert gen * g.beta == g.b
                assert all(d.rank_corank()[1] >= v.l + 1 for d in g.b_prime.terms)


@pytest.mark.parametrize("flavor,key", [("symplectic", "symplectic"),
                                        ("orthogonal", "orthogonal"),
                                        ("symmetric", "symmetric")])
def test_q1_permissible_successors_and_predecessors(flavor, key):
    add_only = flavor == "symmetric"
    pred = br.PERMISSIBLE[key]
    for n in (1, 2, 3):
        for level in range(0, 6):
            for v in br.vertices_at_level(level, add_only):
                if not pred(v, n):
                    continue
                succs = br.young_edges(v) if add_only else br.brauer_edges(v)
                assert any(pred(w, n) for w in succs)
                if level >= 1:
                    prevs = [u for u in br.vertices_at_level(level - 1, add_only)
                             if br.is_edge(u, v, add_only)]
                    assert any(pred(u, n) for u in prevs)


def test_split_basis_b2():
    sb = SplitBasis(2, 1, "symplectic")
    v = Vertex((2,), 0)
    assert not sb.path_permissible[(v, 0)]
    assert sb.element(v, 0, 0) == sum_all_diagrams(2, -2)
    # permissible pairs keep their Murphy representative
    v11 = Vertex((1, 1), 0)
    assert sb.element(v11, 0, 0) == AlgebraElement.one(2, -2)
    assert sb.kernel_count() == 1
    assert sb.permissible_dimension() == 2


@pytest.mark.parametrize("flavor,n,rmax", [("symplectic", 1, 5), ("symplectic", 2, 5),
                                           ("orthogonal", 2, 5)])
def test_split_basis_unitriangular(flavor, n, rmax):
    for r in range(2, rmax + 1):
        sb = SplitBasis(r, n, flavor)
        for v in sb.basis.vertices:
            paths = sb.basis.paths[v]
            for ti in range(len(paths)):
                vec = sb.module_vectors[(v, ti)]
                assert vec[ti] == 1
                for tj in range(len(paths)):
                    if tj != ti and vec[tj] != 0:
                        assert br.path_revlex_gt(paths[tj], paths[ti],
                                                 sb.basis.dual)


def test_split_equals_murphy_on_permissible():
    sb = SplitBasis(3, 1, "symplectic")
    for v in sb.basis.vertices:
        for ti in range(len(sb.basis.paths[v])):
            if sb.path_permissible[(v, ti)]:
                vec = sb.module_vectors[(v, ti)]
                assert vec == [1 if tj == ti else 0
                               for tj in range(len(sb.basis.paths[v]))]


def test_certify_symplectic_n1():
    cert = certify_sft(2, 1, "symplectic", fields=(2, 3, 5))
    assert cert.passed
    got = {c.name: c.got for c in cert.checks}
    assert got["image rank over Q = sum of squared permissible path counts"] == 2
    cert3 = certify_sft(3, 1, "symplectic")
    assert cert3.passed
    got3 = {c.name: c.got for c in cert3.checks}
    assert got3["image rank over Q = sum of squared permissible path counts"] == 5
    assert got3["kernel count + image dimension"] == 15  # dim ker = 10


def test_certify_orthogonal_n1_r2():
    # V is one-dimensional: the image is the scalars, the kernel has rank 2
    cert = certify_sft(2, 1, "orthogonal")
    assert cert.passed
    got = {c.name: (c.expected, c.got) for c in cert.checks}
    assert got["image rank over Q = sum of squared permissible path counts"] == (1, 1)


def test_faithful_below_n():
    # r <= N: no kernel at all
    assert expected_image_dimension(3, 3, "symplectic") == algebra_dimension(3, "symplectic")
    assert expected_image_dimension(4, 4, "orthogonal") == algebra_dimension(4, "orthogonal")
    assert ideal_generators(3, 3, "symplectic", -6) == []
    cert = certify_sft(2, 2, "symplectic")
    assert cert.passed
    # full-rank certificates at the faithfulness boundary
    assert certify_sft(3, 3, "symplectic", check_ideal=False).passed
    assert certify_sft(4, 4, "orthogonal", check_ideal=False).passed
    assert harterich_check(3, 3).passed


def test_harterich_examples():
    cert = harterich_check(3, 2)
    assert cert.passed
    got = {c.name: c.got for c in cert.checks}
    assert got["image rank over Q"] == 5  # dim ker = 1
    cert4 = harterich_check(4, 2)
    assert cert4.passed
    got4 = {c.name: c.got for c in cert4.checks}
    assert got4["image rank over Q"] == 14  # dim ker = 10
    assert harterich_check(2, 3).passed  # faithful for r <= N


def test_harterich_kernel_generator_is_antisymmetrizer():
    gens = ideal_generators(3, 2, "symmetric", None)
    assert len(gens) == 1
    g = gens[0]
    assert len(g.terms) == 6
    assert all(c in (1, -1) for c in g.terms.values())


def test_quotient_cell_modules_examples():
    q = quotient_cell_modules(2, 1, "symplectic")
    assert q.passed
    byname = {c.name: (c.expected, c.got) for c in q.checks}
    assert byname["Gram rank at (),1"] == (1, 1)
    q3 = quotient_cell_modules(3, 1, "symplectic")
    assert q3.passed
    byname3 = {c.name: (c.expected, c.got) for c in q3.checks}
    assert byname3["Gram rank at (1,),1"] == (2, 2)


def test_dims_examples():
    # symplectic N=2, r=2: all of B_2 injects
    assert expected_image_dimension(2, 2, "symplectic") == 3
    # symmetric N=2, r=3
    assert expected_image_dimension(3, 2, "symmetric") == 5
    # symplectic N=1: Catalan numbers
    assert [expected_image_dimension(r, 1, "symplectic") for r in (1, 2, 3, 4, 5)] \
        == [1, 2, 5, 14, 42]


def test_ideal_span_small():
    gens = ideal_generators(2, 1, "symplectic", -2)
    assert ideal_span_rank(gens, 2, "symplectic") == 1
    gens_o = ideal_generators(2, 1, "orthogonal", 1)
    assert ideal_span_rank(gens_o, 2, "orthogonal") == 2


def test_quotient_cellularity_shadow(rng):
    """Images of permissible Murphy elements form a basis in which the
    product phi(m_st) phi(a) expands over permissible (lambda; s, v) cells
    plus strictly dominating ones."""
    r, n = 3, 1
    sb = SplitBasis(r, n, "symplectic")
    rep = TensorRep("symplectic", n, r)
    labels, rows = [], []
    for v in sb.basis.vertices:
        for s in range(len(sb.basis.paths[v])):
            for t in range(len(sb.basis.paths[v])):
                if sb.pair_permissible(v, s, t):
                    labels.append((v, s, t))
                    rows.append(rep.rep_element(
                        sb.basis.elements[(v, s, t)].with_delta(-2)).to_vector())
    ds = all_diagrams(r)
    for _ in range(6):
        a = elt(rng.choice(ds), 1, -2)
        for (v, s, t) in labels[:4]:
            prod = sb.basis.elements[(v, s, t)].with_delta(-2) * a
            coeffs = sparse_solve_q(rows, rep.rep_element(prod).to_vector())
            assert coeffs is not None
            for (w, u1, u2), c in zip(labels, coeffs):
                if c == 0:
                    continue
                if w == v:
                    assert u1 == s
                else:
                    assert sb.basis.strictly_dominates(w, v)


def test_split_basis_rejects_symmetric():
    with pytest.raises(ValueError):
        SplitBasis(3, 2, "symmetric")

"""Kernel generators, the modified (split) cellular basis, and the
kernel/image certificates for diagram algebras acting on tensor space.

* symplectic: B_r at delta = -2N with the Murphy basis; marginal vertices
  have lam_1 = N+1 and carry the unsigned all-diagram sum b (a diagrammatic
  Pfaffian).
* orthogonal: B_r at delta = N with the dual-Murphy basis; marginal
  vertices have lam'_1 + lam'_2 = N+1 and carry signed walled-diagram sums d
  (diagrammatic minors).
* symmetric: the unsigned place-permutation action of the symmetric group
  on (Z^N)^{tensor r}; the dual-Murphy basis already splits, with kernel
  cells those of more than N rows.

The split basis replaces m_st by n_st = a_s* m a_t, where a_t corrects the
path at its first non-permissible vertex by the factorization b = m * beta;
n_st = m_st when both paths are permissible and maps to zero otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import branching as br
from .branching import Path, Vertex, conjugate
from .diagrams import (AlgebraElement, BrauerDiagram, all_diagrams,
                       all_permutation_diagrams, diagram_mult, walled_filter)
from .exactmat import sparse_rank_q
from .murphy import MurphyBasis, murphy_basis
from .tensorrep import TensorRep, image_rank

FLAVOR_DATA = {
    # flavor -> (basis flavor, delta0(N), permissibility key)
    "symplectic": ("brauer-murphy", lambda n: -2 * n, "symplectic"),
    "orthogonal": ("brauer-dual-murphy", lambda n: n, "orthogonal"),
    "symmetric": ("symmetric-dual", lambda n: None, "symmetric"),
}


def sum_all_diagrams(r: int, delta0, min_corank: int = 0) -> AlgebraElement:
    """The unsigned sum of all diagrams of B_r (of corank >= min_corank)."""
    terms = {d: 1 for d in all_diagrams(r) if d.rank_corank()[1] >= min_corank}
    return AlgebraElement(r, terms, delta0)


def walled_signed_sum(a: int, b: int, delta0, min_corank: int = 0) -> AlgebraElement:
    """The signed sum of (a,b)-walled diagrams of B_{a+b}."""
    terms = {}
    for d in all_diagrams(a + b):
        ok, sign = walled_filter(a, b, d)
        if ok and d.rank_corank()[1] >= min_corank:
            terms[d] = sign
    return AlgebraElement(a + b, terms, delta0)


def _left_orbit_correction(r: int, delta0) -> AlgebraElement:
    """beta' for the symplectic case: sum over S_r-orbit representatives x of
    corank >= 1 diagrams, with coefficient 1/|stabilizer|, so that
    x_{(r)} beta' equals the corank >= 1 part of the all-diagram sum."""
    order = 1
    for k in range(2, r + 1):
        order *= k
    perms = [d for d in all_permutation_diagrams(r)]
    todo = {d for d in all_diagrams(r) if d.rank_corank()[1] >= 1}
    terms = {}
    while todo:
        rep = min(todo)
        orbit = set()
        for p in perms:
            q, loops = diagram_mult(p, rep)
            assert loops == 0
            orbit.add(q)
        todo -= orbit
        terms[rep] = Fraction(1, order // len(orbit))
    return AlgebraElement(r, terms, delta0)


def _walled_orbit_correction(a: int, b: int, delta0) -> AlgebraElement:
    """beta' for the orthogonal case: sum of sgn(x)/|stabilizer| over orbit
    representatives x of the left (S_a x S_b)-action on corank >= 1 walled
    diagrams, so that A_{(a,b)} beta' equals the corank >= 1 signed walled
    sum.  (The action is usually free, but not always: (12)(34) stabilizes
    the corank-2 (2,2)-walled diagrams, whence the stabilizer weights.
    Stabilizers are necessarily even, so the signed orbit sums cannot
    cancel.)"""
    r = a + b
    group = []
    for pa in itertools.permutations(range(1, a + 1)):
        for pb in itertools.permutations(range(a + 1, r + 1)):
            group.append(BrauerDiagram.from_perm(tuple(pa) + tuple(pb)))
    todo = {}
    for d in all_diagrams(r):
        ok, sign = walled_filter(a, b, d)
        if ok and d.rank_corank()[1] >= 1:
            todo[d] = sign
    terms = {}
    while todo:
        rep = min(todo)
        sign = todo[rep]
        orbit = set()
        for p in group:
            q, loops = diagram_mult(p, rep)
            assert loops == 0
            orbit.add(q)
        stab = len(group) // len(orbit)
        for q in orbit:
            todo.pop(q)
        terms[rep] = sign if stab == 1 else Fraction(sign, stab)
    return AlgebraElement(r, terms, delta0)


@dataclass(frozen=True)
class KernelGenerator:
    """Marginal-vertex data: m = b - b', b in the kernel, b' = m * beta'."""

    flavor: str
    vertex: Vertex
    b: AlgebraElement
    b_prime: AlgebraElement
    beta_prime: AlgebraElement  # width-r correction with b' = m * beta'
    beta: AlgebraElement        # 1 + beta_prime, so b = m * beta


def _is_marginal(v: Vertex, n: int, flavor: str) -> bool:
    if flavor == "symplectic":
        return bool(v.lam) and v.lam[0] == n + 1
    if flavor == "orthogonal":
        conj = conjugate(v.lam)
        tot = (conj[0] if conj else 0) + (conj[1] if len(conj) > 1 else 0)
        return tot == n + 1
    if flavor == "symmetric":
        return len(v.lam) == n + 1
    raise ValueError(flavor)


def build_b_generator(v: Vertex, n: int, r: int, delta0=None) -> KernelGenerator:
    """Symplectic kernel generator at a marginal vertex (lam_1 = N+1)."""
    if not _is_marginal(v, n, "symplectic"):
        raise ValueError(f"{v} is not marginal for the symplectic case at N={n}")
    if delta0 is None:
        delta0 = -2 * n
    lam = v.lam
    head = sum_all_diagrams(lam[0], delta0)
    head_prime = sum_all_diagrams(lam[0], delta0, min_corank=1)
    tail_blocks, start = [], 1
    for part in lam[1:]:
        tail_blocks.append(list(range(start, start + part)))
        start += part
    from .diagrams import young_subgroup_sum
    tail = young_subgroup_sum(tail_blocks, r - lam[0], signed=False, delta=delta0)
    from .murphy import e_suffix
    suffix = e_suffix(v.level - 1, v.l, r).with_delta(delta0)
    b = head.tensor(tail).embed(r) * suffix
    b_prime = head_prime.tensor(tail).embed(r) * suffix
    beta_prime = _left_orbit_correction(lam[0], delta0).embed(r)
    beta = AlgebraElement.one(r, delta0) + beta_prime
    return KernelGenerator("symplectic", v, b, b_prime, beta_prime, beta)


def build_d_generator(v: Vertex, n: int, r: int, delta0=None) -> KernelGenerator:
    """Orthogonal kernel generator at a marginal vertex (lam'_1+lam'_2 = N+1)."""
    if not _is_marginal(v, n, "orthogonal"):
        raise ValueError(f"{v} is not marginal for the orthogonal case at N={n}")
    if delta0 is None:
        delta0 = n
    conj = conjugate(v.lam)
    a = conj[0] if conj else 0
    b_ = conj[1] if len(conj) > 1 else 0
    head = walled_signed_sum(a, b_, delta0)
    head_prime = walled_signed_sum(a, b_, delta0, min_corank=1)
    # y of the remaining columns, on the remaining strands
    rest_cols = conj[2:]
    tail_blocks, start = [], 1
    for part in rest_cols:
        tail_blocks.append(list(range(start, start + part)))
        start += part
    from .diagrams import young_subgroup_sum
    tail = young_subgroup_sum(tail_blocks, r - a - b_, signed=True, delta=delta0)
    from .murphy import e_suffix
    suffix = e_suffix(v.level - 1, v.l, r).with_delta(delta0)
    d = head.tensor(tail).embed(r) * suffix
    d_prime = head_prime.tensor(tail).embed(r) * suffix
    beta_prime = _walled_orbit_correction(a, b_, delta0).embed(r)
    beta = AlgebraElement.one(r, delta0) + beta_prime
    return KernelGenerator("orthogonal", v, d, d_prime, beta_prime, beta)


def build_kernel_generator(v: Vertex, n: int, r: int, flavor: str,
                           delta0=None) -> KernelGenerator:
    if flavor == "symplectic":
        return build_b_generator(v, n, r, delta0)
    if flavor == "orthogonal":
        return build_d_generator(v, n, r, delta0)
    raise ValueError(flavor)


class SplitBasis:
    """The modified cellular basis n_st of B_r(Z; delta0) attached to a
    permissibility bound N, with per-path correction elements a_t."""

    def __init__(self, r: int, n: int, flavor: str, basis: MurphyBasis | None = None,
                 max_r: int | None = None):
        if flavor not in ("symplectic", "orthogonal"):
            raise ValueError("split basis exists for the symplectic/orthogonal cases")
        basis_flavor, delta_fn, perm_key = FLAVOR_DATA[flavor]
        self.flavor = flavor
        self.n = n
        self.r = r
        self.delta0 = delta_fn(n)
        self.basis = basis if basis is not None else murphy_basis(r, basis_flavor, max_r)
        self.perm_pred = lambda v: br.PERMISSIBLE[perm_key](v, n)

        self._gen_cache: dict[Vertex, KernelGenerator] = {}
        # a_t per (vertex, path index); d_t for permissible paths
        self.a_elements: dict[tuple[Vertex, int], AlgebraElement] = {}
        self.path_permissible: dict[tuple[Vertex, int], bool] = {}
        # module coordinates of n_t in the Murphy basis of the cell module
        self.module_vectors: dict[tuple[Vertex, int], list[int]] = {}
        for v in self.basis.vertices:
            paths = self.basis.paths[v]
            for ti, t in enumerate(paths):
                perm = all(self.perm_pred(w) for w in t)
                self.path_permissible[(v, ti)] = perm
                if perm:
                    a_t = self.basis.d_elements[(v, ti)].with_delta(self.delta0)
                else:
                    a_t = self._correction(v, t)
                self.a_elements[(v, ti)] = a_t
            self._module_expand(v)

    def _generator(self, v: Vertex) -> KernelGenerator:
        if v not in self._gen_cache:
            self._gen_cache[v] = build_kernel_generator(
                v, self.n, self.r, self.flavor, self.delta0)
        return self._gen_cache[v]

    def _correction(self, v: Vertex, t: Path) -> AlgebraElement:
        """a_t = d_{t2} beta_mu d_{t1} for the first non-permissible t(k)."""
        k = next(i for i, w in enumerate(t) if not self.perm_pred(w))
        mu = t[k]
        beta = self._generator(mu).beta
        d1 = AlgebraElement.one(self.r, self.delta0)
        for a, b in reversed(list(zip(t[:k], t[1:k + 1]))):
            d1 = d1 * self.basis.edge_factors(a, b)[0].with_delta(self.delta0)
        d2 = AlgebraElement.one(self.r, self.delta0)
        for a, b in reversed(list(zip(t[k:], t[k + 1:]))):
            d2 = d2 * self.basis.edge_factors(a, b)[0].with_delta(self.delta0)
        return d2 * beta * d1

    def _module_expand(self, v: Vertex) -> None:
        """Module coordinates of n_t = m_lambda a_t, via the expansion of
        d_{s0}* m_lambda a_t; asserts integrality."""
        npaths = len(self.basis.paths[v])
        gen = self.basis.generators[v].with_delta(self.delta0)
        left = self.basis.d_elements[(v, 0)].involution().with_delta(self.delta0) * gen
        for ti in range(npaths):
            elt = left * self.a_elements[(v, ti)]
            coeffs = self.basis.expand_map(elt)
            vec = []
            for tj in range(npaths):
                c = coeffs.get((v, 0, tj), 0)
                if isinstance(c, Fraction):
                    if c.denominator != 1:
                        raise ArithmeticError(
                            f"split basis vector at {v} is not integral: {c}")
                    c = int(c)
                vec.append(c)
            self.module_vectors[(v, ti)] = vec

    # -- pair-level data -------------------------------------------------------

    def pair_permissible(self, v: Vertex, s: int, t: int) -> bool:
        return self.path_permissible[(v, s)] and self.path_permissible[(v, t)]

    def element(self, v: Vertex, s: int, t: int) -> AlgebraElement:
        """The full algebra element n_st = a_s* m_lambda a_t."""
        gen = self.basis.generators[v].with_delta(self.delta0)
        out = (self.a_elements[(v, s)].involution() * gen) * self.a_elements[(v, t)]
        if not out.has_integer_coeffs():
            raise ArithmeticError(f"n_st at {v} is not integral")
        return out.as_integer()

    def iter_pairs(self):
        for v in self.basis.vertices:
            npaths = len(self.basis.paths[v])
            for s in range(npaths):
                for t in range(npaths):
                    yield v, s, t

    def kernel_count(self) -> int:
        return sum(1 for v, s, t in self.iter_pairs()
                   if not self.pair_permissible(v, s, t))

    def permissible_dimension(self) -> int:
        total = 0
        for v in self.basis.vertices:
            k = sum(1 for ti in range(len(self.basis.paths[v]))
                    if self.path_permissible[(v, ti)])
            total += k * k
        return total

    def to_json(self) -> list:
        out = []
        for v, s, t in self.iter_pairs():
            out.append({
                "vertex": v.to_json(),
                "s": [w.to_json() for w in self.basis.paths[v][s]],
                "t": [w.to_json() for w in self.basis.paths[v][t]],
                "kernel": not self.pair_permissible(v, s, t),
                "element": self.element(v, s, t).to_json(),
            })
        return out


def build_split_basis(r: int, n: int, flavor: str,
                      max_r: int | None = None) -> SplitBasis:
    return SplitBasis(r, n, flavor, max_r=max_r)


@dataclass
class CheckResult:
    name: str
    expected: object
    got: object
    passed: bool

    def to_json(self) -> dict:
        return {"name": self.name, "expected": _jsonable(self.expected),
                "got": _jsonable(self.got), "pass": self.passed}


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class Certificate:
    params: dict
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, expected, got) -> CheckResult:
        res = CheckResult(name, expected, got, expected == got)
        self.checks.append(res)
        return res

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"params": _jsonable(self.params),
                "checks": [c.to_json() for c in self.checks],
                "pass": self.passed,
                "timing": None}


def expected_image_dimension(r: int, n: int, flavor: str) -> int:
    """Sum over permissible vertices of (number of permissible paths)^2."""
    _bf, _dfn, perm_key = FLAVOR_DATA[flavor]
    pred = br.PERMISSIBLE[perm_key]
    add_only = flavor == "symmetric"
    total = 0
    for v in br.vertices_at_level(r, add_only):
        if not pred(v, n):
            continue
        k = sum(1 for t in br.enumerate_paths(v, add_only)
                if all(pred(w, n) for w in t))
        total += k * k
    return total


def algebra_dimension(r: int, flavor: str) -> int:
    if flavor == "symmetric":
        out = 1
        for k in range(2, r + 1):
            out *= k
        return out
    out = 1
    for k in range(1, 2 * r, 2):
        out *= k
    return out


def marginal_vertices(r: int, n: int, flavor: str) -> list[Vertex]:
    """Vertices at levels <= r carrying the boundary value (lam_1 = N+1,
    lam'_1 + lam'_2 = N+1, or N+1 rows).  Every marginal point -- a
    non-permissible vertex reachable by an otherwise permissible path --
    has this value, and the kernel-generator identities below hold for the
    whole boundary set."""
    add_only = flavor == "symmetric"
    out = []
    for level in range(1, r + 1):
        for v in br.vertices_at_level(level, add_only):
            if _is_marginal(v, n, flavor):
                out.append(v)
    return out


def ideal_generators(r: int, n: int, flavor: str, delta0) -> list[AlgebraElement]:
    """The small generating set of the kernel ideal: the single embedded
    all-diagram sum (symplectic), the embedded walled signed sums with
    a + b = N+1 (orthogonal), or the embedded antisymmetrizer (symmetric)."""
    if flavor == "symplectic":
        if r < n + 1:
            return []
        return [sum_all_diagrams(n + 1, delta0).embed(r)]
    if flavor == "orthogonal":
        if r < n + 1:
            return []
        return [walled_signed_sum(a, n + 1 - a, delta0).embed(r)
                for a in range(n + 2)]
    if flavor == "symmetric":
        if r < n + 1:
            return []
        blocks = [list(range(1, n + 2))]
        from .diagrams import young_subgroup_sum
        return [young_subgroup_sum(blocks, r, signed=True)]
    raise ValueError(flavor)


def ideal_span_rank(gens: list[AlgebraElement], r: int, flavor: str) -> int:
    """Rank over Q of span{D1 * g * D2} over all diagram pairs and all
    generators g, in diagram coordinates."""
    diagrams = (all_permutation_diagrams(r) if flavor == "symmetric"
                else all_diagrams(r))
    diag_index = {d: i for i, d in enumerate(diagrams)}
    delta0 = gens[0].delta if gens else None
    rows = []
    seen = set()
    for g in gens:
        for d1 in diagrams:
            left = AlgebraElement.from_diagram(d1, 1, delta0) * g
            for d2 in diagrams:
                prod = left * AlgebraElement.from_diagram(d2, 1, delta0)
                row = tuple(sorted((diag_index[d], c) for d, c in prod.terms.items()))
                if row and row not in seen:
                    seen.add(row)
                    rows.append(dict(row))
    return sparse_rank_q(rows)


def certify_sft(r: int, n: int, flavor: str, split: SplitBasis | None = None,
                max_tensor_dim: int = 65536, check_ideal: bool | None = None,
                fields: tuple = ()) -> Certificate:
    """The kernel/image certificate for the symplectic or orthogonal case:

    1. the images of permissible n_st are linearly independent of rank
       sum (#permissible paths)^2;
    2. every kernel-flagged n_st maps to zero;
    3. kernel count + permissible count = dim B_r;
    4. (optional) the span of D1 g D2 over the small generating set has
       rank = dim ker;
    5. (optional) image rank over F_p agrees with the rank over Q.
    """
    cert = Certificate({"flavor": flavor, "r": r, "N": n})
    if flavor == "symmetric":
        return harterich_check(r, n, max_tensor_dim=max_tensor_dim,
                               check_ideal=check_ideal, fields=fields)
    split = split if split is not None else SplitBasis(r, n, flavor)
    rep = TensorRep(flavor, n, r, max_tensor_dim=max_tensor_dim)
    dim_alg = algebra_dimension(r, flavor)
    dim_im = expected_image_dimension(r, n, flavor)

    rep_cache = {d: rep.rep_diagram(d) for d in split.basis.diagrams}

    def rep_of(a: AlgebraElement):
        out = None
        for d, c in a.terms.items():
            m = rep_cache[d].scale(c)
            out = m if out is None else out + m
        from .tensorrep import SparseMat
        return out if out is not None else SparseMat(rep.size)

    # factor Phi(n_st) = Phi(m a_s)^T Phi(a_t)
    perm_vectors = []
    kernel_zero = True
    for v in split.basis.vertices:
        npaths = len(split.basis.paths[v])
        gen = split.basis.generators[v].with_delta(split.delta0)
        lefts = [rep_of(gen * split.a_elements[(v, s)]).transpose()
                 for s in range(npaths)]
        rights = [rep_of(split.a_elements[(v, t)]) for t in range(npaths)]
        for s in range(npaths):
            for t in range(npaths):
                mat = lefts[s] @ rights[t]
                if split.pair_permissible(v, s, t):
                    perm_vectors.append(mat.to_vector())
                elif not mat.is_zero:
                    kernel_zero = False
    cert.add("kernel elements map to zero", True, kernel_zero)
    cert.add("permissible pair count", dim_im, len(perm_vectors))
    from .exactmat import gram_rank_q
    ncols = rep.size ** 2
    if ncols <= 4096:
        got_rank = sparse_rank_q(perm_vectors)
    else:
        got_rank = gram_rank_q(perm_vectors, ncols)
    cert.add("image rank over Q = sum of squared permissible path counts",
             dim_im, got_rank)
    cert.add("kernel count + image dimension", dim_alg,
             split.kernel_count() + dim_im)

    if check_ideal is None:
        check_ideal = r <= 4
    if check_ideal:
        gens = ideal_generators(r, n, flavor, split.delta0)
        got = ideal_span_rank(gens, r, flavor) if gens else 0
        cert.add("ideal generated by marginal generators has rank dim ker",
                 dim_alg - dim_im, got)

    for p in fields:
        if flavor == "orthogonal" and p == 2:
            continue
        all_elts = [AlgebraElement.from_diagram(d, 1, split.delta0)
                    for d in split.basis.diagrams]
        got_p = image_rank(all_elts, rep, field=("Fp", p))
        cert.add(f"image rank over F_{p}", dim_im, got_p)
    return cert


def quotient_cell_modules(r: int, n: int, flavor: str,
                          split: SplitBasis | None = None) -> Certificate:
    """Per permissible vertex: the Gram matrix specialized at the flavor's
    loop value has rank = #permissible paths, and the non-permissible split
    vectors span its radical."""
    split = split if split is not None else SplitBasis(r, n, flavor)
    cert = Certificate({"flavor": flavor, "r": r, "N": n, "delta0": split.delta0})
    from .exactmat import ExactMatrix
    for v in split.basis.vertices:
        if not split.perm_pred(v):
            continue
        paths = split.basis.paths[v]
        gram = split.basis.gram_matrix(v)
        from .rings import Poly
        g0 = [[c.evaluate(split.delta0) if isinstance(c, Poly) else c
               for c in row] for row in gram.rows]
        n_perm = sum(1 for ti in range(len(paths)) if split.path_permissible[(v, ti)])
        got = ExactMatrix(g0).rank()
        cert.add(f"Gram rank at {v.lam},{v.l}", n_perm, got)
        radical_ok = True
        for ti in range(len(paths)):
            if split.path_permissible[(v, ti)]:
                continue
            vec = split.module_vectors[(v, ti)]
            image = [sum(g0[i][j] * vec[j] for j in range(len(vec)))
                     for i in range(len(vec))]
            radical_ok &= all(x == 0 for x in image)
        cert.add(f"kernel vectors lie in the Gram radical at {v.lam},{v.l}",
                 True, radical_ok)
    return cert


def harterich_check(r: int, n: int, max_tensor_dim: int = 65536,
                    check_ideal: bool | None = None, fields: tuple = ()) -> Certificate:
    """Kernel/image certificate for the symmetric group acting by unsigned
    place permutations on (Z^N)^{tensor r}, in the dual-Murphy basis:
    cells with more than N rows span the kernel; the antisymmetrizer on N+1
    letters generates it as an ideal."""
    cert = Certificate({"flavor": "symmetric", "r": r, "N": n})
    basis = murphy_basis(r, "symmetric-dual")
    rep = TensorRep("permutation", n, r, max_tensor_dim=max_tensor_dim)
    dim_im = expected_image_dimension(r, n, "symmetric")
    dim_alg = algebra_dimension(r, "symmetric")

    perm_vectors = []
    kernel_zero = True
    kernel_count = 0
    for (v, s, t) in basis.index:
        mat = rep.rep_element(basis.elements[(v, s, t)])
        if len(v.lam) <= n:
            perm_vectors.append(mat.to_vector())
        else:
            kernel_count += 1
            if not mat.is_zero:
                kernel_zero = False
    cert.add("kernel cells map to zero", True, kernel_zero)
    cert.add("image rank over Q", dim_im, sparse_rank_q(perm_vectors))
    cert.add("kernel count + image dimension", dim_alg, kernel_count + dim_im)
    if check_ideal is None:
        check_ideal = r <= 4
    if check_ideal and r > n:
        gens = ideal_generators(r, n, "symmetric", None)
        got = ideal_span_rank(gens, r, "symmetric")
        cert.add("ideal generated by the antisymmetrizer has rank dim ker",
                 dim_alg - dim_im, got)
    for p in fields:
        all_elts = [AlgebraElement.from_diagram(d)
                    for d in all_permutation_diagrams(r)]
        got_p = image_rank(all_elts, rep, field=("Fp", p))
        cert.add(f"image rank over F_{p}", dim_im, got_p)
    return cert

"""Exact matrix representations of the Brauer algebra on symplectic and
orthogonal tensor space, the place-permutation action of the symmetric
group, and the Pfaffian/minor functionals attached to diagrams.

Conventions (pinned by tests):

* symplectic: V of dimension 2N with the Darboux pairing
  <v_i, v_{2N+1-i}> = 1 for i <= N, = -1 for i > N; e_i acts by E_i and
  s_i by -S_i; loop parameter -2N.
* orthogonal: V of dimension N with (v_i, v_j) = [j = N+1-i]; e_i -> E_i,
  s_i -> S_i; loop parameter N.
* permutation: the unsigned place-permutation action of the symmetric
  group on (Z^N)^{tensor r}; diagrams must be permutations.

Matrices act on row vectors from the right, so rep(ab) = rep(a) rep(b).
All matrices are sparse dicts of integer entries.
"""

from __future__ import annotations

import itertools

from .diagrams import AlgebraElement, BrauerDiagram, perm_sign
from .errors import CapExceeded
from .exactmat import gram_rank_q, rank_modp, sparse_rank_q


class SparseMat:
    """Sparse integer (or rational) matrix: rows[i] = {j: value}."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows=None):
        self.n = n
        self.rows: dict[int, dict[int, int]] = rows if rows is not None else {}

    @classmethod
    def identity(cls, n: int) -> "SparseMat":
        return cls(n, {i: {i: 1} for i in range(n)})

    def set(self, i: int, j: int, v) -> None:
        if v == 0:
            return
        self.rows.setdefault(i, {})[j] = v

    def add(self, i: int, j: int, v) -> None:
        if v == 0:
            return
        row = self.rows.setdefault(i, {})
        w = row.get(j, 0) + v
        if w == 0:
            row.pop(j, None)
            if not row:
                self.rows.pop(i, None)
        else:
            row[j] = w

    def __matmul__(self, other: "SparseMat") -> "SparseMat":
        out = SparseMat(self.n)
        orows = other.rows
        for i, row in self.rows.items():
            acc: dict[int, int] = {}
            for k, v in row.items():
                orow = orows.get(k)
                if not orow:
                    continue
                for j, w in orow.items():
                    acc[j] = acc.get(j, 0) + v * w
            acc = {j: v for j, v in acc.items() if v != 0}
            if acc:
                out.rows[i] = acc
        return out

    def __add__(self, other: "SparseMat") -> "SparseMat":
        out = SparseMat(self.n, {i: dict(r) for i, r in self.rows.items()})
        for i, row in other.rows.items():
            for j, v in row.items():
                out.add(i, j, v)
        return out

    def scale(self, c) -> "SparseMat":
        if c == 0:
            return SparseMat(self.n)
        return SparseMat(self.n, {i: {j: c * v for j, v in row.items()}
                                  for i, row in self.rows.items()})

    def transpose(self) -> "SparseMat":
        out = SparseMat(self.n)
        for i, row in self.rows.items():
            for j, v in row.items():
                out.rows.setdefault(j, {})[i] = v
        return out

    @property
    def is_zero(self) -> bool:
        return not self.rows

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def entry(self, i: int, j: int):
        return self.rows.get(i, {}).get(j, 0)

    def to_vector(self) -> dict[int, int]:
        """Flatten to a sparse row vector of length n*n."""
        out = {}
        for i, row in self.rows.items():
            base = i * self.n
            for j, v in row.items():
                out[base + j] = v
        return out

    def triplets(self) -> list[tuple[int, int, int]]:
        return sorted((i, j, v) for i, row in self.rows.items() for j, v in row.items())

    def to_csv(self) -> str:
        """Triplet dump "row,col,value", one entry per line."""
        return "\n".join(f"{i},{j},{v}" for i, j, v in self.triplets())

    def __eq__(self, other):
        return isinstance(other, SparseMat) and self.n == other.n and self.rows == other.rows

    def __repr__(self):
        return f"SparseMat({self.n}, nnz={self.nnz()})"


class BilinearStructure:
    """The pairing table and dual basis data for one flavor."""

    def __init__(self, flavor: str, n: int):
        if flavor not in ("symplectic", "orthogonal"):
            raise ValueError(f"no bilinear structure for flavor {flavor!r}")
        self.flavor = flavor
        self.n = n
        self.dim = 2 * n if flavor == "symplectic" else n
        self.epsilon = -1 if flavor == "symplectic" else 1

    def pair(self, i: int, j: int) -> int:
        """[v_i, v_j] for 0-indexed basis vectors."""
        d = self.dim
        if i + j != d - 1:
            return 0
        if self.flavor == "orthogonal":
            return 1
        return 1 if i < self.n else -1

    def omega(self) -> list[tuple[int, int, int]]:
        """omega = sum_i v_i^* tensor v_i as triples (a, b, coeff): the
        component on v_a tensor v_b."""
        d = self.dim
        out = []
        for b in range(d):
            a = d - 1 - b
            coeff = 1
            if self.flavor == "symplectic" and b >= self.n:
                coeff = -1
            out.append((a, b, coeff))
        return out

    def dual_index(self, i: int) -> tuple[int, int]:
        """(index, sign) with v_i^* = sign * v_index."""
        d = self.dim
        if self.flavor == "orthogonal":
            return d - 1 - i, 1
        return d - 1 - i, (1 if i < self.n else -1)


class TensorRep:
    """The representation of B_r (or the symmetric group) on V^{tensor r}."""

    def __init__(self, flavor: str, n: int, r: int, max_tensor_dim: int = 65536):
        if flavor not in ("symplectic", "orthogonal", "permutation"):
            raise ValueError(f"unknown flavor {flavor!r}")
        self.flavor = flavor
        self.n = n
        self.r = r
        if flavor == "symplectic":
            self.dim = 2 * n
            self.epsilon = -1
            self.delta0 = -2 * n
            self.form = BilinearStructure("symplectic", n)
        elif flavor == "orthogonal":
            self.dim = n
            self.epsilon = 1
            self.delta0 = n
            self.form = BilinearStructure("orthogonal", n)
        else:
            self.dim = n
            self.epsilon = 1
            self.delta0 = None
            self.form = None
        self.size = self.dim ** r
        if self.size > max_tensor_dim:
            raise CapExceeded(
                f"tensor dimension {self.dim}^{r} exceeds the cap {max_tensor_dim}")
        self._E: dict[int, SparseMat] = {}
        self._S: dict[int, SparseMat] = {}

    # -- index bookkeeping ---------------------------------------------------

    def idx(self, word: tuple[int, ...]) -> int:
        out = 0
        for a in word:
            out = out * self.dim + a
        return out

    def words(self):
        return itertools.product(range(self.dim), repeat=self.r)

    # -- generator matrices ---------------------------------------------------

    def E(self, i: int) -> SparseMat:
        """E in tensor places i, i+1 (1-indexed): (x ten y)E = [x,y] omega."""
        if self.form is None:
            raise ValueError("the permutation flavor has no E generators")
        if i not in self._E:
            m = SparseMat(self.size)
            omega = self.form.omega()
            d, r = self.dim, self.r
            stride_i = d ** (r - i)
            stride_j = d ** (r - i - 1)
            for w in itertools.product(range(d), repeat=r - 2):
                word = list(w[:i - 1]) + [0, 0] + list(w[i - 1:])
                base = self.idx(tuple(word))
                for xi in range(d):
                    xj = d - 1 - xi
                    c = self.form.pair(xi, xj)
                    if c == 0:
                        continue
                    row = base + xi * stride_i + xj * stride_j
                    for a, b, coeff in omega:
                        m.add(row, base + a * stride_i + b * stride_j, c * coeff)
            self._E[i] = m
        return self._E[i]

    def S(self, i: int) -> SparseMat:
        """S in tensor places i, i+1: (x ten y)S = y ten x."""
        if i not in self._S:
            m = SparseMat(self.size)
            d, r = self.dim, self.r
            stride_i = d ** (r - i)
            stride_j = d ** (r - i - 1)
            for w in itertools.product(range(d), repeat=r - 2):
                word = list(w[:i - 1]) + [0, 0] + list(w[i - 1:])
                base = self.idx(tuple(word))
                for xi in range(d):
                    for xj in range(d):
                        m.set(base + xi * stride_i + xj * stride_j,
                              base + xj * stride_i + xi * stride_j, 1)
            self._S[i] = m
        return self._S[i]

    def place_matrix(self, pi: tuple[int, ...]) -> SparseMat:
        """Unsigned place permutation: the factor in place j moves to place
        pi(j)."""
        m = SparseMat(self.size)
        d, r = self.dim, self.r
        for word in self.words():
            out = [0] * r
            for j in range(r):
                out[pi[j] - 1] = word[j]
            m.set(self.idx(word), self.idx(tuple(out)), 1)
        return m

    # -- representation of diagrams ------------------------------------------

    def rep_diagram(self, diag: BrauerDiagram) -> SparseMat:
        """Image of a diagram via a generator-product factorization
        D = P(sigma) (e_1 e_3 ... e_{2s-1}) P(tau)."""
        if diag.r != self.r:
            raise ValueError("strand count mismatch")
        if self.flavor == "permutation":
            if not diag.is_permutation():
                raise ValueError("permutation flavor: diagram has horizontal strands")
            return self.place_matrix(diag.to_perm())
        top, bot, vert = diag.strand_types()
        s = len(top)
        sigma = [0] * self.r
        tau = [0] * self.r
        for k, (i, j) in enumerate(top):
            sigma[i - 1] = 2 * k + 1
            sigma[j - 1] = 2 * k + 2
        for k, (i, j) in enumerate(bot):
            tau[2 * k] = i
            tau[2 * k + 1] = j
        for k, (i, j) in enumerate(vert):
            sigma[i - 1] = 2 * s + k + 1
            tau[2 * s + k] = j
        sigma = tuple(sigma)
        tau = tuple(tau)
        sign = 1
        if self.flavor == "symplectic":
            sign = perm_sign(sigma) * perm_sign(tau)
        mat = self.place_matrix(sigma)
        for k in range(s):
            mat = mat @ self.E(2 * k + 1)
        mat = mat @ self.place_matrix(tau)
        return mat.scale(sign) if sign < 0 else mat

    def rep_diagram_closed_form(self, diag: BrauerDiagram) -> SparseMat:
        """Image of a diagram straight from the strand structure: top
        horizontal strands contract with the form, bottom ones insert omega,
        vertical ones place-permute; the symplectic case carries the global
        sign (-1)^{length}."""
        if diag.r != self.r:
            raise ValueError("strand count mismatch")
        if self.flavor == "permutation":
            if not diag.is_permutation():
                raise ValueError("permutation flavor: diagram has horizontal strands")
            return self.place_matrix(diag.to_perm())
        top, bot, vert = diag.strand_types()
        d = self.dim
        sign = (-1) ** diag.length() if self.flavor == "symplectic" else 1
        omega = self.form.omega()
        m = SparseMat(self.size)
        for tchoice in itertools.product(range(d), repeat=len(top)):
            cin = sign
            in_word = [0] * self.r
            for (i, j), x in zip(top, tchoice):
                y = d - 1 - x
                c = self.form.pair(x, y)
                if c == 0:
                    cin = 0
                    break
                cin *= c
                in_word[i - 1] = x
                in_word[j - 1] = y
            if cin == 0:
                continue
            for vchoice in itertools.product(range(d), repeat=len(vert)):
                for (i, _j), x in zip(vert, vchoice):
                    in_word[i - 1] = x
                row = self.idx(tuple(in_word))
                out_word = [0] * self.r
                for (_i, j), x in zip(vert, vchoice):
                    out_word[j - 1] = x
                for bchoice in itertools.product(range(len(omega)), repeat=len(bot)):
                    cout = cin
                    for (i, j), k in zip(bot, bchoice):
                        a, b, coeff = omega[k]
                        out_word[i - 1] = a
                        out_word[j - 1] = b
                        cout *= coeff
                    m.add(row, self.idx(tuple(out_word)), cout)
        return m

    def rep_element(self, a: AlgebraElement, closed_form: bool = False) -> SparseMat:
        """Image of an algebra element; requires the element's loop parameter
        to match the flavor's specialization."""
        if a.r != self.r:
            raise ValueError("strand count mismatch")
        if self.delta0 is not None and a.delta != self.delta0:
            raise ValueError(
                f"element has delta={a.delta}, representation needs {self.delta0}")
        rep = self.rep_diagram_closed_form if closed_form else self.rep_diagram
        out = SparseMat(self.size)
        for diag, c in a.terms.items():
            m = rep(diag)
            for i, row in m.rows.items():
                for j, v in row.items():
                    out.add(i, j, c * v)
        return out


def kernel_membership(a: AlgebraElement, rep: TensorRep) -> bool:
    return rep.rep_element(a).is_zero


def image_rank(generators, rep: TensorRep, field="Q") -> int:
    """Rank of the span of the vectorized images of the given elements,
    over Q or over F_p (field = ("Fp", p))."""
    vecs = [rep.rep_element(a).to_vector() for a in generators]
    ncols = rep.size ** 2
    if field == "Q":
        total_nnz = sum(len(v) for v in vecs)
        if ncols <= 4096 or total_nnz <= 200_000:
            return sparse_rank_q(vecs)
        return gram_rank_q(vecs, ncols)
    name, p = field
    if name != "Fp":
        raise ValueError(f"unknown field {field!r}")
    return rank_modp(vecs, ncols, p)


# -- Pfaffian and determinant functionals -------------------------------------


def pfaffian_interleaved(a: list[list]) -> int:
    """Pfaffian of a skew-symmetric matrix by first-row expansion, in the
    interleaved (i_1 j_1 i_2 j_2 ...) vertex-ordering convention, so that
    Pf([[0, x], [-x, 0]]) = x and the 4x4 value is a12 a34 - a13 a24 + a14 a23."""
    n = len(a)
    if n % 2:
        raise ValueError("Pfaffian needs even size")
    if n == 0:
        return 1

    def rec(rows: tuple[int, ...]):
        if not rows:
            return 1
        i = rows[0]
        rest = rows[1:]
        total = 0
        for k, j in enumerate(rest):
            v = a[i][j]
            if v:
                sub = rest[:k] + rest[k + 1:]
                total += (-1) ** k * v * rec(sub)
        return total

    return rec(tuple(range(n)))


def pfaffian_recursive(a: list[list]) -> int:
    """Pfaffian in the rows-then-columns (h_1..h_r k_1..k_r) vertex-ordering
    convention realized by the diagram signs sgn(sigma_D); it differs from
    the interleaved convention by the shuffle sign (-1)^{r(r-1)/2}."""
    r = len(a) // 2
    shuffle = -1 if (r * (r - 1) // 2) % 2 else 1
    return shuffle * pfaffian_interleaved(a)


def pfaffian_diagram_sum(a: list[list]) -> int:
    """Pfaffian as the signed sum over Brauer diagrams: sum_D sgn(sigma_D)
    prod_{(i,j) in D} a[i][j] (1-indexed strands over 2r points)."""
    from .diagrams import all_diagrams
    n = len(a)
    if n % 2:
        raise ValueError("Pfaffian needs even size")
    r = n // 2
    total = 0
    for diag in all_diagrams(r):
        term = diag.sign()
        for i, j in diag.pairs:
            term *= a[i - 1][j - 1]
            if term == 0:
                break
        total += term
    return total


def pfaffian_functional(r: int, n: int, xs: list[int]) -> int:
    """Signed diagram sum of symplectic pairings over 2r basis-vector
    indices (0-indexed into the 2N-dimensional Darboux basis)."""
    if len(xs) != 2 * r:
        raise ValueError("need 2r vector indices")
    form = BilinearStructure("symplectic", n)
    a = [[form.pair(xs[i], xs[j]) if i != j else 0 for j in range(2 * r)]
         for i in range(2 * r)]
    for i in range(2 * r):
        for j in range(i):
            a[i][j] = -a[j][i]
    return pfaffian_diagram_sum(a)


def det_cofactor(b: list[list]):
    n = len(b)
    if n == 0:
        return 1
    if n == 1:
        return b[0][0]
    total = 0
    for j in range(n):
        if b[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in b[1:]]
        total += (-1) ** j * b[0][j] * det_cofactor(minor)
    return total


def walled_det_sum(a: int, b: int, w: list[list]) -> int:
    """Signed sum over (a,b)-walled diagrams of prod_{(i,j) in D} w[i][j],
    for a symmetric 2r x 2r value table (r = a + b).  Equals the determinant
    of the r x r matrix (x_i, y_j) under the standard reindexing."""
    from .diagrams import all_diagrams, walled_filter
    r = a + b
    total = 0
    for diag in all_diagrams(r):
        ok, sign = walled_filter(a, b, diag)
        if not ok:
            continue
        term = sign
        for i, j in diag.pairs:
            term *= w[i - 1][j - 1]
            if term == 0:
                break
        total += term
    return total


def walled_det_matrix(a: int, b: int, w: list[list]) -> list[list]:
    """The r x r matrix (x_i, y_j) built from the 2r-point value table by the
    reindexing x = (w_1..w_a, w_{r+a+1}..w_{2r}), y = (w_{r+1}..w_{r+a},
    w_{a+1}..w_r)."""
    r = a + b
    xi = list(range(a)) + list(range(r + a, 2 * r))
    yi = list(range(r, r + a)) + list(range(a, r))
    return [[w[xi[i]][yi[j]] for j in range(r)] for i in range(r)]

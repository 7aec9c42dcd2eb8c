"""Exact linear algebra: fraction-free (Bareiss) elimination over an
integral domain, a reusable echelon solver, and rank routines that scale to
the sparse integer matrices produced by tensor-space representations.

No floating point enters any rank or determinant decision.  numpy is used in
two places, both exact: dense elimination mod a small prime (int64), and
integer Gram matrices via float64 matmul, valid because every intermediate
value is an integer of magnitude < 2**53 (asserted).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from .rings import Poly, RatFunc, as_ratfunc, exact_div


class ExactMatrix:
    """Dense matrix over a single exact ring (int, Fraction, Poly, RatFunc)."""

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([[self.rows[i][j] for i in range(self.nrows)]
                            for j in range(self.ncols)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"ExactMatrix({self.rows!r})"

    def _cleared(self):
        """Rows with RatFunc/Fraction entries scaled to Poly/int rows.

        Returns (rows, scale_factors); row i was multiplied by scale[i].
        """
        out, scales = [], []
        for row in self.rows:
            if any(isinstance(x, RatFunc) for x in row):
                mult = Poly.one()
                for x in row:
                    if isinstance(x, RatFunc):
                        mult = mult * x.den
                mult_rf = as_ratfunc(mult)
                new = []
                for x in row:
                    v = as_ratfunc(x) * mult_rf
                    assert v.den == Poly.one()
                    new.append(v.num)
                out.append(new)
                scales.append(as_ratfunc(mult))
            elif any(isinstance(x, Fraction) for x in row):
                denom = 1
                for x in row:
                    if isinstance(x, Fraction):
                        denom = denom * x.denominator // gcd(denom, x.denominator)
                new = []
                for x in row:
                    v = x * denom
                    new.append(int(v) if isinstance(v, Fraction) else v)
                out.append(new)
                scales.append(Fraction(denom))
            else:
                out.append(list(row))
                scales.append(1)
        return out, scales

    def rank(self) -> int:
        """Rank over the fraction field, by fraction-free elimination."""
        rows, _ = self._cleared()
        return _bareiss(rows)[0]

    def det(self):
        """Exact determinant (square matrices over an integral domain)."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if self.nrows == 0:
            return 1
        rows, scales = self._cleared()
        rank, d, sign = _bareiss(rows)
        if rank < self.nrows:
            d = 0
        val = d if sign > 0 else -d
        total_scale = 1
        for s in scales:
            total_scale = s * total_scale
        if total_scale == 1:
            return val
        return exact_div(val, total_scale)

    def solve(self, b: list) -> list:
        """Exact solution of self @ x = b (square, invertible)."""
        if self.nrows != self.ncols:
            raise ValueError("solve requires a square matrix")
        n = self.nrows
        field_rows = [[as_field(self.rows[i][j]) for j in range(n)] + [as_field(b[i])]
                      for i in range(n)]
        for col in range(n):
            piv = next((i for i in range(col, n) if field_rows[i][col] != 0), None)
            if piv is None:
                raise ValueError("singular matrix in solve")
            field_rows[col], field_rows[piv] = field_rows[piv], field_rows[col]
            pv = field_rows[col][col]
            field_rows[col] = [x / pv for x in field_rows[col]]
            for i in range(n):
                if i != col and field_rows[i][col] != 0:
                    f = field_rows[i][col]
                    field_rows[i] = [x - f * y for x, y in zip(field_rows[i], field_rows[col])]
        return [field_rows[i][n] for i in range(n)]


def matrix_rank(m: ExactMatrix) -> int:
    return m.rank()


def matrix_det(m: ExactMatrix):
    return m.det()


def as_field(x):
    """Lift a ring element into its fraction field (Fraction or RatFunc)."""
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Poly):
        return as_ratfunc(x)
    return x


def _bareiss(rows):
    """Fraction-free Gaussian elimination (Bareiss).

    Mutates ``rows`` (entries int or Poly).  Returns (rank, last_pivot, sign):
    for a square matrix of full rank the determinant is sign * last_pivot.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if not _is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        pivot = rows[r][c]
        for i in range(r + 1, nrows):
            ric = rows[i][c]
            row_i, row_r = rows[i], rows[r]
            if _is_zero(ric):
                if prev != 1:
                    rows[i] = [exact_div(pivot * x, prev) for x in row_i]
                else:
                    rows[i] = [pivot * x for x in row_i]
            else:
                new = []
                for j in range(ncols):
                    v = pivot * row_i[j] - ric * row_r[j]
                    if prev != 1:
                        v = exact_div(v, prev)
                    new.append(v)
                rows[i] = new
        prev = pivot
        r += 1
        if r == nrows:
            break
    return r, prev, sign


def _is_zero(x) -> bool:
    if isinstance(x, (Poly, RatFunc)):
        return x.is_zero
    return x == 0


def sparse_rank_q(rows: list[dict[int, int]]) -> int:
    """Exact rank over Q of sparse integer rows (dict col -> value).

    Fraction-free row echelon with gcd normalization; pivots are chosen in
    increasing column order, preferring short rows to limit fill-in.
    """
    pending = []
    for row in rows:
        r = _int_row(row)
        if r:
            pending.append(r)
    echelon: list[tuple[int, dict[int, int]]] = []
    rank = 0
    for row in sorted(pending, key=len):
        row = _reduce_row(row, echelon)
        if row:
            piv = min(row)
            echelon.append((piv, row))
            echelon.sort(key=lambda t: t[0])
            rank += 1
    return rank


def _int_row(row: dict) -> dict[int, int]:
    """Scale a dict row with int/Fraction values to coprime integers."""
    items = {c: v for c, v in row.items() if v != 0}
    if not items:
        return {}
    denom = 1
    for v in items.values():
        if isinstance(v, Fraction):
            denom = denom * v.denominator // gcd(denom, v.denominator)
    out = {c: int(v * denom) for c, v in items.items()}
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    return out


def _reduce_row(row: dict[int, int], echelon) -> dict[int, int]:
    for piv, prow in echelon:
        v = row.get(piv)
        if not v:
            continue
        pv = prow[piv]
        g = gcd(abs(v), abs(pv))
        a, b = pv // g, v // g
        new = {c: a * x for c, x in row.items()}
        for c, x in prow.items():
            w = new.get(c, 0) - b * x
            if w:
                new[c] = w
            else:
                new.pop(c, None)
        g2 = 0
        for x in new.values():
            g2 = gcd(g2, x)
        if g2 > 1:
            new = {c: x // g2 for c, x in new.items()}
        row = new
        if not row:
            break
    return row


def sparse_solve_q(rows: list[dict[int, int]], target: dict) -> list[Fraction] | None:
    """Express ``target`` as a rational combination of ``rows``; None if outside
    the span.  Small-scale; used for rank-accounting style checks."""
    n = len(rows)
    echelon: list[tuple[int, dict]] = []
    for i, row in enumerate(rows):
        aug = {c: Fraction(v) for c, v in row.items() if v != 0}
        aug[("tag", i)] = Fraction(1)
        aug = _reduce_frac_row(aug, echelon)
        if any(not isinstance(c, tuple) for c in aug):
            piv = min(c for c in aug if not isinstance(c, tuple))
            echelon.append((piv, aug))
            echelon.sort(key=lambda t: t[0])
    t = {c: Fraction(v) for c, v in target.items() if v != 0}
    t = _reduce_frac_row(t, echelon, negate_tags=True)
    if any(not isinstance(c, tuple) for c in t):
        return None
    coeffs = [Fraction(0)] * n
    for c, v in t.items():
        coeffs[c[1]] = v
    return coeffs


def _reduce_frac_row(row: dict, echelon, negate_tags: bool = False) -> dict:
    for piv, prow in echelon:
        v = row.get(piv)
        if not v:
            continue
        f = v / prow[piv]
        for c, x in prow.items():
            w = row.get(c, 0) - f * x
            if w:
                row[c] = w
            else:
                row.pop(c, None)
    if negate_tags:
        row = {c: (-v if isinstance(c, tuple) else v) for c, v in row.items()}
    return row


def rank_modp(rows: list[dict[int, int]], ncols: int, p: int) -> int:
    """Rank over F_p.  Dense numpy elimination when the matrices are wide,
    sparse dict elimination otherwise; both exact."""
    reduced = []
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        if r:
            reduced.append(r)
    if not reduced:
        return 0
    if ncols * len(reduced) > 1_000_000:
        return _dense_rank_modp(reduced, ncols, p)
    echelon: list[tuple[int, dict[int, int]]] = []
    for row in sorted(reduced, key=len):
        for piv, prow in echelon:
            v = row.get(piv)
            if not v:
                continue
            f = v * pow(prow[piv], -1, p) % p
            for c, x in prow.items():
                w = (row.get(c, 0) - f * x) % p
                if w:
                    row[c] = w
                else:
                    row.pop(c, None)
        if row:
            echelon.append((min(row), row))
            echelon.sort(key=lambda t: t[0])
    return len(echelon)


def _dense_rank_modp(rows, ncols, p):
    m = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for c, v in row.items():
            m[i, c] = v % p
    rank = 0
    nrows = len(rows)
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(m[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, col]), -1, p)
        m[rank] = (m[rank] * inv) % p
        hits = np.nonzero(m[:, col])[0]
        hits = hits[hits != rank]
        if hits.size:
            m[hits] = (m[hits] - np.outer(m[hits, col], m[rank])) % p
        rank += 1
    return rank


def gram_rank_q(rows: list[dict[int, int]], ncols: int) -> int:
    """Rank over Q of wide sparse integer rows via the Gram matrix M M^T.

    Valid because the standard dot product is positive definite over Q, so
    rank(M M^T) = rank(M).  The Gram matrix is assembled with a float64
    matmul, which is exact here: every entry and partial sum is an integer
    of magnitude < 2**53 (asserted)."""
    n = len(rows)
    if n == 0:
        return 0
    maxabs = max((max(map(abs, r.values())) if r else 0) for r in rows)
    nnz = max(len(r) for r in rows)
    assert maxabs ** 2 * max(nnz, 1) < 2 ** 52, "float64 Gram trick out of range"
    m = np.zeros((n, ncols), dtype=np.float64)
    for i, row in enumerate(rows):
        for c, v in row.items():
            m[i, c] = v
    g = m @ m.T
    gi = np.rint(g).astype(object)
    assert np.all(np.abs(g) < 2 ** 52)
    return ExactMatrix([[int(gi[i, j]) for j in range(n)] for i in range(n)]).rank()


class LinearSolver:
    """Reusable exact solver: given basis vectors v_0..v_{n-1} (sparse dict
    rows over arbitrary hashable column keys), expand further vectors in
    terms of them.

    Rows are echelonized once with Fraction arithmetic, carrying an augmented
    coordinate part; ``solve`` then reduces a query against the echelon and
    reads the coordinates off the augmented columns.
    """

    def __init__(self, rows: list[dict]):
        self.n = len(rows)
        # Echelon rows are kept in insertion order.  Each new row is reduced
        # against all earlier ones, so row k is zero at the pivots of rows
        # < k; a single forward pass in this order therefore fully reduces
        # any query vector.
        self.echelon: list[tuple] = []
        order = sorted(range(self.n), key=lambda i: len(rows[i]))
        for i in order:
            aug = {("@", i): Fraction(1)}
            for c, v in rows[i].items():
                if v != 0:
                    aug[c] = Fraction(v)
            aug = self._reduce(aug)
            main = [c for c in aug if not isinstance(c, tuple) or c[0] != "@"]
            if not main:
                raise ValueError("linearly dependent basis rows")
            piv = min(main)
            self.echelon.append((piv, aug))

    def _reduce(self, row: dict) -> dict:
        for piv, prow in self.echelon:
            v = row.get(piv)
            if not v:
                continue
            f = v / prow[piv]
            for c, x in prow.items():
                w = row.get(c, 0) - f * x
                if w:
                    row[c] = w
                else:
                    row.pop(c, None)
        return row

    def solve(self, vec: dict) -> list:
        """Coefficients x with sum_i x_i v_i = vec; raises if inconsistent.

        Values may be int/Fraction/Poly; coefficients come back in the same
        field (Fraction, or Poly with Fraction coefficients)."""
        row = {c: v for c, v in vec.items() if not _is_zero(v)}
        # repeated single-pass reduction: pivots may reappear via Poly values
        for piv, prow in self.echelon:
            v = row.get(piv)
            if v is None or _is_zero(v):
                continue
            f = _scale(v, prow[piv])
            for c, x in prow.items():
                w = row.get(c, 0) - f * x
                if _is_zero(w):
                    row.pop(c, None)
                else:
                    row[c] = w
        coeffs = [0] * self.n
        for c, v in list(row.items()):
            if isinstance(c, tuple) and c[0] == "@":
                coeffs[c[1]] = -v
                row.pop(c)
        if row:
            raise ValueError("vector outside the span of the basis")
        return coeffs


def _scale(v, pivot: Fraction):
    """v / pivot for v int/Fraction/Poly and scalar pivot."""
    if isinstance(v, Poly):
        return v / pivot
    return Fraction(v) / pivot

"""Partitions, the branching graphs of the symmetric-group and Brauer
towers, path (up-down tableau) enumeration, permissibility, and contents.

A vertex is a pair (partition, corank l) at level |partition| + 2l; an edge
adds a box (same l) or removes one (l+1).  The symmetric-group graph is the
add-only subgraph (all vertices have l = 0).  Paths are tuples of vertices
starting at the empty partition.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import NamedTuple

from .rings import Poly

Partition = tuple[int, ...]


def check_partition(lam) -> Partition:
    lam = tuple(lam)
    if any(a < b for a, b in zip(lam, lam[1:])) or any(p <= 0 for p in lam):
        raise ValueError(f"not a partition: {lam}")
    return lam


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def dominates(a: Partition, b: Partition) -> bool:
    """a dominates b: all partial sums of a majorize those of b."""
    if sum(a) != sum(b):
        raise ValueError("dominance compares partitions of equal size")
    sa = sb = 0
    for i in range(max(len(a), len(b))):
        sa += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if sa < sb:
            return False
    return True


def col_dominates(a: Partition, b: Partition) -> bool:
    return dominates(conjugate(a), conjugate(b))


def partitions_of(n: int) -> list[Partition]:
    @lru_cache(maxsize=None)
    def rec(n, maxpart):
        if n == 0:
            return [()]
        out = []
        for first in range(min(n, maxpart), 0, -1):
            out += [(first,) + rest for rest in rec(n - first, first)]
        return out

    return rec(n, n)


def addable_boxes(lam: Partition) -> list[tuple[int, int]]:
    """Positions (row, col), 1-indexed, where a box can be added."""
    out = []
    for i in range(len(lam) + 1):
        row = lam[i] if i < len(lam) else 0
        prev = lam[i - 1] if i > 0 else None
        if prev is None or row < prev:
            out.append((i + 1, row + 1))
    return out


def removable_boxes(lam: Partition) -> list[tuple[int, int]]:
    out = []
    for i, row in enumerate(lam):
        nxt = lam[i + 1] if i + 1 < len(lam) else 0
        if row > nxt:
            out.append((i + 1, row))
    return out


def add_box(lam: Partition, pos: tuple[int, int]) -> Partition:
    i = pos[0] - 1
    parts = list(lam) + [0]
    parts[i] += 1
    return tuple(p for p in parts if p)


def remove_box(lam: Partition, pos: tuple[int, int]) -> Partition:
    i = pos[0] - 1
    parts = list(lam)
    parts[i] -= 1
    return tuple(p for p in parts if p)


class Vertex(NamedTuple):
    """Branching-graph vertex: (partition, corank); level = |lam| + 2l."""

    lam: Partition
    l: int = 0

    @property
    def level(self) -> int:
        return sum(self.lam) + 2 * self.l

    def to_json(self) -> dict:
        return {"lam": list(self.lam), "l": self.l}

    @classmethod
    def from_json(cls, data) -> "Vertex":
        return cls(tuple(data["lam"]), data["l"])


EMPTY = Vertex((), 0)

Path = tuple[Vertex, ...]


def vertex_sort_key(v: Vertex):
    """Fixed total order on same-level vertices used for deterministic path
    enumeration: by corank, then reverse-lexicographic on parts."""
    return (v.l, tuple(-p for p in v.lam))


@lru_cache(maxsize=None)
def brauer_edges(v: Vertex) -> tuple[Vertex, ...]:
    """Successors in the Brauer branching graph (add or remove one box)."""
    out = [Vertex(add_box(v.lam, b), v.l) for b in addable_boxes(v.lam)]
    out += [Vertex(remove_box(v.lam, b), v.l + 1) for b in removable_boxes(v.lam)]
    out.sort(key=vertex_sort_key)
    return tuple(out)


@lru_cache(maxsize=None)
def young_edges(v: Vertex) -> tuple[Vertex, ...]:
    """Successors in Young's lattice (add one box; corank stays 0)."""
    out = [Vertex(add_box(v.lam, b), v.l) for b in addable_boxes(v.lam)]
    out.sort(key=vertex_sort_key)
    return tuple(out)


def is_edge(a: Vertex, b: Vertex, add_only: bool = False) -> bool:
    return b in (young_edges(a) if add_only else brauer_edges(a))


@lru_cache(maxsize=None)
def vertices_at_level(level: int, add_only: bool = False) -> tuple[Vertex, ...]:
    if add_only:
        out = [Vertex(lam, 0) for lam in partitions_of(level)]
    else:
        out = [Vertex(lam, l) for l in range(level // 2 + 1)
               for lam in partitions_of(level - 2 * l)]
    out.sort(key=vertex_sort_key)
    return tuple(out)


@lru_cache(maxsize=None)
def _paths_to(v: Vertex, add_only: bool) -> tuple[Path, ...]:
    if v.level == 0:
        return ((v,),) if v == EMPTY else ()
    out = []
    for u in vertices_at_level(v.level - 1, add_only):
        if is_edge(u, v, add_only):
            out += [p + (v,) for p in _paths_to(u, add_only)]
    return tuple(out)


def enumerate_paths(target: Vertex, add_only: bool = False) -> list[Path]:
    """All paths from the empty partition to target, sorted lexicographically
    by vertex sequence under the fixed vertex order."""
    out = list(_paths_to(target, add_only))
    out.sort(key=lambda p: tuple(vertex_sort_key(v) for v in p))
    return out


def vertex_dominates(a: Vertex, b: Vertex, dual: bool = False) -> bool:
    """Dominance on same-level vertices: higher corank dominates; at equal
    corank, (column) dominance of partitions."""
    if a.level != b.level:
        raise ValueError("dominance compares same-level vertices")
    if a.l != b.l:
        return a.l > b.l
    return col_dominates(a.lam, b.lam) if dual else dominates(a.lam, b.lam)


def vertex_strictly_dominates(a: Vertex, b: Vertex, dual: bool = False) -> bool:
    return a != b and vertex_dominates(a, b, dual)


def path_dominates(s: Path, t: Path, dual: bool = False) -> bool:
    if len(s) != len(t):
        raise ValueError("path dominance compares equal-length paths")
    return all(vertex_dominates(a, b, dual) for a, b in zip(s, t))


def path_strictly_dominates(s: Path, t: Path, dual: bool = False) -> bool:
    return s != t and path_dominates(s, t, dual)


def path_revlex_gt(s: Path, t: Path, dual: bool = False) -> bool:
    """s > t in reverse-lexicographic order: at the last index where they
    differ, s's vertex strictly dominates t's."""
    if len(s) != len(t):
        raise ValueError("reverse-lex compares equal-length paths")
    for a, b in zip(reversed(s), reversed(t)):
        if a != b:
            return vertex_strictly_dominates(a, b, dual)
    return False


def permissible_symplectic(v: Vertex, n: int) -> bool:
    """lam_1 <= N (first row bounded)."""
    return not v.lam or v.lam[0] <= n


def permissible_orthogonal(v: Vertex, n: int) -> bool:
    """lam'_1 + lam'_2 <= N (first two columns bounded)."""
    conj = conjugate(v.lam)
    tot = (conj[0] if conj else 0) + (conj[1] if len(conj) > 1 else 0)
    return tot <= n


def permissible_symmetric(v: Vertex, n: int) -> bool:
    """lam'_1 <= N (at most N rows); the tensor-space condition for the
    unsigned place-permutation action with the dual basis."""
    return len(v.lam) <= n


PERMISSIBLE = {
    "symplectic": permissible_symplectic,
    "orthogonal": permissible_orthogonal,
    "symmetric": permissible_symmetric,
}


def path_permissible(t: Path, flavor: str, n: int) -> bool:
    pred = PERMISSIBLE[flavor]
    return all(pred(v, n) for v in t)


def box_content(pos: tuple[int, int]) -> int:
    """Column minus row of a box."""
    return pos[1] - pos[0]


def edge_content(a: Vertex, b: Vertex) -> Poly:
    """Content of an edge: c(box) when adding, 1 - delta - c(box) when
    removing."""
    if sum(b.lam) == sum(a.lam) + 1:
        for pos in addable_boxes(a.lam):
            if add_box(a.lam, pos) == b.lam:
                return Poly.const(box_content(pos))
    elif sum(b.lam) == sum(a.lam) - 1:
        for pos in removable_boxes(a.lam):
            if remove_box(a.lam, pos) == b.lam:
                return Poly({0: 1 - box_content(pos), 1: -1})
    raise ValueError(f"not an edge: {a} -> {b}")


def sn_contents(t: Path) -> tuple[Poly, ...]:
    return tuple(edge_content(a, b) for a, b in zip(t, t[1:]))


def separation_check(level: int, add_only: bool = False) -> bool:
    """Whether all distinct paths at the level have distinct content
    sequences as polynomials in delta."""
    seen = set()
    for v in vertices_at_level(level, add_only):
        for t in enumerate_paths(v, add_only):
            key = tuple(tuple(sorted(c.coeffs.items())) for c in sn_contents(t))
            if key in seen:
                return False
            seen.add(key)
    return True


def residue_collisions(level: int, delta0, flavor: str, n: int,
                       add_only: bool = False) -> list:
    """Sibling-edge content collisions after specializing delta.

    Returns triples (prefix, b, c) of a permissible path prefix and two
    distinct extensions, at least one permissible, whose edge contents agree
    at delta = delta0.  An empty list is the sufficient condition for the
    specialized Gelfand-Zeitlin idempotents of permissible paths to be
    evaluable."""
    pred = PERMISSIBLE[flavor]
    out = []
    for u in vertices_at_level(level - 1, add_only):
        if not pred(u, n):
            continue
        kids = young_edges(u) if add_only else brauer_edges(u)
        for b, c in itertools.combinations(kids, 2):
            if not (pred(b, n) or pred(c, n)):
                continue
            if edge_content(u, b).evaluate(delta0) == edge_content(u, c).evaluate(delta0):
                out.append((u, b, c))
    return out

"""Rational polyhedra as finite unions of simplices."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as _cartesian
from typing import Iterable, Sequence

from .cells import ConvexCell, affine_eval
from .linalg import affine_rank, point, solve


def affine_independent(points: Sequence) -> bool:
    pts = [point(p) for p in points]
    if not pts:
        return True
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("points of different dimensions")
    return affine_rank(pts) == len(pts) - 1


def barycentric(simplex: Sequence, p: Sequence) -> list[Fraction] | None:
    """Barycentric coordinates of ``p`` in the affine hull, or None if outside it."""
    verts = [point(v) for v in simplex]
    p = point(p)
    if len(p) != len(verts[0]):
        raise ValueError("dimension mismatch")
    cols = len(verts)
    rows = [[v[j] for v in verts] for j in range(len(p))] + [[Fraction(1)] * cols]
    return solve(rows, list(p) + [Fraction(1)])


def simplex_contains(simplex: Sequence, p: Sequence) -> bool:
    lam = barycentric(simplex, p)
    return lam is not None and all(x >= 0 for x in lam)


@lru_cache(maxsize=1 << 16)
def simplex_cell(vertices: tuple) -> ConvexCell:
    return ConvexCell.simplex(vertices)


def _canon(simplex) -> tuple:
    return tuple(sorted(point(v) for v in simplex))


def _contained(a: tuple, b: tuple) -> bool:
    if len(a) > len(b):
        return False
    cell = simplex_cell(b)
    return all(cell.contains(v) for v in a)


def prune_redundant(simplices: Iterable[tuple]) -> list[tuple]:
    """Drop duplicates and simplices contained in another single simplex."""
    uniq = sorted(dict.fromkeys(simplices), key=lambda s: (-len(s), s))
    kept: list[tuple] = []
    for s in uniq:
        cell = None
        for t in kept:
            if cell is None:
                cell = simplex_cell(s)
            if cell.overlaps_bbox(simplex_cell(t)) and _contained(s, t):
                break
        else:
            kept.append(s)
    return kept


class Polyhedron:
    """Finite union of closed rational simplices in R^dim."""

    __slots__ = ("dim", "simplices")

    def __init__(self, dim: int, simplices: Iterable = (), prune: bool = True):
        simps = []
        for s in simplices:
            s = _canon(s)
            if any(len(v) != dim for v in s):
                raise ValueError("simplex vertex of wrong dimension")
            if affine_rank(s) != len(s) - 1:
                raise ValueError(f"affinely dependent simplex {s}")
            simps.append(s)
        self.dim = dim
        self.simplices = tuple(prune_redundant(simps) if prune else dict.fromkeys(simps))

    @classmethod
    def _raw(cls, dim: int, simplices) -> "Polyhedron":
        poly = cls.__new__(cls)
        poly.dim = dim
        poly.simplices = tuple(simplices)
        return poly

    @classmethod
    def empty(cls, dim: int) -> "Polyhedron":
        return cls._raw(dim, ())

    @classmethod
    def cube(cls, dim: int) -> "Polyhedron":
        if dim == 0:
            return cls._raw(0, [((),)])
        return cls._raw(dim, ConvexCell.cube(dim).triangulate())

    @classmethod
    def from_cells(cls, dim: int, cells: Iterable[ConvexCell]) -> "Polyhedron":
        simps = []
        for c in cells:
            simps += c.triangulate()
        return cls._raw(dim, prune_redundant(simps))

    def is_empty(self) -> bool:
        return not self.simplices

    def cells(self) -> list[ConvexCell]:
        return [simplex_cell(s) for s in self.simplices]

    def contains(self, p) -> bool:
        p = point(p)
        return any(c.contains(p) for c in self.cells())

    def vertices(self) -> list[tuple]:
        return list(dict.fromkeys(v for s in self.simplices for v in s))

    def __repr__(self):
        return f"Polyhedron(dim={self.dim}, simplices={len(self.simplices)})"


def _check_dims(P: Polyhedron, Q: Polyhedron):
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")


def _subtract(cell: ConvexCell, other: ConvexCell, target: int) -> list[ConvexCell]:
    """Pieces of ``cell`` outside ``other`` having dimension ``target``."""
    if not cell.overlaps_bbox(other):
        return [cell]
    out = []
    cur = cell
    for h in other.constraints:
        vals = [affine_eval(h, v) for v in cur.vertices]
        if all(v >= 0 for v in vals):
            continue
        outside, inside = cur.split(h, vals)
        if outside.dim == target:
            out.append(outside)
        if inside is None or inside.dim < target:
            return out
        cur = inside
    return out


def poly_subset(P: Polyhedron, Q: Polyhedron) -> bool:
    """Exact test of ``P <= Q``: subtract every simplex of Q from each simplex of P."""
    _check_dims(P, Q)
    qcells = Q.cells()
    for s in P.cells():
        remaining = [s]
        for q in qcells:
            nxt = []
            for r in remaining:
                nxt += _subtract(r, q, s.dim)
            remaining = nxt
            if not remaining:
                break
        if remaining:
            return False
    return True


def poly_equal(P: Polyhedron, Q: Polyhedron) -> bool:
    return poly_subset(P, Q) and poly_subset(Q, P)


def poly_intersect(P: Polyhedron, Q: Polyhedron) -> Polyhedron:
    _check_dims(P, Q)
    pieces = []
    for a in P.cells():
        for b in Q.cells():
            c = a.intersect(b)
            if c is not None:
                pieces.append(c)
    return Polyhedron.from_cells(P.dim, pieces)


def poly_union(P: Polyhedron, Q: Polyhedron) -> Polyhedron:
    _check_dims(P, Q)
    return Polyhedron._raw(P.dim, prune_redundant(P.simplices + Q.simplices))


def project(P: Polyhedron, coords: Sequence[int]) -> Polyhedron:
    """Image under the coordinate projection onto ``coords`` (in the given order)."""
    coords = list(coords)
    if not coords:
        raise ValueError("empty coordinate set")
    if any(not 0 <= c < P.dim for c in coords):
        raise ValueError("coordinate index out of range")
    pieces = []
    for s in P.simplices:
        imgs = [tuple(v[c] for c in coords) for v in s]
        pieces.append(ConvexCell.from_points(imgs))
    return Polyhedron.from_cells(len(coords), pieces)


def _staircase(m: int, n: int):
    """Monotone lattice paths from (0,0) to (m,n) as vertex index pairs."""
    def walk(i, j):
        if i == m and j == n:
            yield [(i, j)]
            return
        if i < m:
            for rest in walk(i + 1, j):
                yield [(i, j)] + rest
        if j < n:
            for rest in walk(i, j + 1):
                yield [(i, j)] + rest
    return list(walk(0, 0))


def product(P: Polyhedron, Q: Polyhedron) -> Polyhedron:
    """Cartesian product, each simplex pair cut by the staircase triangulation."""
    simps = []
    for s, t in _cartesian(P.simplices, Q.simplices):
        for path in _staircase(len(s) - 1, len(t) - 1):
            simps.append(tuple(s[i] + t[j] for i, j in path))
    return Polyhedron(P.dim + Q.dim, simps)

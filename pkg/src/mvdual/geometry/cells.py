"""Convex rational cells kept in vertex form.

A cell stores its extreme points together with a list of affine
inequalities ``a.x + c >= 0`` that cut it out of space.  The inequalities
are never minimised; they only need to be *complete* (every facet of the
cell is exposed by one of them), which is what splitting preserves.  Face
incidences are derived combinatorially from which vertices make which
inequality tight.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .linalg import affine_rank, nullspace, point, primitive, solve

Affine = tuple  # integer tuple (a_1, ..., a_n, c) for a.x + c

_ZERO = Fraction(0)


def affine_eval(h: Affine, p: Sequence) -> Fraction:
    s = h[-1]
    for a, x in zip(h, p):
        if a:
            s += a * x
    return s if isinstance(s, Fraction) else Fraction(s)


def normalize_affine(coeffs: Sequence, const) -> Affine:
    """Integer representative of ``coeffs.x + const`` up to positive scale."""
    return primitive(list(coeffs) + [const])


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class ConvexCell:
    """Rational polytope: extreme points plus a complete inequality list."""

    __slots__ = ("vertices", "constraints", "dim", "_vt", "_cm", "_bbox")

    def __init__(self, vertices, constraints=None, dim=None):
        verts = tuple(dict.fromkeys(point(v) for v in vertices))
        if not verts:
            raise ValueError("a cell needs at least one vertex")
        if constraints is None:
            other = ConvexCell.from_points(verts)
            if len(other.vertices) != len(verts):
                raise ValueError("vertex list contains non-extreme points")
            constraints, dim = other.constraints, other.dim
        self._init(verts, constraints, dim)

    def _init(self, verts, constraints, dim):
        self.vertices = verts
        keep = {}
        cm = []
        for h in constraints:
            if h in keep:
                continue
            mask = 0
            for i, v in enumerate(verts):
                if affine_eval(h, v) == 0:
                    mask |= 1 << i
            if mask:
                keep[h] = None
                cm.append(mask)
        self.constraints = tuple(keep)
        self._cm = tuple(cm)
        vt = [0] * len(verts)
        for ci, mask in enumerate(cm):
            for i in _bits(mask):
                vt[i] |= 1 << ci
        self._vt = tuple(vt)
        self.dim = affine_rank(verts) if dim is None else dim
        self._bbox = None

    @classmethod
    def _make(cls, verts, constraints, dim=None) -> "ConvexCell":
        cell = cls.__new__(cls)
        cell._init(tuple(verts), constraints, dim)
        return cell

    # -- constructors ---------------------------------------------------

    @classmethod
    def cube(cls, n: int) -> "ConvexCell":
        verts = [tuple(Fraction(b) for b in bits) for bits in product((0, 1), repeat=n)]
        cons = []
        for j in range(n):
            lo = [0] * (n + 1)
            lo[j] = 1
            hi = [0] * (n + 1)
            hi[j] = -1
            hi[n] = 1
            cons += [tuple(lo), tuple(hi)]
        return cls._make(verts, cons, n)

    @classmethod
    def simplex(cls, vertices) -> "ConvexCell":
        """Cell of an affinely independent vertex list."""
        verts = tuple(point(v) for v in vertices)
        k = len(verts) - 1
        if affine_rank(verts) != k:
            raise ValueError("simplex vertices must be affinely independent")
        n = len(verts[0])
        rows = [list(v) + [1] for v in verts]
        cons = []
        for e in nullspace(rows, n + 1):
            h = primitive(e)
            cons += [h, tuple(-x for x in h)]
        if k > 0:
            for j in range(k + 1):
                sol = solve(rows, [1 if i == j else 0 for i in range(k + 1)])
                cons.append(primitive(sol))
        return cls._make(verts, cons, k)

    @classmethod
    def from_points(cls, points: Iterable) -> "ConvexCell":
        """Convex hull of a finite point set, by brute-force facet search."""
        pts = tuple(dict.fromkeys(point(p) for p in points))
        if not pts:
            raise ValueError("empty point set")
        n = len(pts[0])
        d = affine_rank(pts)
        rows = [list(p) + [1] for p in pts]
        cons = []
        for e in nullspace(rows, n + 1):
            h = primitive(e)
            cons += [h, tuple(-x for x in h)]
        if d == 0:
            return cls._make(pts[:1], cons, 0)
        seen = set()
        for combo in combinations(range(len(pts)), d):
            sub = [rows[i] for i in combo]
            if affine_rank([pts[i] for i in combo]) != d - 1:
                continue
            for e in nullspace(sub, n + 1):
                vals = [affine_eval(e, p) for p in pts]
                if all(v == 0 for v in vals):
                    continue
                if all(v >= 0 for v in vals):
                    h = primitive(e)
                elif all(v <= 0 for v in vals):
                    h = primitive([-x for x in e])
                else:
                    break
                tight = frozenset(i for i, v in enumerate(vals) if v == 0)
                if tight not in seen:
                    seen.add(tight)
                    cons.append(h)
                break
        full = cls._make(pts, cons, d)
        extreme = [i for i in range(len(pts)) if full._face_of(full._vt[i]) == 1 << i]
        return cls._make([pts[i] for i in extreme], full.constraints, d)

    # -- queries --------------------------------------------------------

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @property
    def bbox(self):
        if self._bbox is None:
            cols = list(zip(*self.vertices))
            self._bbox = (tuple(min(c) for c in cols), tuple(max(c) for c in cols))
        return self._bbox

    def contains(self, p) -> bool:
        return all(affine_eval(h, p) >= 0 for h in self.constraints)

    def interior_point(self):
        """Barycenter of the vertices (lies in the relative interior)."""
        k = len(self.vertices)
        return tuple(sum(c, _ZERO) / k for c in zip(*self.vertices))

    def overlaps_bbox(self, other: "ConvexCell") -> bool:
        (alo, ahi), (blo, bhi) = self.bbox, other.bbox
        return all(a <= d and c <= b for a, b, c, d in zip(alo, ahi, blo, bhi))

    def _face_of(self, cons_mask: int) -> int:
        face = (1 << len(self.vertices)) - 1
        for c in _bits(cons_mask):
            face &= self._cm[c]
        return face

    def is_edge(self, i: int, j: int) -> bool:
        if len(self.vertices) == self.dim + 1:
            return True
        return self._face_of(self._vt[i] & self._vt[j]) == (1 << i) | (1 << j)

    # -- cutting --------------------------------------------------------

    def _derive(self, verts, vts, extra, dim=None) -> "ConvexCell":
        """Child cell without re-evaluating constraints.

        ``vts[i]`` is the set of parent constraints tight at ``verts[i]``;
        ``extra`` lists new ``(h, vertex_mask)`` pairs.
        """
        cell = ConvexCell.__new__(ConvexCell)
        cell.vertices = tuple(verts)
        keep, cm = [], []
        for ci, h in enumerate(self.constraints):
            bit = 1 << ci
            mask = 0
            for i, t in enumerate(vts):
                if t & bit:
                    mask |= 1 << i
            if mask:
                keep.append(h)
                cm.append(mask)
        known = set(self.constraints)
        for h, mask in extra:
            if mask and h not in known:
                known.add(h)
                keep.append(h)
                cm.append(mask)
        cell.constraints = tuple(keep)
        cell._cm = tuple(cm)
        vt = [0] * len(verts)
        for ci, mask in enumerate(cm):
            for i in _bits(mask):
                vt[i] |= 1 << ci
        cell._vt = tuple(vt)
        cell.dim = affine_rank(cell.vertices) if dim is None else dim
        cell._bbox = None
        return cell

    def _face(self, mask: int, extra) -> "ConvexCell":
        idx = list(_bits(mask))
        full = (1 << len(idx)) - 1
        return self._derive([self.vertices[i] for i in idx], [self._vt[i] for i in idx],
                            [(h, full) for h in extra])

    def split(self, h: Affine, values=None, want: str = "both"):
        """Closed pieces ``(C & {h <= 0}, C & {h >= 0})``; None marks an empty piece.

        With ``want`` set to ``"lo"`` or ``"hi"`` only that piece is built
        and the other slot is None.
        """
        vals = values if values is not None else [affine_eval(h, v) for v in self.vertices]
        neg = pos = zmask = 0
        for i, v in enumerate(vals):
            if v < 0:
                neg |= 1 << i
            elif v > 0:
                pos |= 1 << i
            else:
                zmask |= 1 << i
        minus = tuple(-x for x in h)
        lo_ok, hi_ok = want != "hi", want != "lo"
        if not pos:
            return self, (self._face(zmask, (h, minus)) if zmask and hi_ok else None)
        if not neg:
            return (self._face(zmask, (h, minus)) if zmask and lo_ok else None), self
        cuts, cut_vt = [], []
        for i in _bits(neg):
            for j in _bits(pos):
                if self.is_edge(i, j):
                    vi, vj = self.vertices[i], self.vertices[j]
                    t = vals[i] / (vals[i] - vals[j])
                    cuts.append(tuple(a + t * (b - a) for a, b in zip(vi, vj)))
                    # a constraint vanishes inside an edge iff it vanishes on both ends
                    cut_vt.append(self._vt[i] & self._vt[j])

        def piece(drop, g):
            idx = [i for i in range(len(self.vertices)) if not drop >> i & 1]
            verts = [self.vertices[i] for i in idx] + cuts
            vts = [self._vt[i] for i in idx] + cut_vt
            tight = 0
            for k, i in enumerate(idx):
                if zmask >> i & 1:
                    tight |= 1 << k
            tight |= ((1 << len(cuts)) - 1) << len(idx)
            return self._derive(verts, vts, [(g, tight)], self.dim)

        return (piece(pos, minus) if lo_ok else None), (piece(neg, h) if hi_ok else None)

    def halfspace(self, h: Affine) -> "ConvexCell | None":
        """``C & {h >= 0}`` exactly."""
        return self.split(h, want="hi")[1]

    def intersect(self, other: "ConvexCell") -> "ConvexCell | None":
        if not self.overlaps_bbox(other):
            return None
        cur = self
        for h in other.constraints:
            cur = cur.halfspace(h)
            if cur is None:
                return None
        return cur

    # -- triangulation --------------------------------------------------

    def triangulate(self) -> list[tuple]:
        """Pulling triangulation from the lexicographically smallest vertex."""
        out = []
        self._pull((1 << len(self.vertices)) - 1, self.dim, out)
        return out

    def _pull(self, mask: int, dim: int, out: list):
        idx = list(_bits(mask))
        if dim == 0 or len(idx) == dim + 1:
            out.append(tuple(sorted(self.vertices[i] for i in idx)))
            return
        v0 = min(idx, key=lambda i: self.vertices[i])
        faces = set()
        for cmask in self._cm:
            f = mask & cmask
            if f and f != mask:
                faces.add(f)
        facets = [f for f in faces if not any(f != g and f & g == f for g in faces)]
        for f in sorted(facets):
            if not f >> v0 & 1:
                sub = []
                self._pull(f, dim - 1, sub)
                for s in sub:
                    out.append(tuple(sorted(s + (self.vertices[v0],))))

    def __repr__(self):
        return f"ConvexCell(dim={self.dim}, vertices={len(self.vertices)})"

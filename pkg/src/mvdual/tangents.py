"""Bouligand-Severi tangents of rational polyhedra along polynomial curve germs.

A germ is the sequence ``x_i = x + c_1/i + c_2/i^2 + ... + c_m/i^m``.  Every
quantity the tangent conditions need is a polynomial in ``t = 1/i`` whose
sign for large ``i`` is the sign of its lowest-order nonzero coefficient,
so all checks stay exact.  Directions are rational rays: unit vectors are
never formed, and witnesses read their lengths against the primitive
integer vector on each ray.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import Polyhedron, poly_intersect, poly_subset
from .geometry.cells import affine_eval
from .geometry.linalg import dot, point, primitive, rank
from .geometry.polyhedron import simplex_cell


def eventual_sign(poly: Sequence) -> int:
    """Sign of ``sum poly[k] t^k`` for all small enough ``t > 0``."""
    for a in poly:
        if a:
            return 1 if a > 0 else -1
    return 0


def sign_threshold(poly: Sequence) -> int:
    """An index ``I`` such that for every ``i >= I`` the value at ``t = 1/i``
    has the eventual sign."""
    for r, a in enumerate(poly):
        if a:
            tail = sum((abs(b) for b in poly[r + 1:]), Fraction(0))
            return int(tail / abs(a)) + 1
    return 1


def poly_at(poly: Sequence, i: int) -> Fraction:
    t = Fraction(1, i)
    acc = Fraction(0)
    for a in reversed(poly):
        acc = acc * t + a
    return acc


class CurveGerm:
    """``x_i = base + sum_k coeffs[k-1] / i^k`` for ``i >= i0``."""

    __slots__ = ("base", "coeffs", "i0")

    def __init__(self, base, coeffs, i0: int | None = None):
        self.base = point(base)
        self.coeffs = tuple(point(c) for c in coeffs)
        n = len(self.base)
        if any(len(c) != n for c in self.coeffs):
            raise ValueError("coefficient of the wrong dimension")
        if any(not 0 <= x <= 1 for x in self.base):
            raise ValueError("base point outside the unit cube")
        polys = []
        for j in range(n):
            p = [self.base[j]] + [c[j] for c in self.coeffs]
            polys += [p, [1 - p[0]] + [-a for a in p[1:]]]
        if any(eventual_sign(p) < 0 for p in polys):
            raise ValueError("the germ leaves the unit cube")
        last = max(sign_threshold(p) for p in polys)
        first_ok = last
        while first_ok > 1 and all(poly_at(p, first_ok - 1) >= 0 for p in polys):
            first_ok -= 1
        if i0 is None:
            i0 = first_ok
        elif i0 < first_ok and any(poly_at(p, i) < 0 for i in range(i0, first_ok) for p in polys):
            raise ValueError(f"the germ leaves the unit cube for some i >= {i0}")
        self.i0 = i0

    @property
    def dim(self) -> int:
        return len(self.base)

    def at(self, i: int) -> tuple:
        return tuple(poly_at([self.base[j]] + [c[j] for c in self.coeffs], i) for j in range(self.dim))

    def displacement_poly(self, h) -> list[Fraction]:
        """``h(x_i)`` as a polynomial in ``1/i`` for an affine ``h``."""
        lin = h[:-1]
        return [affine_eval(h, self.base)] + [dot(lin, c) for c in self.coeffs]

    def rescaled(self, k: int, factor) -> "CurveGerm":
        """Germ with the ``k``-th coefficient (1-based) multiplied by ``factor > 0``."""
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("rescaling factor must be positive")
        cs = list(self.coeffs)
        cs[k - 1] = tuple(factor * x for x in cs[k - 1])
        return CurveGerm(self.base, cs)

    def __repr__(self):
        return f"CurveGerm(base={tuple(map(str, self.base))}, stages={len(self.coeffs)}, i0={self.i0})"


@dataclass(frozen=True)
class TangentTuple:
    """Pairwise orthogonal nonzero rational directions at ``base``."""

    base: tuple
    directions: tuple

    def __post_init__(self):
        object.__setattr__(self, "base", point(self.base))
        object.__setattr__(self, "directions", tuple(point(d) for d in self.directions))
        for d in self.directions:
            if len(d) != len(self.base):
                raise ValueError("direction of the wrong dimension")
            if not any(d):
                raise ValueError("zero direction")
        for a in range(len(self.directions)):
            for b in range(a + 1, len(self.directions)):
                if dot(self.directions[a], self.directions[b]) != 0:
                    raise ValueError("directions are not pairwise orthogonal")

    @property
    def k(self) -> int:
        return len(self.directions)

    def rays(self) -> tuple:
        """Primitive integer vector on each direction's ray."""
        return tuple(primitive(d) for d in self.directions)

    def same_rays(self, other: "TangentTuple") -> bool:
        return self.base == other.base and self.rays() == other.rays()


def _orth_residual(v, basis):
    r = list(v)
    for d in basis:
        f = dot(r, d) / dot(d, d)
        if f:
            r = [a - f * b for a, b in zip(r, d)]
    return tuple(r)


def extract_tangent(g: CurveGerm, k: int) -> TangentTuple:
    """The ``k``-tangent traced by ``g``, one orthogonalised stage at a time."""
    if k < 1:
        raise ValueError("k must be positive")
    if not any(any(c) for c in g.coeffs):
        raise ValueError("constant germ has no tangent")
    dirs: list[tuple] = []
    for c in g.coeffs:
        r = _orth_residual(c, dirs)
        if any(r):
            dirs.append(r)
            if len(dirs) == k:
                return TangentTuple(g.base, tuple(dirs))
    raise ValueError(f"germ has only {len(dirs)} independent stages, {k} requested")


def tangent_condition_2(g: CurveGerm, u: TangentTuple) -> bool:
    """Whether ``x_i - x`` eventually avoids the span of the directions."""
    if g.base != u.base:
        raise ValueError("germ and tangent have different base points")
    return any(any(_orth_residual(c, u.directions)) for c in g.coeffs)


def germ_in_polyhedron(X: Polyhedron, g: CurveGerm) -> bool:
    """Whether ``x_i`` lies in ``X`` for every large enough ``i``."""
    return entry_threshold(X, g) is not None


def entry_threshold(X: Polyhedron, g: CurveGerm) -> int | None:
    """Index past which the germ stays in ``X``, or None if it never settles in."""
    if X.dim != g.dim:
        raise ValueError(f"dimension mismatch: {X.dim} vs {g.dim}")
    best = None
    for cell in X.cells():
        polys = [g.displacement_poly(h) for h in cell.constraints]
        if all(eventual_sign(p) >= 0 for p in polys):
            th = max([g.i0] + [sign_threshold(p) for p in polys])
            best = th if best is None else min(best, th)
    return best


@dataclass(frozen=True)
class OutgoingWitness:
    """Rational simplex ``S``, a face ``F`` given by vertex indices, lengths ``lam``."""

    S: tuple
    F: tuple
    lam: tuple

    def __post_init__(self):
        object.__setattr__(self, "S", tuple(point(v) for v in self.S))
        object.__setattr__(self, "F", tuple(sorted(set(self.F))))
        object.__setattr__(self, "lam", tuple(Fraction(x) for x in self.lam))
        if any(not 0 <= i < len(self.S) for i in self.F):
            raise ValueError("face index outside the simplex")
        if any(x <= 0 for x in self.lam):
            raise ValueError("lengths must be positive")
        simplex_cell(tuple(sorted(self.S)))

    def face(self) -> tuple:
        return tuple(self.S[i] for i in self.F)


def chain_points(u: TangentTuple, lam: Sequence) -> list[tuple]:
    """``x, x + l1 d1, x + l1 d1 + l2 d2, ...`` with ``d`` the primitive rays."""
    if len(lam) != u.k:
        raise ValueError(f"need {u.k} lengths, got {len(lam)}")
    pts = [u.base]
    cur = u.base
    for l, d in zip(lam, u.rays()):
        cur = tuple(a + l * b for a, b in zip(cur, d))
        pts.append(cur)
    return pts


def _in_simplex(verts, p) -> bool:
    if not verts:
        return False
    return simplex_cell(tuple(sorted(verts))).contains(p)


def chain_conditions(u: TangentTuple, w: OutgoingWitness) -> tuple[bool, bool]:
    """Conditions (1) chain inside S and (2) chain not inside F."""
    if len(w.S[0]) != len(u.base):
        raise ValueError("dimension mismatch")
    pts = chain_points(u, w.lam)
    c1 = all(_in_simplex(w.S, p) for p in pts)
    c2 = not all(_in_simplex(w.face(), p) for p in pts)
    return c1, c2


def outgoing_conditions(X: Polyhedron, u: TangentTuple, w: OutgoingWitness) -> tuple[bool, bool, bool]:
    """Truth values of the three witness conditions, each evaluated on its own."""
    if X.dim != len(u.base):
        raise ValueError("dimension mismatch")
    return chain_conditions(u, w) + (_face_meets_like_simplex(X, w),)


def _face_meets_like_simplex(X: Polyhedron, w: OutgoingWitness) -> bool:
    # F & X <= S & X always holds, so equality reduces to S & X <= F
    SX = poly_intersect(Polyhedron(X.dim, [w.S]), X)
    if SX.is_empty():
        return True
    if not w.F:
        return False
    return poly_subset(SX, Polyhedron(X.dim, [w.face()]))


def verify_outgoing(X: Polyhedron, u: TangentTuple, w: OutgoingWitness) -> bool:
    if X.dim != len(u.base):
        raise ValueError("dimension mismatch")
    c1, c2 = chain_conditions(u, w)
    return c1 and c2 and _face_meets_like_simplex(X, w)


def check_outgoing_tangent(X: Polyhedron, g: CurveGerm, k: int, w: OutgoingWitness) -> bool:
    """Full witness that ``g`` traces a rationally outgoing ``k``-tangent of ``X``."""
    if not 1 <= k <= X.dim - 1:
        raise ValueError(f"k must lie in 1..{X.dim - 1}")
    if not germ_in_polyhedron(X, g):
        return False
    u = extract_tangent(g, k)
    if not tangent_condition_2(g, u):
        return False
    return verify_outgoing(X, u, w)


def independent_stages(g: CurveGerm) -> int:
    return rank([list(c) for c in g.coeffs]) if g.coeffs else 0

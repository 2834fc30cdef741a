"""Finite MV-algebras as concrete tuple algebras and their spectra.

Elements are tuples of rationals in [0,1]; operations act coordinatewise.
A spectrum keeps its coordinate labels, since the same finite space can sit
in different cubes (coproduct vs tensor product).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry.linalg import point

_ONE = Fraction(1)


def oplus(x, y):
    s = x + y
    return s if s < 1 else _ONE


def odot(x, y):
    s = x + y - 1
    return s if s > 0 else Fraction(0)


def t_neg(a: tuple) -> tuple:
    return tuple(1 - x for x in a)


def t_oplus(a: tuple, b: tuple) -> tuple:
    return tuple(oplus(x, y) for x, y in zip(a, b))


def t_odot(a: tuple, b: tuple) -> tuple:
    return tuple(odot(x, y) for x, y in zip(a, b))


def t_vee(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def t_wedge(a: tuple, b: tuple) -> tuple:
    return tuple(min(x, y) for x, y in zip(a, b))


class FiniteMVAlgebra:
    """Finite subalgebra of [0,1]^ambient."""

    __slots__ = ("ambient", "elements", "_index")

    def __init__(self, ambient: int, elements: Iterable, check: bool = True):
        elems = sorted({point(e) for e in elements})
        if any(len(e) != ambient for e in elems):
            raise ValueError("element of the wrong length")
        self.ambient = ambient
        self.elements = tuple(elems)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if check:
            problem = self.closure_violation()
            if problem:
                raise ValueError(problem)

    @property
    def zero(self) -> tuple:
        return (Fraction(0),) * self.ambient

    @property
    def one(self) -> tuple:
        return (_ONE,) * self.ambient

    def __len__(self):
        return len(self.elements)

    def __contains__(self, a):
        return a in self._index

    def __eq__(self, other):
        return isinstance(other, FiniteMVAlgebra) and (self.ambient, self.elements) == (other.ambient, other.elements)

    def __hash__(self):
        return hash((self.ambient, self.elements))

    def closure_violation(self) -> str | None:
        if self.zero not in self._index:
            return "missing the zero tuple"
        for a in self.elements:
            if any(not 0 <= x <= 1 for x in a):
                return f"coordinate outside [0,1] in {a}"
            if t_neg(a) not in self._index:
                return f"not closed under negation at {a}"
        for a in self.elements:
            for b in self.elements:
                if t_oplus(a, b) not in self._index:
                    return f"not closed under (+) at {a}, {b}"
        return None

    def __repr__(self):
        return f"FiniteMVAlgebra(ambient={self.ambient}, size={len(self.elements)})"


def chain(n: int) -> FiniteMVAlgebra:
    """Łukasiewicz chain {0, 1/n, ..., 1}."""
    if n < 1:
        raise ValueError("chains need n >= 1")
    return FiniteMVAlgebra(1, [(Fraction(i, n),) for i in range(n + 1)], check=False)


def product(A: FiniteMVAlgebra, B: FiniteMVAlgebra) -> FiniteMVAlgebra:
    return FiniteMVAlgebra(A.ambient + B.ambient, [a + b for a in A.elements for b in B.elements], check=False)


def subalgebra_closure(gens: Iterable, ambient: int | None = None) -> FiniteMVAlgebra:
    """Least subset containing ``gens`` and 0 closed under negation and (+)."""
    gens = [point(g) for g in gens]
    if ambient is None:
        if not gens:
            raise ValueError("ambient dimension needed for an empty generator set")
        ambient = len(gens[0])
    for g in gens:
        if len(g) != ambient or any(not 0 <= x <= 1 for x in g):
            raise ValueError(f"generator {g} is not in [0,1]^{ambient}")
    known = {(Fraction(0),) * ambient, *gens}
    frontier = list(known)
    while frontier:
        new = set()
        for a in frontier:
            c = t_neg(a)
            if c not in known:
                new.add(c)
            for b in list(known):
                c = t_oplus(a, b)
                if c not in known:
                    new.add(c)
        known |= new
        frontier = list(new)
    return FiniteMVAlgebra(ambient, known, check=False)


def is_hom(A: FiniteMVAlgebra, values: Sequence) -> bool:
    """Exhaustive check that ``A.elements[i] -> values[i]`` preserves 0, negation, (+)."""
    idx = A._index
    if values[idx[A.zero]] != 0:
        return False
    for i, a in enumerate(A.elements):
        if values[idx[t_neg(a)]] != 1 - values[i]:
            return False
        for j, b in enumerate(A.elements):
            if values[idx[t_oplus(a, b)]] != oplus(values[i], values[j]):
                return False
    return True


@dataclass(frozen=True)
class Spectrum:
    """Points of Hom(A, [0,1]) as coordinate tuples over ``labels``."""

    labels: tuple
    points: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "points", frozenset(point(p) for p in self.points))
        if any(len(p) != len(self.labels) for p in self.points):
            raise ValueError("point of the wrong length")

    def __len__(self):
        return len(self.points)

    def sorted_points(self) -> list[tuple]:
        return sorted(self.points)

    def value(self, pt: tuple, label) -> Fraction:
        return pt[self.labels.index(label)]

    def project(self, labels: Sequence) -> set[tuple]:
        pos = [self.labels.index(l) for l in labels]
        return {tuple(p[i] for i in pos) for p in self.points}


def spectrum(A: FiniteMVAlgebra) -> Spectrum:
    """All homomorphisms A -> [0,1].

    For a tuple algebra every such homomorphism is one of the coordinate
    projections, so those are the only candidates; each is still checked
    exhaustively before it is admitted.
    """
    pts = set()
    for j in range(A.ambient):
        vals = tuple(a[j] for a in A.elements)
        if vals not in pts and is_hom(A, vals):
            pts.add(vals)
    return Spectrum(A.elements, frozenset(pts))


def coproduct_spectrum(A: FiniteMVAlgebra, B: FiniteMVAlgebra) -> Spectrum:
    """Points ``(p, q)`` over the disjoint union of the two label sets."""
    sa, sb = spectrum(A), spectrum(B)
    labels = tuple(("A", a) for a in A.elements) + tuple(("B", b) for b in B.elements)
    return Spectrum(labels, frozenset(p + q for p in sa.points for q in sb.points))


@dataclass(frozen=True)
class TensorSpectrum(Spectrum):
    """Tensor spectrum with the generating pair recorded for every point."""

    pairing: tuple = ()

    def factors(self, pt: tuple) -> tuple[tuple, tuple]:
        for img, p, q in self.pairing:
            if img == pt:
                return p, q
        raise KeyError("point not in the spectrum")


def tensor_spectrum(A: FiniteMVAlgebra, B: FiniteMVAlgebra) -> TensorSpectrum:
    """Image of spectrum(A) x spectrum(B) under ``(p.q)(a,b) = p(a) q(b)``."""
    sa, sb = spectrum(A), spectrum(B)
    labels = tuple((a, b) for a in A.elements for b in B.elements)
    pairing = []
    for p in sa.sorted_points():
        for q in sb.sorted_points():
            pairing.append((tuple(x * y for x in p for y in q), p, q))
    return TensorSpectrum(labels, frozenset(img for img, _, _ in pairing), tuple(pairing))


def tensor_relation_failures(A: FiniteMVAlgebra, B: FiniteMVAlgebra, pt: Sequence) -> list[str]:
    """Instances of the nine tensor relation families violated by ``pt``.

    ``pt`` is indexed by ``(a, b)`` pairs in the order ``A x B`` of
    :func:`tensor_spectrum`.
    """
    pt = point(pt)
    if len(pt) != len(A) * len(B):
        raise ValueError(f"expected {len(A) * len(B)} coordinates, got {len(pt)}")
    nb = len(B)
    ia, ib = A._index, B._index
    AE, BE = A.elements, B.elements

    def r(a, b):
        return pt[ia[a] * nb + ib[b]]

    bad = []
    if r(A.one, B.one) != 1:
        bad.append("(1) r(1,1) != 1")
    bad += [f"(1) r(a,0) != 0 at {a}" for a in AE if r(a, B.zero) != 0]
    bad += [f"(1) r(0,b) != 0 at {b}" for b in BE if r(A.zero, b) != 0]
    for a in AE:
        for b1 in BE:
            for b2 in BE:
                x, y = r(a, b1), r(a, b2)
                if r(a, t_vee(b1, b2)) != max(x, y):
                    bad.append(f"(2) at {a},{b1},{b2}")
                if r(a, t_wedge(b1, b2)) != min(x, y):
                    bad.append(f"(4) at {a},{b1},{b2}")
                if t_odot(b1, b2) == B.zero:
                    if odot(x, y) != 0:
                        bad.append(f"(6) at {a},{b1},{b2}")
                    if r(a, t_oplus(b1, b2)) != oplus(x, y):
                        bad.append(f"(8) at {a},{b1},{b2}")
    for b in BE:
        for a1 in AE:
            for a2 in AE:
                x, y = r(a1, b), r(a2, b)
                if r(t_vee(a1, a2), b) != max(x, y):
                    bad.append(f"(3) at {a1},{a2},{b}")
                if r(t_wedge(a1, a2), b) != min(x, y):
                    bad.append(f"(5) at {a1},{a2},{b}")
                if t_odot(a1, a2) == A.zero:
                    if odot(x, y) != 0:
                        bad.append(f"(7) at {a1},{a2},{b}")
                    if r(t_oplus(a1, a2), b) != oplus(x, y):
                        bad.append(f"(9) at {a1},{a2},{b}")
    return bad


def relations_satisfied(A: FiniteMVAlgebra, B: FiniteMVAlgebra, pt: Sequence) -> bool:
    return not tensor_relation_failures(A, B, pt)


def split_bimorphism(A: FiniteMVAlgebra, B: FiniteMVAlgebra, pt: Sequence):
    """``p(a) = pt(a,1)`` and ``q(b) = pt(1,b)``, or None when ``pt`` is not ``p.q``."""
    pt = point(pt)
    nb = len(B)
    ia, ib = A._index, B._index
    p = tuple(pt[ia[a] * nb + ib[B.one]] for a in A.elements)
    q = tuple(pt[ia[A.one] * nb + ib[b]] for b in B.elements)
    if not (is_hom(A, p) and is_hom(B, q)):
        return None
    if tuple(x * y for x in p for y in q) != pt:
        return None
    return p, q


def algebra_of_spectrum(X: Spectrum) -> FiniteMVAlgebra:
    """Subalgebra of [0,1]^X generated by the coordinate functions."""
    pts = X.sorted_points()
    gens = [tuple(p[i] for p in pts) for i in range(len(X.labels))]
    return subalgebra_closure(gens, ambient=len(pts))


def evaluation_map(X: Spectrum) -> dict:
    """``cev``: each point ``x`` of X goes to the homomorphism ``f -> f(x)``
    on ``algebra_of_spectrum(X)``, written as a point of its spectrum."""
    M = algebra_of_spectrum(X)
    pts = X.sorted_points()
    return {x: tuple(f[k] for f in M.elements) for k, x in enumerate(pts)}


def cev_is_bijection(X: Spectrum) -> bool:
    M = algebra_of_spectrum(X)
    target = spectrum(M).points
    cev = evaluation_map(X)
    images = set(cev.values())
    return len(images) == len(cev) and images == set(target)

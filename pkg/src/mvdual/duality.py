"""Varieties of finite presentations, ideal membership, and dual Z-maps.

Only the semisimple part of a presentation is visible here: two relation
sets with the same radical have the same variety, and nothing in this
module can tell them apart.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .geometry import Polyhedron, poly_equal, poly_subset
from .mcnaughton import PLFunction, ZMap, compile_term, pl_equal, restrict, zero_set
from .terms import (
    ZERO,
    Neg,
    Presentation,
    Term,
    Var,
    big_vee,
    chang_distance,
    evaluate,
    min_arity,
    one,
    substitute,
)


class IllDefinedHom(ValueError):
    """The generator images do not respect the source relations."""


def relation_function(pres: Presentation) -> PLFunction:
    """McNaughton function vanishing exactly on the variety."""
    dists = [chang_distance(s, t) for s, t in pres.relations]
    return compile_term(big_vee(dists), pres.arity)


def variety(pres: Presentation) -> Polyhedron:
    return zero_set(relation_function(pres))


def in_ideal(P: Polyhedron, s: Term, t: Term) -> bool:
    """Whether ``s`` and ``t`` agree at every point of ``P``."""
    if max(min_arity(s), min_arity(t)) > P.dim:
        raise ValueError(f"terms use more than {P.dim} variables")
    if P.is_empty():
        return True
    return poly_subset(P, zero_set(compile_term(chang_distance(s, t), P.dim)))


def radical_equal(S: Presentation, T: Presentation) -> bool:
    if S.arity != T.arity:
        raise ValueError(f"arity mismatch: {S.arity} vs {T.arity}")
    return poly_equal(variety(S), variety(T))


@dataclass(frozen=True)
class HomSpec:
    """Homomorphism between finitely presented algebras given on generators."""

    source: Presentation
    target: Presentation
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.arity:
            raise ValueError(f"need {self.source.arity} generator images, got {len(self.images)}")
        for t in self.images:
            if min_arity(t) > self.target.arity:
                raise ValueError(f"image {t} uses variables beyond arity {self.target.arity}")


def identity_hom(pres: Presentation) -> HomSpec:
    return HomSpec(pres, pres, tuple(Var(i) for i in range(pres.arity)))


def compose_homs(h: HomSpec, g: HomSpec) -> HomSpec:
    """``h`` after ``g``."""
    if g.target != h.source:
        raise ValueError("homomorphisms are not composable")
    return HomSpec(g.source, h.target, tuple(substitute(t, h.images) for t in g.images))


def check_hom(h: HomSpec, target_variety: Polyhedron | None = None) -> bool:
    V = variety(h.target) if target_variety is None else target_variety
    for s, t in h.source.relations:
        if not in_ideal(V, substitute(s, h.images), substitute(t, h.images)):
            return False
    return True


def dual_zmap(h: HomSpec) -> ZMap:
    """The Z-map ``V(target) -> V(source)`` given by the generator images."""
    V = variety(h.target)
    if not check_hom(h, V):
        raise IllDefinedHom("generator images violate a source relation on the target variety")
    k = h.target.arity
    return ZMap(k, [compile_term(t, k) for t in h.images], V)


def evaluation_onto_check(pres: Presentation, f: PLFunction, provenance: Term) -> Term:
    """A term whose function agrees with ``f`` on the variety of ``pres``.

    Short candidates (constants, literals) are tried before falling back on
    the provenance term; the answer is always checked.
    """
    V = variety(pres)
    n = pres.arity
    target = f if not f.on_cube else restrict(f, V)
    candidates: list[Term] = [ZERO, one()]
    for i in range(n):
        candidates += [Var(i), Neg(Var(i))]
    candidates.append(provenance)
    for t in candidates:
        if V.is_empty() or pl_equal(restrict(compile_term(t, n), V), target):
            return t
    raise ValueError("provenance term does not represent the function on the variety")


def images_land(eta: ZMap, pres: Presentation, points: Sequence) -> bool:
    """Whether ``eta`` sends each of ``points`` into the variety of ``pres``."""
    for p in points:
        q = eta(p)
        if any(evaluate(s, q) != evaluate(t, q) for s, t in pres.relations):
            return False
    return True

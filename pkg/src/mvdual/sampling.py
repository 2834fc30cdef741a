"""Random generators for property suites and the falsification command."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator

from .finite import FiniteMVAlgebra, chain, product
from .geometry import Polyhedron
from .geometry.linalg import affine_rank
from .tangents import (
    CurveGerm,
    OutgoingWitness,
    check_outgoing_tangent,
    chain_conditions,
    chain_points,
    extract_tangent,
    germ_in_polyhedron,
    tangent_condition_2,
)
from .terms import ZERO, Neg, Oplus, Presentation, Term, Var, imp, odot, one, ominus, vee, wedge

_BINARY = (Oplus, odot, vee, wedge, imp, ominus)


def random_term(rng: random.Random, nvars: int, depth: int) -> Term:
    """Random term built from all connectives; ``depth`` bounds the surface tree."""
    if depth == 0 or rng.random() < 0.2:
        r = rng.random()
        if r < 0.85 and nvars:
            return Var(rng.randrange(nvars))
        return ZERO if r < 0.92 else one()
    if rng.random() < 0.25:
        return Neg(random_term(rng, nvars, depth - 1))
    op = rng.choice(_BINARY)
    return op(random_term(rng, nvars, depth - 1), random_term(rng, nvars, depth - 1))


def random_presentation(rng: random.Random, max_arity: int = 3, max_relations: int = 3,
                        depth: int = 2) -> Presentation:
    n = rng.randint(1, max_arity)
    rels = [(random_term(rng, n, depth), random_term(rng, n, depth))
            for _ in range(rng.randint(0, max_relations))]
    return Presentation(n, tuple(rels))


def random_rational(rng: random.Random, den: int = 4) -> Fraction:
    return Fraction(rng.randint(0, den), den)


def random_point(rng: random.Random, n: int, den: int = 4) -> tuple:
    return tuple(random_rational(rng, den) for _ in range(n))


def random_simplex(rng: random.Random, n: int, k: int, den: int = 4) -> tuple:
    while True:
        verts = [random_point(rng, n, den) for _ in range(k + 1)]
        if affine_rank(verts) == k:
            return tuple(verts)


def random_polyhedron(rng: random.Random, n: int, max_simplices: int = 3, den: int = 4) -> Polyhedron:
    simps = []
    for _ in range(rng.randint(1, max_simplices)):
        k = rng.choice([n] * 2 + list(range(1, n)))
        simps.append(random_simplex(rng, n, k, den))
    return Polyhedron(n, simps)


def random_algebra(rng: random.Random, max_factors: int = 3, max_den: int = 4) -> FiniteMVAlgebra:
    A = chain(rng.randint(1, max_den))
    for _ in range(rng.randint(0, max_factors - 1)):
        A = product(A, chain(rng.randint(1, max_den)))
    return A


def _point_in(rng: random.Random, verts, den: int = 6) -> tuple:
    w = [rng.randint(0, den) for _ in verts]
    if not any(w):
        w[0] = 1
    s = sum(w)
    return tuple(sum(Fraction(wi, s) * v[j] for wi, v in zip(w, verts)) for j in range(len(verts[0])))


def random_germ(rng: random.Random, X: Polyhedron, stages: int | None = None) -> CurveGerm:
    """Germ based at a point of ``X``; mostly running inside one simplex of ``X``."""
    n = X.dim
    s = rng.choice(X.simplices)
    face = rng.sample(list(s), rng.randint(1, len(s)))
    base = _point_in(rng, face)
    m = stages if stages is not None else rng.randint(1, n)
    if rng.random() < 0.8:
        coeffs = [tuple(a - b for a, b in zip(_point_in(rng, s), base)) for _ in range(m)]
    else:
        coeffs = [tuple(Fraction(rng.randint(-2, 2), rng.randint(1, 3)) for _ in range(n)) for _ in range(m)]
    try:
        return CurveGerm(base, coeffs)
    except ValueError:
        return CurveGerm(base, [tuple(a - b for a, b in zip(_point_in(rng, s), base)) for _ in range(m)])


def random_witness(rng: random.Random, g: CurveGerm, k: int) -> OutgoingWitness:
    """Witness aimed at the tangent of ``g``; usually satisfies conditions (1) and (2)."""
    n = g.dim
    lam = [Fraction(rng.randint(1, 4), rng.choice([2, 4, 8])) for _ in range(k)]
    try:
        u = extract_tangent(g, k)
        pts = chain_points(u, lam)
    except ValueError:
        pts = [g.base]
    verts = list(pts)
    tries = 0
    while len(verts) < n + 1 and tries < 50:
        tries += 1
        cand = tuple(c + Fraction(rng.randint(-4, 4), 4) for c in g.base)
        if affine_rank(verts + [cand]) == len(verts):
            verts.append(cand)
    if rng.random() < 0.3 and len(verts) > 1:
        verts = verts[:rng.randint(1, len(verts))]
    order = list(range(len(verts)))
    rng.shuffle(order)
    S = [verts[i] for i in order]
    chain_idx = [order.index(i) for i in range(min(len(pts), len(verts)))]
    choice = rng.random()
    if choice < 0.4:
        F = [i for i in range(len(S)) if i != chain_idx[-1]]
    elif choice < 0.7:
        F = [chain_idx[0]]
    else:
        F = rng.sample(range(len(S)), rng.randint(0, len(S) - 1))
    return OutgoingWitness(tuple(S), tuple(F), tuple(lam))


def falsification_samples(rng: random.Random, X: Polyhedron, count: int) -> Iterator[tuple]:
    """Yields ``(germ, k, witness)`` triples for the outgoing-tangent search."""
    n = X.dim
    for _ in range(count):
        k = rng.randint(1, n - 1)
        stages = rng.randint(1, n) if rng.random() < 0.2 else rng.randint(min(k + 1, n), n)
        g = random_germ(rng, X, stages)
        yield g, k, random_witness(rng, g, k)


def falsify(X: Polyhedron, count: int, seed: int = 0) -> dict:
    """Run ``count`` sampled witness checks against ``X`` and tally each stage."""
    rng = random.Random(seed)
    tally = {"samples": 0, "germ_in_X": 0, "degenerate": 0, "tangent": 0, "cond1": 0,
             "cond2": 0, "counterexamples": []}
    for g, k, w in falsification_samples(rng, X, count):
        tally["samples"] += 1
        if not germ_in_polyhedron(X, g):
            continue
        tally["germ_in_X"] += 1
        try:
            u = extract_tangent(g, k)
        except ValueError:
            # fewer independent stages than k: no k-tangent along this germ
            tally["degenerate"] += 1
            continue
        if not tangent_condition_2(g, u):
            continue
        tally["tangent"] += 1
        c1, c2 = chain_conditions(u, w)
        tally["cond1"] += c1
        tally["cond2"] += c1 and c2
        if c1 and c2 and check_outgoing_tangent(X, g, k, w):
            tally["counterexamples"].append((g, k, w))
    return tally

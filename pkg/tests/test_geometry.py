import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from mvdual.geometry import (
    ConvexCell,
    Polyhedron,
    affine_independent,
    poly_equal,
    poly_intersect,
    poly_subset,
    poly_union,
    product,
    project,
    simplex_contains,
    split_cell,
    triangulate,
)
from mvdual.sampling import random_point, random_polyhedron
from oracles import in_full_simplex, simplex_volume

SQUARE = ConvexCell.cube(2)
TRI = [(0, 0), (1, 0), (0, 1)]


def seg(a, b):
    return Polyhedron(1, [[(F(a),), (F(b),)]])


def test_affine_independent():
    assert affine_independent(TRI)
    assert not affine_independent([(0, 0), (1, 1), (2, 2)])
    assert affine_independent([(0, 0), (F(1, 2), 0), (F(1, 4), F(1, 3))])


def test_simplex_contains():
    assert simplex_contains(TRI, (F(1, 4), F(1, 4)))
    assert not simplex_contains(TRI, (1, 1))
    assert simplex_contains([(0,), (1,)], (F(1, 3),))


def test_split_square_in_half():
    lo, hi = split_cell(SQUARE, ((1, 0), F(-1, 2)))
    assert sorted(lo.vertices) == [(0, 0), (0, 1), (F(1, 2), 0), (F(1, 2), 1)]
    assert sorted(hi.vertices) == [(F(1, 2), 0), (F(1, 2), 1), (1, 0), (1, 1)]


def test_split_one_side():
    lo, hi = split_cell(ConvexCell.cube(1), ((1,), 1))
    assert lo is None
    assert sorted(hi.vertices) == [(0,), (1,)]


def test_split_triangle_corner():
    lo, hi = split_cell(ConvexCell.simplex(TRI), ((1, 1), F(-1, 2)))
    half = F(1, 2)
    assert sorted(lo.vertices) == [(0, 0), (0, half), (half, 0)]
    assert sorted(hi.vertices) == [(0, half), (0, 1), (half, 0), (1, 0)]


def test_triangulate_simple_cases():
    assert len(triangulate(SQUARE)) == 2
    s = ConvexCell.simplex(TRI)
    assert triangulate(s) == [tuple(sorted(TRI))]


def test_triangulate_hexagon():
    q, t = F(1, 4), F(3, 4)
    hexagon = [(q, 0), (t, 0), (1, F(1, 2)), (t, 1), (q, 1), (0, F(1, 2))]
    cell = ConvexCell.from_points(hexagon)
    simps = triangulate(cell)
    assert len(simps) == 4
    v0 = min(hexagon)
    assert all(v0 in s for s in simps)
    # union and disjoint interiors by exact sampling
    rng = random.Random(1)
    for _ in range(300):
        p = random_point(rng, 2, 12)
        hits = [s for s in simps if in_full_simplex(s, p)]
        assert bool(hits) == cell.contains(p)
    for s in simps:
        bary = tuple(sum(v[i] for v in s) / 3 for i in range(2))
        assert sum(in_full_simplex(o, bary) for o in simps) == 1


def test_poly_equal_examples():
    assert poly_equal(seg(0, F(1, 2)), Polyhedron(1, [[(0,), (F(1, 4),)], [(F(1, 4),), (F(1, 2),)]]))
    assert not poly_equal(Polyhedron(1, [[(F(1, 2),)]]), Polyhedron(1, [[(F(1, 3),)]]))
    a = Polyhedron(2, [[(0, 0), (1, 0), (1, 1)], [(0, 0), (0, 1), (1, 1)]])
    b = Polyhedron(2, [[(0, 0), (1, 0), (0, 1)], [(1, 0), (0, 1), (1, 1)]])
    assert poly_equal(a, b)


def test_intersections():
    assert poly_equal(poly_intersect(seg(0, F(1, 2)), seg(F(1, 4), 1)), seg(F(1, 4), F(1, 2)))
    P = random_polyhedron(random.Random(4), 2)
    assert poly_equal(poly_intersect(P, P), P)
    diag = Polyhedron(2, [[(0, 0), (1, 1)]])
    got = poly_intersect(Polyhedron.cube(2), diag)
    assert poly_equal(got, diag)


def test_projection():
    assert poly_equal(project(Polyhedron(2, [TRI]), [0]), seg(0, 1))
    assert poly_equal(project(Polyhedron(2, [[(F(1, 2), F(1, 3))]]), [1]), Polyhedron(1, [[(F(1, 3),)]]))
    assert poly_equal(project(Polyhedron(2, [[(0, 0), (1, 1)]]), [0]), seg(0, 1))


def test_products():
    sq = product(seg(0, 1), seg(0, 1))
    assert len(sq.simplices) == 2 and poly_equal(sq, Polyhedron.cube(2))
    tri = Polyhedron(2, [TRI])
    lifted = product(Polyhedron(1, [[(F(1, 2),)]]), tri)
    assert poly_equal(lifted, Polyhedron(3, [[(F(1, 2),) + v for v in TRI]]))
    prism = product(seg(0, 1), tri)
    assert len(prism.simplices) == 3  # binomial(1 + 2, 2)
    # |det| is 3! times volume; the prism has volume 1/2
    assert sum(simplex_volume(s) for s in prism.simplices) == 3


# -- properties ---------------------------------------------------------------

seeds = st.integers(0, 10**6)


@given(seeds)
def test_split_covers(seed):
    rng = random.Random(seed)
    P = random_polyhedron(rng, 2)
    cell = P.cells()[0]
    h = (tuple(F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(2)), F(rng.randint(-2, 2), 3))
    lo, hi = split_cell(cell, h)
    for _ in range(60):
        p = random_point(rng, 2, 6)
        inside = (lo is not None and lo.contains(p)) or (hi is not None and hi.contains(p))
        assert inside == cell.contains(p)


@given(seeds)
def test_triangulation_volume(seed):
    rng = random.Random(seed)
    pts = [random_point(rng, 2, 5) for _ in range(6)] + [(F(0), F(0)), (F(1), F(0)), (F(0), F(1))]
    cell = ConvexCell.from_points(pts)
    simps = triangulate(cell)
    # shoelace area of the convex hull, vertices sorted by angle around the centroid
    vs = list(cell.vertices)
    cx = sum(v[0] for v in vs) / len(vs)
    cy = sum(v[1] for v in vs) / len(vs)
    import math
    vs.sort(key=lambda v: math.atan2(float(v[1] - cy), float(v[0] - cx)))
    area2 = abs(sum(vs[i][0] * vs[i - 1][1] - vs[i - 1][0] * vs[i][1] for i in range(len(vs))))
    assert sum(simplex_volume(s) for s in simps) == area2
    for s in simps:
        bary = tuple(sum(v[i] for v in s) / 3 for i in range(2))
        assert sum(in_full_simplex(o, bary) for o in simps) == 1


@given(seeds)
def test_poly_equal_equivalence(seed):
    rng = random.Random(seed)
    P, Q = random_polyhedron(rng, 2), random_polyhedron(rng, 2)
    assert poly_equal(P, P)
    assert poly_equal(P, Q) == poly_equal(Q, P)
    retri = Polyhedron.from_cells(2, [c for c in P.cells()])
    assert poly_equal(P, retri)
    U = poly_union(P, Q)
    assert poly_subset(P, U) and poly_subset(Q, U)


@given(seeds)
def test_rescaled_fractions_identical(seed):
    rng = random.Random(seed)
    P = random_polyhedron(rng, 2)
    # same rationals written with a common non-reduced scale must give equal objects
    k = rng.randint(2, 9)
    Q = Polyhedron(2, [[tuple(F(x.numerator * k, x.denominator * k) for x in v) for v in s] for s in P.simplices])
    assert Q.simplices == P.simplices
    assert poly_intersect(P, Q).simplices == poly_intersect(P, P).simplices


@given(seeds)
def test_project_of_product(seed):
    rng = random.Random(seed)
    P = random_polyhedron(rng, 1)
    Q = random_polyhedron(rng, 2, max_simplices=2)
    assert poly_equal(project(product(P, Q), [0]), P)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        poly_subset(Polyhedron.cube(1), Polyhedron.cube(2))

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from mvdual.duality import (
    HomSpec,
    IllDefinedHom,
    check_hom,
    compose_homs,
    dual_zmap,
    evaluation_onto_check,
    identity_hom,
    images_land,
    in_ideal,
    radical_equal,
    variety,
)
from mvdual.geometry import Polyhedron, poly_equal, poly_subset
from mvdual.mcnaughton import compile_term, identity_zmap, pl_eval, restrict, zmap_equal
from mvdual.sampling import random_presentation, random_term
from mvdual.terms import Neg, Oplus, Presentation, Var, evaluate, one, parse_term

x0, x1 = Var(0), Var(1)
HALF = F(1, 2)
POINT_HALF = Polyhedron(1, [[(HALF,)]])


def pres(n, *rels):
    return Presentation.parse(n, list(rels))


def test_variety_examples():
    assert poly_equal(variety(pres(1, ("x0 (+) x0", "1"))), Polyhedron(1, [[(HALF,), (1,)]]))
    assert poly_equal(variety(pres(1, ("x0", "~x0"))), POINT_HALF)
    assert poly_equal(variety(pres(2)), Polyhedron.cube(2))


def test_in_ideal_examples():
    assert in_ideal(POINT_HALF, x0, Neg(x0))
    assert not in_ideal(Polyhedron.cube(1), x0, Neg(x0))
    assert in_ideal(Polyhedron(1, [[(HALF,), (1,)]]), Oplus(x0, x0), one())
    assert in_ideal(Polyhedron.empty(1), x0, one())


def test_radical_equal_examples():
    S = pres(1, ("x0", "~x0"))
    T = pres(1, ("x0 (+) x0", "1"), ("~x0 (+) ~x0", "1"))
    assert radical_equal(S, T)
    assert not radical_equal(pres(1), pres(1, ("0", "1")))
    assert radical_equal(S, pres(1, ("x0", "~x0"), ("x0", "~x0")))


def test_check_hom_examples():
    src = pres(1, ("x0", "~x0"))
    assert not check_hom(HomSpec(src, pres(1), (Neg(Oplus(x0, x0)),)))
    assert check_hom(identity_hom(src))
    contradictory = pres(1, ("0", "1"))
    assert check_hom(HomSpec(src, contradictory, (x0,)))


def test_dual_zmap_examples():
    P = pres(2, ("x0", "x1"))
    assert zmap_equal(dual_zmap(identity_hom(P)), identity_zmap(2, variety(P)))
    flip = dual_zmap(HomSpec(pres(1), pres(1), (Neg(x0),)))
    assert flip((F(1, 3),)) == (F(2, 3),)
    with pytest.raises(IllDefinedHom):
        dual_zmap(HomSpec(pres(1, ("x0", "~x0")), pres(1), (x0,)))


def test_evaluation_onto_examples():
    P = pres(1)
    assert evaluation_onto_check(P, compile_term(x0, 1), x0) == x0
    diag = pres(2, ("x0", "x1"))
    s = Oplus(x0, x1)
    t = evaluation_onto_check(diag, restrict(compile_term(s, 2), variety(diag)), s)
    for k in range(5):
        p = (F(k, 4), F(k, 4))
        assert evaluate(t, p) == evaluate(s, p)
    half = pres(1, ("x0 (+) x0", "1"))
    assert evaluation_onto_check(half, compile_term(one(), 1), Oplus(x0, Neg(x0))) == one()


# -- properties ---------------------------------------------------------------

seeds = st.integers(0, 10**6)


@given(seeds)
def test_galois_closure_and_antitone(seed):
    rng = random.Random(seed)
    S = random_presentation(rng)
    V = variety(S)
    s, t = random_term(rng, S.arity, 2), random_term(rng, S.arity, 2)
    if in_ideal(V, s, t):
        assert poly_equal(variety(S.extend((s, t))), V)
    T = S.extend((s, t))
    assert poly_subset(variety(T), V)
    # in_ideal is antitone in the point set
    if in_ideal(V, s, t):
        assert in_ideal(variety(T), s, t)


@given(seeds)
def test_dual_maps_into_source_variety(seed):
    rng = random.Random(seed)
    A = random_presentation(rng, 2, 1)
    B = random_presentation(rng, 2, 2)
    h = HomSpec(A, B, tuple(random_term(rng, B.arity, 2) for _ in range(A.arity)))
    if not check_hom(h):
        with pytest.raises(IllDefinedHom):
            dual_zmap(h)
        return
    eta = dual_zmap(h)
    barys = [tuple(sum(v[i] for v in s) / len(s) for i in range(B.arity)) for s in eta.domain.simplices]
    assert images_land(eta, A, barys)


def test_identity_and_composition_of_homs():
    A = pres(2, ("x0", "~x1"))
    g = HomSpec(A, pres(1), (x0, Neg(x0)))
    h = HomSpec(pres(1), pres(1, ("x0 (+) x0", "1")), (Neg(x0),))
    assert check_hom(g) and check_hom(h)
    hg = compose_homs(h, g)
    assert hg.images == (Neg(x0), Neg(Neg(x0)))
    assert pl_eval(dual_zmap(hg).components[1], (F(3, 4),)) == F(3, 4)
    with pytest.raises(ValueError):
        compose_homs(g, h)


def test_homspec_validation():
    with pytest.raises(ValueError):
        HomSpec(pres(2), pres(1), (x0,))
    with pytest.raises(ValueError):
        HomSpec(pres(1), pres(1), (parse_term("x3"),))

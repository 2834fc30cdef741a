import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from mvdual.finite import (
    FiniteMVAlgebra,
    algebra_of_spectrum,
    cev_is_bijection,
    chain,
    coproduct_spectrum,
    is_hom,
    product,
    relations_satisfied,
    spectrum,
    split_bimorphism,
    subalgebra_closure,
    tensor_relation_failures,
    tensor_spectrum,
)
from mvdual.sampling import random_algebra
from oracles import closure_oracle, homs_oracle

HALF, QUARTER = F(1, 2), F(1, 4)


def values(A):
    return sorted(e[0] for e in A.elements)


def test_chains():
    assert values(chain(1)) == [0, 1]
    assert values(chain(2)) == [0, HALF, 1]
    c4 = chain(4)
    assert len(c4) == 5 and c4.closure_violation() is None
    assert (F(3, 4),) in c4


def test_closure_examples():
    assert values(subalgebra_closure([(HALF,)])) == [0, HALF, 1]
    got = subalgebra_closure([(QUARTER,)])
    assert set(got.elements) == closure_oracle([(QUARTER,)], 1)
    assert len(product(chain(1), chain(1))) == 4


def test_not_closed_rejected():
    with pytest.raises(ValueError):
        FiniteMVAlgebra(1, [(0,), (HALF,)])


def test_spectrum_examples():
    assert spectrum(chain(2)).points == {(0, HALF, 1)}
    assert spectrum(chain(2)).points == homs_oracle(chain(2).elements)
    B = product(chain(1), chain(1))
    assert len(spectrum(B)) == 2 and spectrum(B).points == homs_oracle(B.elements)
    trivial = FiniteMVAlgebra(0, [()])
    assert len(spectrum(trivial)) == 0


def test_coproduct_examples():
    X = coproduct_spectrum(chain(2), chain(2))
    assert X.points == {(0, HALF, 1, 0, HALF, 1)}
    assert len(coproduct_spectrum(FiniteMVAlgebra(0, [()]), chain(2))) == 0


def test_tensor_examples():
    X = tensor_spectrum(chain(2), chain(2))
    assert len(X.labels) == 9 and len(X) == 1
    (pt,) = X.points
    assert set(pt) == {0, QUARTER, HALF, 1}
    Y = tensor_spectrum(chain(1), product(chain(1), chain(2)))
    for pt in Y.points:
        p, q = Y.factors(pt)
        assert set(p) <= {0, 1}
        assert pt == tuple(a * b for a in p for b in q)


def test_tensor_relations():
    A, B = chain(2), chain(2)
    (pt,) = tensor_spectrum(A, B).points
    assert relations_satisfied(A, B, pt)
    assert split_bimorphism(A, B, pt) == ((0, HALF, 1), (0, HALF, 1))
    bad = pt[:-1] + (HALF,)  # r(1,1) is the last coordinate
    fails = tensor_relation_failures(A, B, bad)
    assert any(f.startswith("(1)") for f in fails)
    assert not relations_satisfied(A, B, bad)


def test_algebra_of_spectrum_examples():
    A = chain(2)
    assert len(algebra_of_spectrum(coproduct_spectrum(A, A))) == 3
    M = algebra_of_spectrum(tensor_spectrum(A, A))
    assert values(M) == [0, QUARTER, HALF, F(3, 4), 1]
    assert set(M.elements) == closure_oracle([(QUARTER,)], 1)
    empty = algebra_of_spectrum(coproduct_spectrum(FiniteMVAlgebra(0, [()]), A))
    assert len(empty) == 1


# -- properties ---------------------------------------------------------------

seeds = st.integers(0, 10**6)


@given(seeds)
def test_spectrum_points_are_homs(seed):
    A = random_algebra(random.Random(seed), 2, 3)
    X = spectrum(A)
    for p in X.points:
        assert is_hom(A, p)
    if len(A) <= 9:
        assert X.points == homs_oracle(A.elements)


@given(seeds)
def test_double_dual(seed):
    A = random_algebra(random.Random(seed))
    X = spectrum(A)
    assert len(spectrum(algebra_of_spectrum(X))) == len(X)
    assert cev_is_bijection(X)


@given(seeds)
def test_tensor_vs_coproduct(seed):
    rng = random.Random(seed)
    A, B = random_algebra(rng, 2, 3), random_algebra(rng, 2, 3)
    T, C = tensor_spectrum(A, B), coproduct_spectrum(A, B)
    assert len(T) == len(C) == len(spectrum(A)) * len(spectrum(B))
    for pt in T.points:
        assert relations_satisfied(A, B, pt)
        assert split_bimorphism(A, B, pt) == T.factors(pt)


@given(seeds)
def test_subalgebra_projection(seed):
    rng = random.Random(seed)
    A = random_algebra(rng)
    C = rng.sample(A.elements, rng.randint(1, min(3, len(A))))
    B = subalgebra_closure(C, A.ambient)
    assert set(B.elements) == closure_oracle(C, A.ambient)
    assert spectrum(B).project(C) == spectrum(A).project(C)

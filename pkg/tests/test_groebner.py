import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from digraph_ideals.groebner import (
    IdealBasis,
    NotGroebnerError,
    buchberger,
    contains,
    eliminate,
    is_groebner,
    reduce_basis,
    reduced_groebner,
    s_polynomial,
    same_ideal,
    saturate,
)
from digraph_ideals.poly import Polynomial, TermOrder, VarTable, reduce

from helpers import X3, orders3, polys3

X2 = VarTable(["x", "y"])


def ideal(texts, vars, order):
    return IdealBasis.of([Polynomial.parse(t, vars) for t in texts], vars, order)


def rendered_set(I):
    return set(I.rendered())


def test_textbook_grlex_basis():
    I = ideal(["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"], X2, TermOrder.grevlex(X2))
    assert rendered_set(reduced_groebner(I)) == {"x^2", "x*y", "y^2 - 1/2*x"}


def test_twisted_cubic_lex():
    I = ideal(["x^2 - y", "x^3 - z"], X3, TermOrder.lex(X3))
    assert rendered_set(reduced_groebner(I)) == {"x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2"}


def test_unit_and_zero_ideal():
    order = TermOrder.grevlex(X2)
    assert reduced_groebner(ideal(["x*y - 1", "x"], X2, order)).is_unit_ideal()
    assert reduced_groebner(IdealBasis.of([], X2, order)).is_zero_ideal()


def test_s_polynomial():
    order = TermOrder.lex(X2)
    f, g = Polynomial.parse("x^2 - y", X2), Polynomial.parse("x*y - 1", X2)
    assert s_polynomial(f, g, order) == Polynomial.parse("x - y^2", X2)


def test_eliminate_parametric_curve():
    T = VarTable(["t", "x", "y"])
    I = ideal(["x - t^2", "y - t^3"], T, TermOrder.grevlex(T))
    J = eliminate(I, ["t"])
    assert J.vars == X2
    assert J.rendered() == ["x^3 - y^2"]


def test_saturation_removes_component():
    I = ideal(["x*y", "x^2"], X2, TermOrder.grevlex(X2))
    J = saturate(I, Polynomial.variable(X2, "y"))
    assert J.rendered() == ["x"]


def test_reduce_basis_refuses_non_groebner():
    I = ideal(["x^2 - y", "x*y - 1"], X2, TermOrder.lex(X2))
    assert not is_groebner(I)
    with pytest.raises(NotGroebnerError):
        reduce_basis(I)


def test_same_ideal_across_generators():
    order = TermOrder.grevlex(X2)
    assert same_ideal(ideal(["x", "y"], X2, order), ideal(["x + y", "x - y"], X2, order))
    assert not same_ideal(ideal(["x"], X2, order), ideal(["x", "y"], X2, order))


small = st.lists(polys3(max_terms=3, max_exp=2), min_size=1, max_size=3).map(lambda fs: [f for f in fs if f])


def _bounded(fs):
    return fs and all(f.degree() <= 4 for f in fs)


@settings(max_examples=40, deadline=None)
@given(small, orders3())
def test_buchberger_output_is_groebner_and_same_ideal(fs, order):
    assume(_bounded(fs))
    I = IdealBasis.of(fs, X3, order)
    G = reduced_groebner(I)
    assert is_groebner(G)
    for f in fs:
        assert not reduce(f, G.generators, order)
    gb = buchberger(I)
    for g in G.generators:
        assert not reduce(g, gb.generators, order)


@settings(max_examples=30, deadline=None)
@given(small, orders3(), st.randoms(use_true_random=False))
def test_reduced_basis_ignores_generator_order(fs, order, rnd):
    assume(_bounded(fs))
    G = reduced_groebner(IdealBasis.of(fs, X3, order))
    shuffled = list(fs)
    rnd.shuffle(shuffled)
    assert reduced_groebner(IdealBasis.of(shuffled, X3, order)).as_set() == G.as_set()


@settings(max_examples=30, deadline=None)
@given(small, st.sampled_from(["x", "y", "z"]))
def test_elimination_drops_variable_and_stays_inside(fs, name):
    assume(_bounded(fs))
    order = TermOrder.grevlex(X3)
    I = IdealBasis.of(fs, X3, order)
    J = eliminate(I, [name])
    assert name not in J.vars
    full = reduced_groebner(I)
    for g in J.generators:
        assert contains(full, g.embed(X3))


@settings(max_examples=30, deadline=None)
@given(*[polys3(max_terms=2, max_exp=2)] * 3)
def test_saturation_recovers_quotient(f, g, h):
    assume(f and g and not f.is_constant())
    order = TermOrder.grevlex(X3)
    gens = [f * g] + ([h] if h else [])
    J = saturate(IdealBasis.of(gens, X3, order), f)
    assert contains(J, g)


def test_permutation_invariance_fixed_seed():
    order = TermOrder.lex(X3)
    texts = ["x^2 - y", "x^3 - z", "x*y*z - 1"]
    base = reduced_groebner(ideal(texts, X3, order)).as_set()
    rng = random.Random(7)
    for _ in range(10):
        rng.shuffle(texts)
        assert reduced_groebner(ideal(texts, X3, order)).as_set() == base

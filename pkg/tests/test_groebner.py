from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypersimplex_codes import (
    DomainError,
    GenPoly,
    ResourceError,
    SqFreePoly,
    TorusPointSet,
    buchberger,
    divide,
    evaluate,
    footprint,
    footprint_size,
    footprint_weight_check,
    genpoly_text,
    hypersimplex_basis,
    is_groebner_basis,
    make_field,
    parse_poly,
    torus_ideal_generators,
    weight_lower_bound,
)
from hypersimplex_codes.groebner import divides, grlex_compare, s_polynomial


@st.composite
def gen_polys(draw, field, nvars, max_deg=3, max_terms=5):
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars)
    terms = draw(st.dictionaries(exps, st.integers(0, field.q - 1), max_size=max_terms))
    return GenPoly(field, nvars, terms)


@st.composite
def sqfree(draw, q, s, d):
    F = make_field(q)
    basis = hypersimplex_basis(s, d)
    coeffs = draw(st.lists(st.integers(0, q - 1), min_size=len(basis), max_size=len(basis)))
    return SqFreePoly(F, s, dict(zip(basis, coeffs)))


def test_monomial_order():
    assert grlex_compare((1, 0), (0, 1)) == 1
    assert grlex_compare((0, 2), (1, 0)) == 1
    assert grlex_compare((1, 1), (1, 1)) == 0
    assert divides((1, 0, 2), (1, 1, 2)) and not divides((2, 0), (1, 5))


@pytest.mark.parametrize("q", [4, 5, 9])
@given(data=st.data())
def test_division_invariant(q, data):
    F = make_field(q)
    f = data.draw(gen_polys(F, 3, max_deg=4, max_terms=8))
    divisors = [g for g in data.draw(st.lists(gen_polys(F, 3), min_size=1, max_size=3)) if not g.is_zero()]
    if not divisors:
        return
    quotients, r = divide(f, divisors)
    total = r
    for qi, g in zip(quotients, divisors):
        total = total + qi * g
    assert total == f
    leads = [g.lm for g in divisors]
    assert not any(divides(lm, e) for e in r.terms for lm in leads)


@given(data=st.data())
def test_buchberger_produces_reduced_groebner_basis(data):
    F = make_field(5)
    gens = [g for g in data.draw(st.lists(gen_polys(F, 2, max_deg=3, max_terms=3), min_size=1, max_size=3))
            if not g.is_zero()]
    gens += torus_ideal_generators(F, 2)
    basis = buchberger(gens)
    assert is_groebner_basis(basis)
    assert all(g.lc == 1 for g in basis)
    for g in gens:
        assert divide(g, basis)[1].is_zero()
    # reduced bases are unique: input order does not matter
    assert set(buchberger(list(reversed(gens)))) == set(basis)


def test_known_footprints():
    F = make_field(4)
    IX = torus_ideal_generators(F, 3)
    assert footprint_size(buchberger(IX)) == 27
    two = torus_ideal_generators(F, 2) + [GenPoly.linear(F, [1, F.neg(1)])]
    assert footprint_size(buchberger(two)) == 3
    unit = buchberger(IX + [GenPoly.constant(F, 3)])
    assert footprint_size(unit) == 0
    with pytest.raises(DomainError):
        footprint([GenPoly.variable(F, 2, 1)])
    res = footprint(buchberger(two))
    assert sorted(res.standard_monomials) == [(0, 0), (0, 1), (0, 2)]


@pytest.mark.parametrize("q,s,d", [(4, 3, 1), (4, 3, 2), (5, 3, 2), (4, 4, 2), (4, 4, 3)])
@given(data=st.data())
def test_footprint_counts_zeros(q, s, d, data):
    f = data.draw(sqfree(q, s, d))
    if f.is_zero():
        return
    check = footprint_weight_check(f)
    n = (q - 1) ** s
    weight = evaluate(f, TorusPointSet(f.field, s)).weight
    # I_X + (f) is radical, so its footprint is exactly the zero count
    assert check.footprint == n - weight
    assert check.weight == weight and check.holds
    assert weight_lower_bound(f) <= weight


def test_worked_examples():
    F = make_field(4)
    check = footprint_weight_check(parse_poly("t1*t2 + t1*t3", F, 3))
    assert (check.weight, check.footprint, check.bound, check.lm_bound) == (18, 9, 18, 12)
    cubic = parse_poly("t1*t2*t3 + t1*t2*t4 + t1*t3*t4 + t2*t3*t4", F, 4)
    check = footprint_weight_check(cubic)
    assert (check.weight, check.footprint, check.bound, check.lm_bound) == (60, 21, 60, 24)
    assert check.equality


def test_s_polynomial_cancels_leading_terms():
    F = make_field(5)
    f = GenPoly(F, 2, {(2, 0): 1, (0, 1): 3})
    g = GenPoly(F, 2, {(1, 1): 2, (0, 0): 1})
    sp = s_polynomial(f, g)
    assert (2, 1) not in sp.terms


def test_guards_and_text():
    F = make_field(4)
    f = parse_poly("t1*t2", F, 8)
    with pytest.raises(ResourceError):
        footprint_weight_check(f, guard=100)
    g = GenPoly(F, 2, {(3, 0): 1, (1, 1): 2, (0, 0): 1})
    assert genpoly_text(g) == "t1^3 + 2*t1*t2 + 1"
    assert genpoly_text(GenPoly(F, 2)) == "0"


def test_evaluate_points_agrees_with_torus_evaluation():
    F = make_field(7)
    f = parse_poly("2*t1*t2 + 5*t2*t3", F, 3)
    X = TorusPointSet(F, 3)
    assert np.array_equal(GenPoly.from_sqfree(f).evaluate_points(X.points), evaluate(f, X).values)

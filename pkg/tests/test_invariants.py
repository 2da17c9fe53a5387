from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from cohann.invariants import (SemigroupCurve, delta_invariant, frobenius_number, is_symmetric, jacobian_ideal,
                               milnor_jung_check, milnor_number, semigroup_gaps, semigroup_row,
                               suspension_polynomial, suspension_report)
from cohann.ring import poly_parse


def brute_gaps(a, b):
    # everything representable below a generous bound, by enumeration
    bound = a * b
    rep = {i * a + j * b for i in range(bound) for j in range(bound) if i * a + j * b < bound}
    return [k for k in range(bound) if k not in rep]


@pytest.mark.parametrize("a,b,gaps", [(2, 3, [1]), (3, 5, [1, 2, 4, 7]), (2, 5, [1, 3]), (3, 4, [1, 2, 5])])
def test_gaps_examples(a, b, gaps):
    assert semigroup_gaps(SemigroupCurve(a, b)) == gaps == brute_gaps(a, b)


def test_frobenius_and_delta():
    c = SemigroupCurve(3, 5)
    assert frobenius_number(c) == 7
    assert delta_invariant(c) == 4
    assert is_symmetric(c)


@pytest.mark.parametrize("a,b", [(1, 3), (2, 4), (6, 9), (0, 5)])
def test_bad_exponents(a, b):
    with pytest.raises(ValueError):
        SemigroupCurve(a, b)


@pytest.mark.parametrize("f,mu", [("x^2+y^3", 2), ("x^3+y^5", 8), ("x", 0), ("x^2-y^2", 1), ("x^2+y^2+x*y^3", 1)])
def test_milnor_examples(f, mu):
    assert milnor_number(poly_parse(f, ("x", "y"))) == mu


def test_milnor_non_isolated_is_none():
    assert milnor_number(poly_parse("x^2*y", ("x", "y"))) is None


def test_milnor_rejects_unit_and_string():
    with pytest.raises(ValueError):
        milnor_number(poly_parse("1+x^2", ("x", "y")))
    with pytest.raises(TypeError):
        milnor_number("x^2")


def test_milnor_stable_under_square_suspension():
    c = SemigroupCurve(3, 4)
    base = milnor_number(suspension_polynomial(c, 0))
    assert base == 6
    assert milnor_number(suspension_polynomial(c, 1)) == base
    assert milnor_number(suspension_polynomial(c, 2)) == base


@pytest.mark.parametrize("mu,delta,r,ok", [(2, 1, 1, True), (1, 1, 2, True), (2, 1, 2, False), (0, 0, 1, True)])
def test_mj_check(mu, delta, r, ok):
    assert milnor_jung_check(mu, delta, r) is ok


def test_mj_check_negative():
    with pytest.raises(ValueError):
        milnor_jung_check(-1, 0, 1)


def test_suspension_report():
    rep = suspension_report((2, 3), 1)
    assert (rep.mu, rep.delta, rep.r, rep.mj_holds) == (2, 1, 1, True)
    js = rep.to_json()
    assert js["polynomial"] == "y^3+x^2+z1^2" and js["truncation"] == 10
    assert list(js["sources"]) == sorted(js["sources"])
    with pytest.raises(ValueError):
        suspension_report((2, 3), -1)


def test_jacobian_of_torus_polynomial():
    amb = ("x", "y", "z", "w")
    f = poly_parse("x*w^2-y*z", amb)
    assert [str(p) for p in jacobian_ideal(f)] == ["w^2", "-z", "-y", "2*x*w"]


def test_semigroup_row():
    row = semigroup_row(2, 5)
    assert row["gaps"] == [1, 3] and row["frobenius"] == 3
    assert row["mu"] == 4 and row["mj_holds"] and row["symmetric"]


coprime = st.tuples(st.integers(2, 9), st.integers(2, 9)).filter(lambda t: t[0] < t[1] and gcd(*t) == 1)


@settings(max_examples=25, deadline=None)
@given(coprime)
def test_semigroup_identities(ab):
    a, b = ab
    c = SemigroupCurve(a, b)
    gaps = semigroup_gaps(c)
    assert gaps == brute_gaps(a, b)
    assert frobenius_number(c) == a * b - a - b
    assert 2 * delta_invariant(c) == (a - 1) * (b - 1)
    assert is_symmetric(c)


@settings(max_examples=10, deadline=None)
@given(coprime.filter(lambda t: t[0] * t[1] <= 35))
def test_milnor_equals_twice_delta(ab):
    c = SemigroupCurve(*ab)
    assert milnor_number(suspension_polynomial(c, 0)) == 2 * delta_invariant(c)

import pytest
from hypothesis import given, strategies as st

from coxkl import LaurentPoly, P_to_h, ParityError, bar_dual, h_to_P

P = LaurentPoly.parse


def polys(span=6, bound=50):
    return st.dictionaries(
        st.integers(-span, span), st.integers(-bound, bound), max_size=6
    ).map(LaurentPoly)


def test_binomial_square():
    p = P("v^-1 + v")
    assert p * p == P("v^-2 + 2 + v^2")


def test_additive_identity():
    p = P("3v^-2 + v")
    assert p + LaurentPoly.zero() == p


def test_cancellation_drops_zero_terms():
    diff = P("v^2 + v^4") - P("v^2")
    assert diff == P("v^4")
    assert diff.exponents() == [4]


def test_scalar_and_shift():
    p = P("1 + v")
    assert 2 * p == P("2 + 2v")
    assert p.shifted(-1) == P("v^-1 + 1")


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(polys(), polys())
def test_bar_is_ring_homomorphism(a, b):
    assert bar_dual(a * b) == bar_dual(a) * bar_dual(b)
    assert bar_dual(a + b) == bar_dual(a) + bar_dual(b)


@given(polys())
def test_bar_is_involution(p):
    assert bar_dual(bar_dual(p)) == p


def test_bar_examples():
    assert bar_dual(P("v + v^3")) == P("v^-3 + v^-1")
    assert bar_dual(P("5")) == P("5")


def test_h_to_P_examples():
    assert h_to_P(P("v^2 + v^4"), 4) == LaurentPoly.parse("1 + q", "q")
    assert h_to_P(P("v^7"), 7) == LaurentPoly.one()
    assert h_to_P(LaurentPoly.one(), 0) == LaurentPoly.one()


@pytest.mark.parametrize("h,ldiff", [("v^3", 4), ("v^5", 4), ("1 + v", 1)])
def test_h_to_P_parity_errors(h, ldiff):
    with pytest.raises(ParityError):
        h_to_P(P(h), ldiff)


@given(st.integers(0, 8), st.dictionaries(st.integers(0, 8), st.integers(-9, 9), max_size=5))
def test_P_to_h_round_trip(extra, qdict):
    Pq = LaurentPoly(qdict)
    ldiff = extra + 2 * max(qdict, default=0)
    h = P_to_h(Pq, ldiff)
    assert h_to_P(h, ldiff) == Pq


@given(polys())
def test_canonical_text_round_trip(p):
    assert LaurentPoly.parse(p.canonical_str()) == p


def test_canonical_str_fixed_points():
    assert LaurentPoly.zero().canonical_str() == "0"
    assert P("0") == LaurentPoly.zero()
    assert LaurentPoly({-3: 1, -1: 2, 1: 2, 3: 1}).canonical_str() == "v^-3 + 2v^-1 + 2v + v^3"
    assert LaurentPoly({0: 1, 1: 1}).canonical_str("q") == "1 + q"
    assert LaurentPoly({2: -1, 0: 1}).canonical_str() == "1 - v^2"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        LaurentPoly.parse("v + w")
    with pytest.raises(ValueError):
        LaurentPoly.parse("++")


def test_coefficient_sum_and_queries():
    p = P("v^-2 + 2 + v^2")
    assert p.coefficient_sum() == 4
    assert p.coefficient(0) == 2 and p.coefficient(5) == 0
    assert p.degree() == 2 and p.valuation() == -2
    assert LaurentPoly.zero().degree() is None

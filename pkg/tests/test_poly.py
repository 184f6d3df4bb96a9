from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from klrelax.errors import DegreeExceedsK, NonIntegralCoefficient
from klrelax.poly import ONE, T, BiPoly, Poly, poly_gcd, reciprocal_transform, render

coeff_lists = st.lists(st.integers(-50, 50), max_size=7)


def test_sum():
    assert Poly([1, 2]) + Poly([-1, 1]) == Poly([0, 3])


def test_square():
    assert (ONE + T) * (ONE + T) == Poly([1, 2, 1])


def test_self_difference_is_empty():
    p = Poly([3, 0, 4])
    assert (p - p).coeffs == ()
    assert (p - p).to_list() == []


def test_canonical_form_strips_trailing_zeros():
    assert Poly([1, 0, 0]).coeffs == (1,)
    assert Poly([0, 0]).degree == -1


def test_reciprocal_examples():
    assert reciprocal_transform(Poly([1, 2]), 3) == Poly([0, 0, 2, 1])
    assert reciprocal_transform(ONE, 0) == ONE


def test_reciprocal_rejects_high_degree():
    with pytest.raises(DegreeExceedsK):
        reciprocal_transform(Poly([1, 1, 1]), 1)


def test_render():
    assert render(Poly([1, 11, 5])) == "1 + 11t + 5t^2"
    assert render(Poly()) == "0"


def test_to_int_rejects_fractions():
    with pytest.raises(NonIntegralCoefficient):
        Poly([Fraction(1, 2)]).to_int()


@given(coeff_lists, coeff_lists, coeff_lists)
def test_ring_axioms(a, b, c):
    a, b, c = Poly(a), Poly(b), Poly(c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a


@given(coeff_lists, st.integers(0, 10))
def test_reciprocal_is_involution(a, extra):
    p = Poly(a)
    k = max(p.degree, 0) + extra
    assert reciprocal_transform(reciprocal_transform(p, k), k) == p


@given(coeff_lists, coeff_lists.filter(lambda c: any(c)))
def test_division_identity(a, b):
    a, b = Poly(a), Poly(b)
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(coeff_lists.filter(lambda c: any(c)), coeff_lists, coeff_lists.filter(lambda c: any(c)))
def test_gcd_divides_both_and_is_divisible_by_common_factor(a, b, g):
    a, b, g = Poly(a), Poly(b), Poly(g)
    d = poly_gcd(a * g, b * g)
    assert d.leading() == 1
    assert ((a * g) % d).is_zero() and ((b * g) % d).is_zero()
    assert (d % g).is_zero()


@given(coeff_lists, st.integers(-5, 5))
def test_evaluation_is_ring_map(a, x):
    p = Poly(a)
    assert (p * p)(x) == p(x) ** 2


def test_bipoly_arithmetic_and_substitution():
    x = BiPoly.from_dict({(1, 0): 1})
    y = BiPoly.from_dict({(0, 1): 1})
    s = x + y
    assert (s * s).terms() == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert (s - s).to_list() == []
    assert s.substitute(Poly([1]), Poly([0, 1])) == Poly([1, 1])

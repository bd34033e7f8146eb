from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from greedycox.exact import (
    MAX_FIELD_N,
    CycReal,
    FieldError,
    embed_two_cos,
    exact_sign,
    make_field,
)


def test_field_for_label_two_is_rational_zero():
    F = make_field({2})
    assert (F.N, F.min_poly, F.degree) == (2, (0, 1), 1)
    assert F.theta() == 0


def test_field_for_label_three_is_rational_one():
    F = make_field({3})
    assert (F.N, F.min_poly, F.degree) == (3, (-1, 1), 1)
    assert F.theta() == 1


def test_field_for_labels_four_and_six():
    F = make_field({4, 6})
    assert F.N == 12
    assert F.min_poly == (1, 0, -4, 0, 1)


def test_empty_label_set_defaults_to_two():
    assert make_field(set()).N == 2


@pytest.mark.parametrize("N", [4, 5, 7, 8, 9, 10, 12, 15, 20, 24, 30])
def test_min_poly_matches_sympy(N):
    x = sympy.Symbol("x")
    want = sympy.Poly(sympy.minimal_polynomial(2 * sympy.cos(sympy.pi / N), x), x)
    F = make_field({N})
    assert tuple(int(c) for c in reversed(want.all_coeffs())) == F.min_poly
    assert F.degree == sympy.totient(2 * N) // 2


@pytest.mark.parametrize("N", [4, 5, 7, 12, 30])
def test_isolating_interval_contains_theta(N):
    F = make_field({N})
    lo, hi = F.isolating_interval
    assert lo < Fraction(math.cos(math.pi / N) * 2) < hi
    lo2, hi2 = F.refine(200)
    assert hi2 - lo2 <= Fraction(1, 2**200)
    with mpmath.workdps(80):
        theta = 2 * mpmath.cos(mpmath.pi / N)
        assert mpmath.mpf(lo2.numerator) / lo2.denominator <= theta <= mpmath.mpf(hi2.numerator) / hi2.denominator


def test_rejects_bad_labels():
    with pytest.raises(FieldError):
        make_field({1})
    with pytest.raises(FieldError):
        make_field({MAX_FIELD_N + 1})


def test_embed_two_cos_small_labels():
    F = make_field({4})
    assert embed_two_cos(2, F) == 0
    assert embed_two_cos(math.inf, F) == 2
    r2 = embed_two_cos(4, F)
    assert r2 * r2 == 2
    assert exact_sign(r2) == 1
    assert embed_two_cos(3, make_field({3})) == 1


def test_embed_two_cos_requires_divisibility():
    with pytest.raises(FieldError):
        embed_two_cos(5, make_field({4}))


# 2cos(2pi/m) written independently of the doubling identity
DOUBLE_ANGLE = {2: lambda F: F(-2), 3: lambda F: F(-1), 4: lambda F: F(0),
                5: lambda F: F.theta() - 1, 6: lambda F: F(1)}


@pytest.mark.parametrize("m", sorted(DOUBLE_ANGLE))
def test_square_of_two_cos_is_two_plus_two_cos_double(m):
    F = make_field({m})
    c = embed_two_cos(m, F)
    assert c * c == 2 + DOUBLE_ANGLE[m](F)


def test_sign_examples():
    F = make_field({4})
    theta = F.theta()
    assert exact_sign(F.zero()) == 0
    assert exact_sign(theta - 1) == 1
    assert exact_sign(1 - theta) == -1


def test_sign_of_tiny_difference():
    # continued-fraction convergents of sqrt2, one above (gap ~1.6e-12) and one below
    F = make_field({4})
    theta = F.theta()
    assert exact_sign(theta - Fraction(665857, 470832)) == -1
    assert exact_sign(theta - Fraction(1393, 985)) == 1


def test_division_keeps_exact_coefficients():
    F = make_field({8})
    x = (F.theta() * 3 - 1) / 2
    assert all(isinstance(c, (int, Fraction)) for c in x.coeffs)
    assert x * 2 == F.theta() * 3 - 1


def test_mixing_fields_raises():
    with pytest.raises(FieldError):
        make_field({4}).theta() + make_field({5}).theta()


def test_str_shows_polynomial_in_theta():
    F = make_field({5})
    assert str(F.theta()) == "θ"
    assert str(F.theta() * 2 - 1) == "2θ-1"
    assert str(F(Fraction(3, 2))) == "3/2"


# -- properties -------------------------------------------------------------------

FIELD_NS = [4, 5, 8, 12]
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def elements(draw, N=None):
    N = N or draw(st.sampled_from(FIELD_NS))
    F = make_field({N})
    coeffs = draw(st.lists(rationals, min_size=F.degree, max_size=F.degree))
    return CycReal(F, coeffs)


@st.composite
def triples(draw):
    N = draw(st.sampled_from(FIELD_NS))
    return draw(elements(N)), draw(elements(N)), draw(elements(N))


def _high_precision(x: CycReal):
    with mpmath.workdps(120):
        theta = 2 * mpmath.cos(mpmath.pi / x.field.N)
        return sum(mpmath.mpf(c.numerator) / c.denominator * theta**i
                   for i, c in enumerate(map(Fraction, x.coeffs)))


@settings(max_examples=150, deadline=None)
@given(triples())
def test_field_axioms(t):
    x, y, z = t
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y - y == x
    if not x.is_zero():
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@settings(max_examples=150, deadline=None)
@given(triples())
def test_sign_is_multiplicative_and_antisymmetric(t):
    x, y, _ = t
    assert exact_sign(x * y) == exact_sign(x) * exact_sign(y)
    assert exact_sign(x - y) == -exact_sign(y - x)
    assert (x < y) == (exact_sign(y - x) == 1)


@settings(max_examples=150, deadline=None)
@given(elements())
def test_sign_agrees_with_high_precision_value(x):
    v = _high_precision(x)
    if x.is_zero():
        assert v == 0
    else:
        assert exact_sign(x) == (1 if v > 0 else -1)


@settings(max_examples=100, deadline=None)
@given(triples())
def test_coefficients_never_become_floats(t):
    x, y, z = t
    for v in (x * y, x - z, (x + y) / 3, x * Fraction(1, 7), -y):
        assert all(isinstance(c, (int, Fraction)) for c in v.coeffs)
    if not z.is_zero():
        assert all(isinstance(c, (int, Fraction)) for c in (x / z).coeffs)

"""Exact rational-function coefficients in the genus variable."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hurwitzchow.coeffs import GenusPoly, GenusRational


def gp(*down):
    """Coefficients listed from the leading power down."""
    return GenusPoly(list(reversed(down)))


small_fracs = st.fractions(
    min_value=-20, max_value=20, max_denominator=6
)
polys = st.lists(small_fracs, min_size=0, max_size=5).map(GenusPoly)
nonzero_polys = polys.filter(bool)


def test_poly_basics():
    p = gp(2, 0, -3)
    assert p.degree == 2
    assert str(p) == "2*g^2 - 3"
    assert not p.is_const()
    assert gp(0) == GenusPoly([])
    assert not GenusPoly([])
    assert str(GenusPoly([])) == "0"


def test_poly_eval_consistency():
    p = gp(1, -2, 7)
    for g0 in (2, 3, 100):
        assert p.coeffs[0] + p.coeffs[1] * g0 + p.coeffs[2] * g0 * g0 == (
            Fraction(7) - 2 * g0 + g0 * g0
        )


@given(polys, polys, polys)
def test_poly_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert a + GenusPoly([]) == a
    assert a * GenusPoly.const(1) == a


@given(polys, nonzero_polys)
def test_poly_divmod_reconstructs(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree or not r


def test_rational_canonical_form():
    # content moves into the numerator; the denominator keeps only the
    # genuinely polynomial part, primitive with positive leading coefficient
    r = GenusRational.of(gp(2, 2), gp(1, 1))
    assert r == GenusRational.const(2)
    r = GenusRational.of(gp(-9, -3), gp(6, 2))
    assert r == GenusRational.const(Fraction(-3, 2))
    r = GenusRational.of(gp(1, 0), gp(-1, 1))
    assert r.den.coeffs[-1] > 0
    assert str(GenusRational.of(156, 5)) == "156/5"
    assert str(GenusRational.of(gp(156, 468), 5)) == "156/5*g + 468/5"


def test_rational_str_parenthesization():
    assert str(GenusRational.of(gp(1, 2), gp(1, 0))) == "(g + 2)/(g)"
    assert str(GenusRational.of(gp(-1), gp(1, 0))) == "(-1)/(g)"


@given(polys, nonzero_polys, polys, nonzero_polys)
def test_rational_field_ops(an, ad, bn, bd):
    a = GenusRational.of(an, ad)
    b = GenusRational.of(bn, bd)
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == GenusRational.const(0)
    if b:
        assert (a / b) * b == a


@given(polys, nonzero_polys)
def test_rational_json_round_trip(n, d):
    r = GenusRational.of(n, d)
    assert GenusRational.from_json(r.to_json()) == r


def test_rational_const_value_guard():
    with pytest.raises(ValueError):
        GenusRational.of(gp(1, 0), gp(1, 1)).const_value()


def test_pow_matches_repeated_mul():
    r = GenusRational.of(gp(1, 2), gp(2, 1))
    assert r**3 == r * r * r
    assert r**0 == GenusRational.const(1)

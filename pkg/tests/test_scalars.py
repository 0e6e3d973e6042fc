from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from app.core.errors import DivisionByZero
from app.core.scalars import (
    HALF,
    I_UNIT,
    ONE,
    ZERO,
    arith,
    as_scalar,
    conjugate,
    gauss,
    parse,
    sign,
    to_text,
    xi_power,
)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)


def test_canonical_text():
    """Scalars print as a/b+c/d*i with unit denominators omitted."""
    assert to_text(HALF) == "1/2+0*i"
    assert to_text(I_UNIT) == "0+1*i"
    assert to_text(gauss("-3/4", 2)) == "-3/4+2*i"


def test_parse_accepts_bare_rationals():
    """A plain rational parses as a real scalar."""
    assert parse("3") == gauss(3)
    assert parse("-1/2") == -HALF
    assert as_scalar("2/3+1*i") == gauss(Fraction(2, 3), 1)


def test_parse_rejects_garbage():
    """Malformed text is a ValueError."""
    with pytest.raises(ValueError):
        parse("one half")


@given(rationals, rationals)
def test_text_is_canonical(re_part, im_part):
    """to_text and parse are inverse on Q(i)."""
    a = gauss(re_part, im_part)
    assert parse(to_text(a)) == a


def test_powers_of_xi():
    """xi = i has order four."""
    assert xi_power(0) == ONE
    assert xi_power(1) == I_UNIT
    assert xi_power(2) == -ONE
    assert xi_power(7) == -I_UNIT
    assert xi_power(-1) == -I_UNIT
    assert I_UNIT * I_UNIT == -ONE


def test_sign():
    """sign(n) is (-1)^n."""
    assert sign(4) == ONE
    assert sign(3) == -ONE


def test_division_by_zero():
    """Exact division by zero raises instead of returning a float."""
    with pytest.raises(DivisionByZero):
        arith("div", ONE, ZERO)
    assert arith("div", ONE, gauss(2)) == HALF


@given(rationals, rationals)
def test_conjugate_norm_is_real(re_part, im_part):
    """a * conj(a) has zero imaginary part."""
    a = gauss(re_part, im_part)
    assert (a * conjugate(a)).y == 0

"""Exact scalars of the Gaussian rationals Q(i).

Every structure constant the engine meets (1/2, signs, powers of the
primitive fourth root of unity) lives in Q(i), so scalars are sympy's
``QQ_I`` elements: immutable, hashable, arbitrary precision and kept in
lowest terms by the ground field ``QQ``.
"""
import re
from fractions import Fraction
from typing import Union

from sympy.polys.domains import QQ, QQ_I

from app.core.errors import DivisionByZero

GaussRat = type(QQ_I.one)

ZERO = QQ_I.zero
ONE = QQ_I.one
HALF = QQ_I(QQ(1, 2), QQ(0))
I_UNIT = QQ_I(QQ(0), QQ(1))

RationalLike = Union[int, str, Fraction]

_TEXT = re.compile(r"^\s*(-?\d+(?:/\d+)?)\s*(?:\+\s*(-?\d+(?:/\d+)?)\s*\*\s*i)?\s*$")


def _rational(value) -> "QQ":
    if isinstance(value, str):
        value = Fraction(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    # already a ground-field element
    return QQ.convert(value)


def gauss(re_part: RationalLike = 0, im_part: RationalLike = 0) -> GaussRat:
    """Build ``re + im*i`` from ints, fractions or fraction strings."""
    return QQ_I(_rational(re_part), _rational(im_part))


def as_scalar(value) -> GaussRat:
    """Coerce ints, fractions, strings or Q(i) elements to a Q(i) element."""
    if isinstance(value, GaussRat):
        return value
    if isinstance(value, str):
        return parse(value)
    return gauss(value, 0)


def arith(op: str, a: GaussRat, b: GaussRat) -> GaussRat:
    """Exact field operation; ``op`` is one of add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero(f"{to_text(a)} div 0")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def xi_power(n: int) -> GaussRat:
    """Return xi**n for the primitive fourth root of unity xi = i."""
    return (ONE, I_UNIT, -ONE, -I_UNIT)[n % 4]


def sign(n: int) -> GaussRat:
    """Return (-1)**n."""
    return ONE if n % 2 == 0 else -ONE


def is_zero(a: GaussRat) -> bool:
    return not a


def conjugate(a: GaussRat) -> GaussRat:
    return QQ_I(a.x, -a.y)


def real_part(a: GaussRat) -> Fraction:
    return Fraction(int(a.x.numerator), int(a.x.denominator))


def imag_part(a: GaussRat) -> Fraction:
    return Fraction(int(a.y.numerator), int(a.y.denominator))


def _fraction_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_text(a: GaussRat) -> str:
    """Canonical form ``a/b+c/d*i`` (denominators of 1 omitted)."""
    return f"{_fraction_text(real_part(a))}+{_fraction_text(imag_part(a))}*i"


def parse(text: str) -> GaussRat:
    """Inverse of :func:`to_text`; a bare rational is accepted too."""
    match = _TEXT.match(text)
    if match is None:
        raise ValueError(f"not a Gaussian rational: {text!r}")
    re_text, im_text = match.group(1), match.group(2) or "0"
    return gauss(Fraction(re_text), Fraction(im_text))

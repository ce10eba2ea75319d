"""Rational functions over exact rationals, eagerly normalized.

Every ``RatFunc`` keeps numerator and denominator coprime with a monic
denominator, so two equal functions always have identical representations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .poly import Poly, poly_gcd

Operand = Union["RatFunc", Poly, Fraction, int]


class ZeroDenominatorError(ZeroDivisionError):
    """Denominator is identically zero."""


class PoleError(ArithmeticError):
    """Evaluation attempted at a pole."""

    def __init__(self, point: Fraction):
        super().__init__(f"pole at z = {point}")
        self.point = point


class RatFunc:
    """Quotient of two Polys, normalized on construction."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | Fraction | int, den: Poly | Fraction | int = 1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero:
            raise ZeroDenominatorError("denominator is zero")
        if num.is_zero:
            den = Poly([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.leading_coefficient()
            if lead != 1:
                inv = 1 / lead
                num, den = num * inv, den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    # -- queries ------------------------------------------------------------

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __call__(self, x: Fraction | int) -> Fraction:
        dx = self.den(x)
        if dx == 0:
            raise PoleError(Fraction(x))
        return self.num(x) / dx

    def derivative(self) -> RatFunc:
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: Operand) -> RatFunc:
        other = _coerce(other)
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: Operand) -> RatFunc:
        return self + (-_coerce(other))

    def __rsub__(self, other: Operand) -> RatFunc:
        return _coerce(other) - self

    def __mul__(self, other: Operand) -> RatFunc:
        other = _coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> RatFunc:
        other = _coerce(other)
        if other.num.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: Operand) -> RatFunc:
        return _coerce(other) / self

    # -- plumbing ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (Poly, Fraction, int)):
            other = _coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash(("RatFunc", self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.is_polynomial:
            return str(self.num * self.den.coefficient(0) ** -1)
        return f"({self.num}) / ({self.den})"


def _as_poly(x: Poly | Fraction | int) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (Fraction, int)):
        return Poly([x])
    raise TypeError(f"cannot interpret {type(x).__name__} as a polynomial")


def _coerce(x: Operand) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc(_as_poly(x))

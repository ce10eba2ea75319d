"""Truncated power series with explicit knowledge tracking.

A ``PowerSeries`` stores exactly ``order`` known coefficients (indices
0..order-1); everything from z**order on is unknown.  Arithmetic propagates
the number of known coefficients conservatively so a result never claims
more knowledge than its inputs justify.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

from .poly import Poly
from .ratfunc import PoleError, RatFunc

Scalar = Union[Fraction, int]


class PowerSeries:
    """Immutable truncated series: ``coeffs`` has length exactly ``order``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[Scalar], order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs)
        if order < 0:
            raise ValueError("order must be nonnegative")
        if len(cs) > order:
            raise ValueError("more coefficients than the stated order")
        cs.extend(Fraction(0) for _ in range(order - len(cs)))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    @classmethod
    def one(cls, order: int) -> PowerSeries:
        return cls([1] if order > 0 else [], order)

    @classmethod
    def identity(cls, order: int) -> PowerSeries:
        """The series z, known to the given order."""
        return cls([0, 1][:order], order)

    # -- queries ---------------------------------------------------------

    def coefficient(self, k: int) -> Fraction:
        if not 0 <= k < self.order:
            raise IndexError(f"coefficient {k} is beyond the known order {self.order}")
        return self.coeffs[k]

    def valuation(self) -> int:
        """Index of the first nonzero known coefficient, or ``order`` if none."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.order

    @property
    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return all(c == 0 for c in self.coeffs)

    def truncate(self, order: int) -> PowerSeries:
        if order > self.order:
            raise ValueError("cannot extend knowledge by truncation")
        return PowerSeries(self.coeffs[:order], order)

    # -- arithmetic: result order = min of operand orders -----------------

    def __add__(self, other: PowerSeries) -> PowerSeries:
        n = min(self.order, other.order)
        return PowerSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n)], n
        )

    def __neg__(self) -> PowerSeries:
        return PowerSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other: PowerSeries) -> PowerSeries:
        return self + (-other)

    def __mul__(self, other: PowerSeries | Scalar) -> PowerSeries:
        if isinstance(other, (Fraction, int)):
            return PowerSeries([c * other for c in self.coeffs], self.order)
        n = min(self.order, other.order)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a == 0:
                continue
            for j in range(min(other.order, n - i)):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def derivative(self) -> PowerSeries:
        n = max(self.order - 1, 0)
        return PowerSeries([i * self.coeffs[i] for i in range(1, self.order)], n)

    def compose(self, inner: PowerSeries) -> PowerSeries:
        """Substitute ``inner`` for the variable.

        Requires valuation(inner) >= 1 (a nonzero constant term would feed the
        unknown tail of the outer series into every coefficient).  The result
        carries order

            min(inner.order, outer.order * max(valuation(inner), 1))

        because the unknown tail of the outer series contributes only from
        z**(outer.order * valuation) on, while the unknown tail of the inner
        series perturbs the result from z**inner.order on.  In particular a
        valuation >= 2 inner with outer.order * valuation >= inner.order
        preserves the inner order, and composing with z of sufficient order
        is the identity.
        """
        if inner.order == 0:
            return PowerSeries([], 0)
        if inner.coeffs[0] != 0:
            raise ValueError("inner series must have zero constant term")
        val = max(inner.valuation(), 1)
        n = min(inner.order, self.order * val)
        if n == 0 or self.order == 0:
            return PowerSeries([], n)
        # Horner evaluation mod z**n; powers of the inner series gain
        # valuation, so only outer coefficients up to (n-1)//val contribute.
        k_max = self.order - 1 if val == 1 else min(self.order - 1, (n - 1) // val)
        inner_n = inner.truncate(n)
        acc = PowerSeries([self.coeffs[k_max]], n)
        for k in range(k_max - 1, -1, -1):
            acc = acc * inner_n + PowerSeries([self.coeffs[k]], n)
        return acc

    # -- plumbing ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("PowerSeries", self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"PowerSeries({list(self.coeffs)!r}, order={self.order})"


def series_from_ratfunc(r: RatFunc, order: int) -> PowerSeries:
    """Expand a rational function with den(0) != 0 to ``order`` coefficients."""
    den0 = r.den.coefficient(0)
    if den0 == 0:
        raise PoleError("rational function has a pole at 0; no series expansion")
    num, den = r.num, r.den
    out: list[Fraction] = []
    for n in range(order):
        s = num.coefficient(n)
        for k in range(1, min(n, den.degree) + 1):
            s -= den.coefficient(k) * out[n - k]
        out.append(s / den0)
    return PowerSeries(out, order)


def series_from_poly(p: Poly, order: int) -> PowerSeries:
    return PowerSeries([p.coefficient(i) for i in range(order)], order)

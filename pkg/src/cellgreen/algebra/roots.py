"""Exact real root isolation for rational polynomials.

Roots are carried as ``IsolatedRoot`` brackets: a rational interval
[low, high] whose interior contains exactly one distinct real root of the
defining polynomial, with endpoints that are never roots themselves.  All
decisions (counting, comparison, equality) are made exactly with Sturm
sequences and polynomial gcds; floating point appears only in diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .poly import Poly, poly_gcd, squarefree_decomposition, squarefree_part

DEFAULT_WIDTH = Fraction(1, 2**30)


class NoPositiveRootError(ValueError):
    """The polynomial has no root in (0, infinity)."""


def _positive_content_scaled(p: Poly) -> Poly:
    """Scale by a positive rational so coefficients are small coprime integers."""
    if p.is_zero:
        return p
    from math import gcd, lcm

    den = 1
    for c in p.coeffs:
        den = lcm(den, c.denominator)
    ints = [c.numerator * (den // c.denominator) for c in p.coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return Poly(Fraction(v, g) for v in ints)


@lru_cache(maxsize=256)
def sturm_chain(p: Poly) -> tuple[Poly, ...]:
    """Canonical Sturm sequence of p, content-normalized at each step."""
    chain = [_positive_content_scaled(p)]
    d = p.derivative()
    if not d.is_zero:
        chain.append(_positive_content_scaled(d))
        while True:
            rem = chain[-2] % chain[-1]
            if rem.is_zero:
                break
            chain.append(_positive_content_scaled(-rem))
    return tuple(chain)


def _sign_variations(chain: tuple[Poly, ...], x: Fraction) -> int:
    signs = []
    for q in chain:
        v = q(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Poly, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots of p in the open interval (lo, hi).

    Endpoints must not be roots; with that precondition the half-open Sturm
    count over (lo, hi] equals the open count.
    """
    if p.is_zero:
        raise ValueError("cannot count roots of the zero polynomial")
    if lo >= hi:
        return 0
    if p(lo) == 0 or p(hi) == 0:
        raise ValueError("interval endpoint is a root")
    chain = sturm_chain(p)
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def cauchy_bound(p: Poly) -> Fraction:
    """Strict upper bound on the absolute value of every root."""
    if p.degree < 0:
        raise ValueError("zero polynomial")
    lead = abs(p.leading_coefficient())
    m = max((abs(c) for c in p.coeffs[:-1]), default=Fraction(0))
    return 1 + m / lead


def _nonroot_near(p: Poly, x: Fraction, step: Fraction) -> Fraction:
    """A point close to x (within |step|) where p does not vanish."""
    if p(x) != 0:
        return x
    delta = step
    while True:
        for cand in (x - delta, x + delta):
            if p(cand) != 0:
                return cand
        delta = delta / 2


@dataclass(frozen=True)
class IsolatedRoot:
    """One real algebraic number: the unique root of ``defining`` in (low, high)."""

    low: Fraction
    high: Fraction
    defining: Poly
    multiplicity: int = 1

    @property
    def width(self) -> Fraction:
        return self.high - self.low

    def midpoint(self) -> Fraction:
        return (self.low + self.high) / 2

    def __float__(self) -> float:
        return float(self.midpoint())

    def refine(self, width: Fraction = DEFAULT_WIDTH) -> IsolatedRoot:
        """Shrink the bracket below the requested width by exact bisection."""
        p = self.defining
        lo, hi = self.low, self.high
        while hi - lo > width:
            m = (lo + hi) / 2
            if p(m) == 0:
                # The bracket's unique root is exactly m; any strict
                # sub-interval around m has non-root endpoints.
                delta = min(hi - m, m - lo, width) / 4
                return IsolatedRoot(m - delta, m + delta, p, self.multiplicity)
            if count_roots(p, lo, m) >= 1:
                hi = m
            else:
                lo = m
        return IsolatedRoot(lo, hi, p, self.multiplicity)

    def contains(self, q: Fraction) -> bool:
        return self.low <= q <= self.high


def _multiplicity_in_bracket(p: Poly, lo: Fraction, hi: Fraction) -> int:
    for factor, mult in squarefree_decomposition(p):
        if factor.degree > 0 and factor(lo) != 0 and factor(hi) != 0:
            if count_roots(factor, lo, hi) == 1:
                return mult
    return 1


def smallest_positive_root(
    p: Poly, width: Fraction = DEFAULT_WIDTH
) -> IsolatedRoot:
    """Isolate the least root of p in (0, infinity).

    Raises NoPositiveRootError when there is none.  The returned bracket has
    non-root rational endpoints, contains exactly one distinct root of p, and
    no root lies between 0 and its lower end.
    """
    if p.degree < 1:
        raise NoPositiveRootError("constant polynomial has no roots")
    # Positive roots are unaffected by stripping a power of z.
    val = p.valuation()
    if val > 0:
        p = Poly(p.coeffs[val:])
        if p.degree < 1:
            raise NoPositiveRootError("no positive root (pure power of z)")
    sf = squarefree_part(p)
    # The Cauchy bound strictly dominates every root, so it is non-root.
    hi = cauchy_bound(sf)
    while sf(hi) == 0:
        hi += 1
    lo = Fraction(0)
    total = count_roots(sf, lo, hi)
    if total == 0:
        raise NoPositiveRootError(f"no positive real root: {p}")
    # Invariant: no root in (0, lo], at least one in (lo, hi).
    while count_roots(sf, lo, hi) > 1 or hi - lo > width:
        m = _nonroot_near(sf, (lo + hi) / 2, (hi - lo) / 64)
        if not lo < m < hi:
            m = _nonroot_near(sf, (lo + hi) / 2, (hi - lo) / 1024)
        if count_roots(sf, lo, m) >= 1:
            hi = m
        else:
            lo = m
    mult = _multiplicity_in_bracket(p, lo, hi)
    return IsolatedRoot(lo, hi, p, mult)


def roots_equal(a: IsolatedRoot, b: IsolatedRoot) -> bool:
    """Exact equality of the two bracketed algebraic numbers.

    Decided via the gcd of the defining polynomials on the bracket
    intersection, never by numeric closeness.
    """
    lo = max(a.low, b.low)
    hi = min(a.high, b.high)
    if lo >= hi:
        return False
    g = poly_gcd(squarefree_part(a.defining), squarefree_part(b.defining))
    if g.degree < 1:
        return False
    # Endpoints of the intersection are bracket endpoints, hence non-roots
    # of their own defining polynomial, hence non-roots of the gcd.
    return count_roots(g, lo, hi) >= 1


def root_compare(a: IsolatedRoot, b: IsolatedRoot) -> int:
    """-1, 0, or 1 as a <, ==, > b (exact)."""
    if roots_equal(a, b):
        return 0
    while True:
        # Roots live strictly inside their brackets, so touching endpoints
        # still separate them once equality has been ruled out.
        if a.high <= b.low:
            return -1
        if b.high <= a.low:
            return 1
        a = a.refine(a.width / 4)
        b = b.refine(b.width / 4)


def compare_with_rational(a: IsolatedRoot, q: Fraction) -> int:
    """-1, 0, or 1 as the root compares with the rational q (exact)."""
    q = Fraction(q)
    while True:
        if q <= a.low:
            return 1
        if q >= a.high:
            return -1
        if a.defining(q) == 0:
            return 0  # q inside the bracket and a root: it is the root
        a = a.refine(a.width / 4)

"""Certified rational enclosures of the few irrational reals we compare.

Decisions in this package are made by trichotomy against an interval
[lo, hi] of exact rationals known to contain the real value, refining the
interval until the comparison resolves.  Two sources of irrationality occur:

  * x^(2/3) in the surface-geography bounds, enclosed by an integer cube
    root of x^2 * 2^(3p) (dyadic endpoints, width <= 2^-p);
  * pi^2 in the simplicial-volume bound, from correctly rounded pi
    (MPFR via gmpy2) squared in exact rational arithmetic.

Perfect cubes collapse to exact one-point enclosures, so comparisons against
them resolve by rational trichotomy at any precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2


@dataclass(frozen=True)
class Enclosure:
    """Exact rationals lo <= hi bracketing a real number."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        assert self.lo <= self.hi

    @classmethod
    def exact(cls, value) -> "Enclosure":
        value = Fraction(value)
        return cls(value, value)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __add__(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return Enclosure(self.lo + other.lo, self.hi + other.hi)
        other = Fraction(other)
        return Enclosure(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other) -> "Enclosure":
        return self + (-other if isinstance(other, Enclosure) else Fraction(-other))

    def __rsub__(self, other) -> "Enclosure":
        return (-self) + Fraction(other)

    def __mul__(self, scalar) -> "Enclosure":
        scalar = Fraction(scalar)
        if scalar >= 0:
            return Enclosure(self.lo * scalar, self.hi * scalar)
        return Enclosure(self.hi * scalar, self.lo * scalar)

    __rmul__ = __mul__

    # The enclosed real r satisfies lo <= r <= hi, so comparisons against a
    # rational q are certified one-sidedly.
    def certainly_lt(self, q) -> bool:
        return self.hi < q

    def certainly_gt(self, q) -> bool:
        return self.lo > q

    def certainly_le(self, q) -> bool:
        return self.hi <= q

    def certainly_ge(self, q) -> bool:
        return self.lo >= q


def icbrt(n: int) -> tuple[int, bool]:
    """Integer cube root: largest r with r^3 <= n, and whether r^3 == n."""
    if n < 0:
        raise ValueError("icbrt expects a nonnegative integer")
    root, exact = gmpy2.iroot(n, 3)
    return int(root), bool(exact)


def cbrt_sq(x: int, bits: int) -> Enclosure:
    """Enclosure of x^(2/3) for x >= 0, width at most 2^-bits.

    Exact when x is a perfect cube (x = c^3 gives x^(2/3) = c^2); x^2 is a
    perfect cube if and only if x is, so the dyadic path and the short-circuit
    agree.

    >>> cbrt_sq(8, 64)
    Enclosure(lo=Fraction(4, 1), hi=Fraction(4, 1))
    """
    if x < 0:
        raise ValueError("cbrt_sq expects a nonnegative integer")
    if bits < 1:
        raise ValueError("bits must be positive")
    root, exact = icbrt(x)
    if exact:
        return Enclosure.exact(root * root)
    scale = 1 << bits
    r, exact = icbrt(x * x << (3 * bits))
    if exact:  # unreachable for non-cube x, kept for completeness
        return Enclosure.exact(Fraction(r, scale))
    return Enclosure(Fraction(r, scale), Fraction(r + 1, scale))


def pi_squared(bits: int) -> Enclosure:
    """Enclosure of pi^2 from correctly rounded pi at the given precision."""
    if bits < 2:
        raise ValueError("bits must be at least 2")
    with gmpy2.context(precision=bits, round=gmpy2.RoundDown):
        lo = gmpy2.const_pi()
    with gmpy2.context(precision=bits, round=gmpy2.RoundUp):
        hi = gmpy2.const_pi()
    flo = Fraction(*lo.as_integer_ratio())
    fhi = Fraction(*hi.as_integer_ratio())
    # 0 < lo <= pi <= hi, and squaring of rationals is exact.
    return Enclosure(flo * flo, fhi * fhi)


def refine_until(decide, start_bits: int, cap_bits: int):
    """Run decide(bits) at doubling precision until it returns not-None.

    Returns (result, bits_used); (None, cap_bits) if the cap is reached
    without a decision.
    """
    bits = start_bits
    while True:
        result = decide(bits)
        if result is not None:
            return result, bits
        if bits >= cap_bits:
            return None, bits
        bits = min(2 * bits, cap_bits)

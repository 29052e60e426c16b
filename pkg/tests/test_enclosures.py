"""Certified interval arithmetic: containment oracles and refinement."""

from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from einstein4.enclosures import Enclosure, cbrt_sq, icbrt, pi_squared, refine_until

# 55 correctly rounded digits of pi^2; accurate far beyond any precision the
# tests below compare against, and computed outside this package.
PI_SQUARED_REF = Fraction(Decimal(
    "9.869604401089358618834490999876151135313699407240790626"
))

rationals = st.fractions(
    min_value=Fraction(-1000), max_value=Fraction(1000), max_denominator=1000
)


def make_enclosure(point, below, above):
    """An enclosure guaranteed to contain `point`."""
    return Enclosure(point - abs(below), point + abs(above)), point


class TestEnclosure:
    def test_exact(self):
        enc = Enclosure.exact(Fraction(3, 7))
        assert enc.is_exact and enc.width == 0
        assert enc.lo == enc.hi == Fraction(3, 7)

    def test_reversed_endpoints_rejected(self):
        with pytest.raises(AssertionError):
            Enclosure(Fraction(1), Fraction(0))

    @given(rationals, rationals, rationals, rationals, rationals, rationals)
    def test_sum_contains_sum_of_points(self, p, a, b, q, c, d):
        first, p = make_enclosure(p, a, b)
        second, q = make_enclosure(q, c, d)
        total = first + second
        assert total.lo <= p + q <= total.hi
        assert total.width == first.width + second.width

    @given(rationals, rationals, rationals, rationals)
    def test_negation_and_subtraction(self, p, a, b, q):
        enc, p = make_enclosure(p, a, b)
        neg = -enc
        assert neg.lo <= -p <= neg.hi
        diff = enc - q
        assert diff.lo <= p - q <= diff.hi
        rdiff = q - enc
        assert rdiff.lo <= q - p <= rdiff.hi

    @given(rationals, rationals, rationals, rationals)
    def test_scalar_multiplication_both_signs(self, p, a, b, scalar):
        enc, p = make_enclosure(p, a, b)
        scaled = enc * scalar
        assert scaled.lo <= p * scalar <= scaled.hi
        assert scaled.width == enc.width * abs(scalar)
        assert (scalar * enc).lo == scaled.lo  # __rmul__

    def test_certified_comparisons_are_one_sided(self):
        enc = Enclosure(Fraction(1), Fraction(2))
        assert enc.certainly_lt(3) and not enc.certainly_lt(2)
        assert enc.certainly_le(2) and not enc.certainly_le(Fraction(3, 2))
        assert enc.certainly_gt(0) and not enc.certainly_gt(1)
        assert enc.certainly_ge(1) and not enc.certainly_ge(Fraction(3, 2))
        # a point inside the interval is undecidable in both directions
        mid = Fraction(3, 2)
        assert not enc.certainly_lt(mid) and not enc.certainly_gt(mid)


class TestIcbrt:
    @given(st.integers(0, 10**40))
    def test_floor_root(self, n):
        root, exact = icbrt(n)
        assert root**3 <= n < (root + 1) ** 3
        assert exact == (root**3 == n)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            icbrt(-1)


class TestCbrtSq:
    @given(st.integers(0, 10**6))
    def test_perfect_cubes_are_exact(self, t):
        enc = cbrt_sq(t**3, 64)
        assert enc.is_exact
        assert enc.lo == Fraction(t * t)

    @given(st.integers(0, 10**12), st.integers(4, 512))
    def test_containment_and_width(self, x, bits):
        enc = cbrt_sq(x, bits)
        # lo <= x^(2/3) <= hi iff lo^3 <= x^2 <= hi^3 (all nonnegative)
        assert enc.lo >= 0
        assert enc.lo**3 <= x * x <= enc.hi**3
        assert enc.width <= Fraction(1, 2**bits)

    @given(st.integers(2, 10**9), st.integers(4, 128))
    def test_refinement_nests(self, x, bits):
        coarse = cbrt_sq(x, bits)
        fine = cbrt_sq(x, 2 * bits)
        assert coarse.lo <= fine.lo and fine.hi <= coarse.hi

    def test_small_values(self):
        assert cbrt_sq(0, 16).lo == 0
        assert cbrt_sq(1, 16).lo == 1
        two = cbrt_sq(2, 64)  # 2^(2/3) = 1.5874...
        assert Fraction(15, 10) < two.lo < two.hi < Fraction(16, 10)

    def test_validation(self):
        with pytest.raises(ValueError):
            cbrt_sq(-1, 64)
        with pytest.raises(ValueError):
            cbrt_sq(5, 0)


class TestPiSquared:
    def test_contains_reference_at_moderate_precision(self):
        # the reference has about 183 bits; containment is only meaningful
        # while the enclosure is wider than the reference's own error
        for bits in (8, 16, 32, 64, 128):
            enc = pi_squared(bits)
            assert enc.lo < PI_SQUARED_REF < enc.hi

    def test_width_bound(self):
        # pi carries at most one ulp of slack per endpoint: width of pi is
        # <= 2^(3-bits), and squaring multiplies it by hi + lo < 8
        for bits in (16, 64, 256, 1024):
            assert pi_squared(bits).width <= Fraction(1, 2 ** (bits - 6))

    def test_refinement_nests(self):
        previous = pi_squared(8)
        for bits in (16, 32, 64, 128, 256, 512):
            current = pi_squared(bits)
            assert previous.lo <= current.lo and current.hi <= previous.hi
            previous = current

    def test_agrees_with_mpmath(self):
        mpmath = pytest.importorskip("mpmath")
        with mpmath.workdps(45):
            independent = Fraction(Decimal(mpmath.nstr(mpmath.pi**2, 40)))
        enc = pi_squared(64)
        # the midpoint carries the enclosure's own half-width (about 1e-18)
        assert abs(independent - (enc.lo + enc.hi) / 2) < Fraction(1, 10**17)

    def test_validation(self):
        with pytest.raises(ValueError):
            pi_squared(1)


class TestRefineUntil:
    def test_resolves_at_sufficient_precision(self):
        calls = []

        def decide(bits):
            calls.append(bits)
            return "done" if bits >= 256 else None

        result, bits = refine_until(decide, 64, 4096)
        assert result == "done" and bits == 256
        assert calls == [64, 128, 256]

    def test_cap_reached(self):
        result, bits = refine_until(lambda bits: None, 64, 512)
        assert result is None and bits == 512

    def test_cap_not_exceeded(self):
        calls = []

        def decide(bits):
            calls.append(bits)
            return None

        refine_until(decide, 100, 300)
        assert calls == [100, 200, 300]
        assert max(calls) <= 300

    def test_immediate_decision(self):
        result, bits = refine_until(lambda b: b, 64, 4096)
        assert result == 64 and bits == 64

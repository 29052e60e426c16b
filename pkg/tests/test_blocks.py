"""Exact arithmetic of building blocks and connected sums."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from einstein4.blocks import (
    CP2,
    K3,
    S4,
    ChenSurface,
    CP2Bar,
    Custom,
    Invariants,
    ManifoldExpr,
    ParityViolationError,
    S1xS3,
    block_invariants,
    connected_sum_invariants,
    is_admissible,
    mkl_decomposition,
    mkl_expression,
    mkl_invariants,
)

BASIC_BLOCKS = [K3(), CP2(), CP2Bar(), S1xS3(), S4()]


class TestBlockInvariants:
    def test_standard_blocks(self):
        assert block_invariants(K3()) == Invariants(24, -16, 0)
        assert block_invariants(CP2()) == Invariants(3, 1, 0)
        assert block_invariants(CP2Bar()) == Invariants(3, -1, 0)
        assert block_invariants(S1xS3()) == Invariants(0, 0, 1)
        assert block_invariants(S4()) == Invariants(2, 0, 0)

    def test_chen_surface_decoding(self):
        inv = block_invariants(ChenSurface(2_000_000, 11_000_000))
        assert inv == Invariants(13_000_000, -5_000_000, 0)

    def test_k3_equals_chen_2_0(self):
        # chi_h = 2, c1^2 = 0 decodes to the K3 numbers.
        assert block_invariants(ChenSurface(2, 0)) == block_invariants(K3())

    @given(st.integers(1, 10**9), st.integers(-10**9, 10**9))
    def test_chen_decoding_inverts_noether(self, x, y):
        inv = block_invariants(ChenSurface(x, y))
        assert inv.two_e_plus_3sigma == y
        assert inv.chi_h == Fraction(x)
        # e + sigma = 4x, so parity always holds
        assert (inv.e + inv.sigma) % 4 == 0

    def test_custom_parity_rejected(self):
        with pytest.raises(ParityViolationError):
            Custom("bad", 1, 2, 0)
        with pytest.raises(ParityViolationError):
            Invariants(1, 2, 0)

    def test_custom_name_validated(self):
        with pytest.raises(ValueError):
            Custom("no spaces", 0, 0, 0)
        with pytest.raises(ValueError):
            Custom("", 0, 0, 0)

    def test_chen_needs_positive_x(self):
        with pytest.raises(ValueError):
            ChenSurface(0, 5)

    def test_b1_nonnegative(self):
        with pytest.raises(ValueError):
            Invariants(2, 0, -1)


class TestDerivedQuantities:
    def test_b2_split_simply_connected(self):
        assert Invariants(24, -16, 0).b2_plus_minus() == (3, 19)
        assert Invariants(3, 1, 0).b2_plus_minus() == (1, 0)
        assert Invariants(2, 0, 0).b2_plus_minus() == (0, 0)

    def test_b2_split_refused_for_positive_b1(self):
        assert Invariants(0, 0, 1).b2_plus_minus() is None

    def test_b2_split_refused_when_negative(self):
        # formally b2 = -2: not a closed simply connected manifold
        assert Invariants(0, 0, 0).b2_plus_minus() is None

    def test_chi_h_can_be_half_integral(self):
        assert Invariants(4, 2, 0).chi_h == Fraction(3, 2)


class TestConnectedSums:
    def test_worked_example(self):
        expr = ManifoldExpr.of(K3(), (CP2Bar(), 2), S1xS3())
        assert connected_sum_invariants(expr) == Invariants(24, -18, 1)

    def test_single_block_sum_is_identity(self):
        expr = ManifoldExpr.of(K3())
        assert connected_sum_invariants(expr) == block_invariants(K3())

    def test_s4_is_neutral(self):
        with_s4 = ManifoldExpr.of(K3(), (S4(), 3))
        assert connected_sum_invariants(with_s4) == block_invariants(K3())

    def test_empty_expression_rejected(self):
        with pytest.raises(ValueError):
            ManifoldExpr(())

    def test_zero_multiplicity_rejected(self):
        with pytest.raises(ValueError):
            ManifoldExpr(((K3(), 0),))


@st.composite
def blocks(draw):
    choice = draw(st.integers(0, 6))
    if choice < 5:
        return BASIC_BLOCKS[choice]
    if choice == 5:
        return ChenSurface(draw(st.integers(1, 10**6)),
                           draw(st.integers(-10**6, 10**6)))
    e = draw(st.integers(-50, 50))
    sigma_parity = e % 2
    sigma = 2 * draw(st.integers(-25, 25)) + sigma_parity
    return Custom(draw(st.sampled_from(["A", "B", "N_1", "xq7"])),
                  e, sigma, draw(st.integers(0, 5)))


@st.composite
def expressions(draw):
    terms = draw(st.lists(
        st.tuples(blocks(), st.integers(1, 4)), min_size=1, max_size=6))
    return ManifoldExpr(tuple(terms))


class TestSumProperties:
    @given(expressions())
    def test_euler_signature_parity(self, expr):
        inv = connected_sum_invariants(expr)
        assert (inv.e + inv.sigma) % 2 == 0
        assert is_admissible(inv.e, inv.sigma)

    @given(expressions(), st.randoms())
    def test_order_independence(self, expr, rng):
        shuffled = list(expr.summands)
        rng.shuffle(shuffled)
        assert (connected_sum_invariants(ManifoldExpr(tuple(shuffled)))
                == connected_sum_invariants(expr))

    @given(expressions())
    def test_sum_against_pairwise_fold(self, expr):
        # fold two at a time with the two-manifold rule as an oracle
        invs = []
        for block, mult in expr.summands:
            invs.extend([block_invariants(block)] * mult)
        acc = invs[0]
        for inv in invs[1:]:
            acc = Invariants(acc.e + inv.e - 2, acc.sigma + inv.sigma,
                             acc.b1 + inv.b1)
        assert acc == connected_sum_invariants(expr)


class TestMkl:
    @given(blocks(), st.integers(0, 200), st.integers(0, 200))
    def test_closed_form_matches_expansion(self, base, k, l):
        # oracle: expand the expression and sum block by block
        closed = mkl_invariants(block_invariants(base), k, l)
        expanded = connected_sum_invariants(mkl_expression(base, k, l))
        assert closed == expanded

    def test_worked_examples(self):
        assert mkl_invariants(Invariants(24, -16, 0), 2, 1) == Invariants(24, -18, 1)
        assert (mkl_invariants(Invariants(13_000_000, -5_000_000, 0), 1, 2)
                == Invariants(12_999_997, -5_000_001, 2))

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            mkl_invariants(Invariants(24, -16, 0), -1, 0)
        with pytest.raises(ValueError):
            mkl_invariants(Invariants(24, -16, 0), 0, -1)

    def test_decomposition_roundtrip(self):
        base = ChenSurface(3, 5)
        assert mkl_decomposition(mkl_expression(base, 4, 2)) == (base, 4, 2)
        assert mkl_decomposition(mkl_expression(base, 0, 0)) == (base, 0, 0)

    def test_decomposition_ignores_s4(self):
        expr = ManifoldExpr.of(K3(), (S4(), 2), (CP2Bar(), 3))
        assert mkl_decomposition(expr) == (K3(), 3, 0)

    def test_decomposition_rejects_ambiguity(self):
        assert mkl_decomposition(ManifoldExpr.of(K3(), CP2())) is None
        assert mkl_decomposition(ManifoldExpr.of((K3(), 2))) is None
        assert mkl_decomposition(ManifoldExpr.of((CP2Bar(), 2))) is None


class TestAdmissibility:
    @given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
    def test_matches_parity(self, e, sigma):
        assert is_admissible(e, sigma) == ((e % 2) == (sigma % 2))

    def test_examples(self):
        assert is_admissible(0, 0)
        assert is_admissible(4, 2)
        assert is_admissible(-3, 7)
        assert not is_admissible(1, 0)


def test_random_sums_stay_admissible():
    rng = random.Random(20260823)
    for _ in range(300):
        terms = []
        for _ in range(rng.randint(1, 5)):
            pick = rng.randrange(6)
            if pick < 5:
                block = BASIC_BLOCKS[pick]
            else:
                x = rng.randint(1, 1000)
                block = ChenSurface(x, rng.randint(-1000, 1000))
            terms.append((block, rng.randint(1, 3)))
        inv = connected_sum_invariants(ManifoldExpr(tuple(terms)))
        assert is_admissible(inv.e, inv.sigma)

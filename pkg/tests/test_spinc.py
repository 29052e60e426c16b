"""Spin^c bookkeeping: dimension shifts, blow-ups, S1xS3 summands."""

import pytest
from hypothesis import given, strategies as st

from einstein4.blocks import ChenSurface, Invariants, block_invariants
from einstein4.spinc import (
    CanonicalMismatchError,
    NonIntegralDimensionError,
    SpinCDescriptor,
    SWStatus,
    blow_up,
    c1plus_sq_lower_bound,
    canonical_spinc_of_kahler,
    formal_dimension,
    s1s3_sum,
)


@st.composite
def invariants(draw):
    e = draw(st.integers(-500, 500))
    sigma = 2 * draw(st.integers(-250, 250)) + (e % 2)
    return Invariants(e, sigma, draw(st.integers(0, 10)))


@st.composite
def descriptors_with_invariants(draw):
    inv = draw(invariants())
    # keep c1_sq = 2e + 3 sigma (mod 4) so d is defined
    c1_sq = inv.two_e_plus_3sigma + 4 * draw(st.integers(-100, 100))
    status = draw(st.sampled_from(list(SWStatus)))
    holonomy = 1 if (status is SWStatus.B_CLASS
                     and draw(st.booleans())) else None
    return SpinCDescriptor(c1_sq, status, holonomy_count=holonomy), inv


class TestFormalDimension:
    def test_examples(self):
        assert formal_dimension(0, Invariants(24, -16, 0)) == 0
        # one S1xS3 summand on K3's canonical class: d goes up by one
        assert formal_dimension(0, Invariants(22, -16, 1)) == 1

    def test_non_integral_rejected(self):
        with pytest.raises(NonIntegralDimensionError):
            formal_dimension(1, Invariants(24, -16, 0))

    @given(descriptors_with_invariants())
    def test_always_integral_on_compatible_inputs(self, pair):
        desc, inv = pair
        assert 4 * desc.d(inv) == desc.c1_sq - inv.two_e_plus_3sigma


class TestCanonical:
    def test_chen_surface_with_positive_deg_K(self):
        inv = block_invariants(ChenSurface(2_000_000, 11_000_000))
        desc = canonical_spinc_of_kahler(inv, 11_000_000, deg_K_positive=True)
        assert desc.status is SWStatus.NONTRIVIAL_SW
        assert desc.c1_sq == 11_000_000
        assert desc.d(inv) == 0

    def test_k3_has_no_positive_deg_K(self):
        inv = Invariants(24, -16, 0)
        desc = canonical_spinc_of_kahler(inv, 0, deg_K_positive=False)
        assert desc.status is SWStatus.UNKNOWN
        assert desc.d(inv) == 0

    def test_mismatched_c1_sq_rejected(self):
        with pytest.raises(CanonicalMismatchError):
            canonical_spinc_of_kahler(Invariants(24, -16, 0), 4, True)

    @given(invariants())
    def test_canonical_dimension_is_zero(self, inv):
        desc = canonical_spinc_of_kahler(inv, inv.two_e_plus_3sigma, True)
        assert desc.d(inv) == 0


class TestBlowUp:
    @given(descriptors_with_invariants(), st.integers(0, 100))
    def test_dimension_invariant(self, pair, k):
        desc, inv = pair
        new_desc, new_inv = blow_up(desc, inv, k)
        assert new_desc.d(new_inv) == desc.d(inv)
        assert new_desc.c1_sq == desc.c1_sq - k
        assert new_desc.status is desc.status
        assert (new_inv.e, new_inv.sigma) == (inv.e + k, inv.sigma - k)

    def test_zero_is_identity(self):
        desc = SpinCDescriptor(0, SWStatus.NONTRIVIAL_SW)
        inv = Invariants(24, -16, 0)
        assert blow_up(desc, inv, 0) == (desc, inv)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            blow_up(SpinCDescriptor(0, SWStatus.UNKNOWN), Invariants(2, 0, 0), -1)


class TestS1xS3Sum:
    def base(self):
        inv = block_invariants(ChenSurface(3, 5))
        return canonical_spinc_of_kahler(inv, 5, True), inv

    def test_status_chain_from_nontrivial(self):
        desc, inv = self.base()
        d1, i1 = s1s3_sum(desc, inv, 1)
        assert d1.status is SWStatus.B_CLASS and d1.holonomy_count == 1
        d2, i2 = s1s3_sum(d1, i1, 1)
        assert d2.status is SWStatus.B_CLASS_TRIVIAL_SW
        assert d2.holonomy_count is None
        d3, i3 = s1s3_sum(d2, i2, 1)
        assert d3.status is SWStatus.B_CLASS and d3.holonomy_count is None
        d4, _ = s1s3_sum(d3, i3, 1)
        assert d4.status is SWStatus.B_CLASS

    def test_direct_l_matches_chain(self):
        desc, inv = self.base()
        assert s1s3_sum(desc, inv, 2)[0].status is SWStatus.B_CLASS_TRIVIAL_SW
        assert s1s3_sum(desc, inv, 3)[0].status is SWStatus.B_CLASS
        assert s1s3_sum(desc, inv, 9)[0].status is SWStatus.B_CLASS

    @given(descriptors_with_invariants(), st.integers(1, 8), st.integers(1, 8))
    def test_splitting_the_summands_agrees(self, pair, a, b):
        desc, inv = pair
        via_split = s1s3_sum(*s1s3_sum(desc, inv, a), b)
        direct = s1s3_sum(desc, inv, a + b)
        assert via_split[0].status is direct[0].status
        assert via_split[0].holonomy_count == direct[0].holonomy_count
        assert via_split[0].c1_sq == direct[0].c1_sq
        assert via_split[1] == direct[1]

    @given(descriptors_with_invariants(), st.integers(1, 50))
    def test_dimension_shift(self, pair, l):
        desc, inv = pair
        new_desc, new_inv = s1s3_sum(desc, inv, l)
        assert new_desc.d(new_inv) == desc.d(inv) + l
        assert new_desc.c1_sq == desc.c1_sq
        assert new_inv.b1 == inv.b1 + l

    def test_unknown_stays_unknown(self):
        desc = SpinCDescriptor(0, SWStatus.UNKNOWN)
        out, _ = s1s3_sum(desc, Invariants(24, -16, 0), 5)
        assert out.status is SWStatus.UNKNOWN

    def test_requires_positive_l(self):
        with pytest.raises(ValueError):
            s1s3_sum(SpinCDescriptor(0, SWStatus.UNKNOWN), Invariants(2, 0, 0), 0)

    @given(descriptors_with_invariants(), st.integers(0, 30), st.integers(1, 30))
    def test_commutes_with_blow_up(self, pair, k, l):
        desc, inv = pair
        first_blow = s1s3_sum(*blow_up(desc, inv, k), l)
        first_sum = blow_up(*s1s3_sum(desc, inv, l), k)
        assert first_blow[0].status is first_sum[0].status
        assert first_blow[0].holonomy_count == first_sum[0].holonomy_count
        assert first_blow[0].c1_sq == first_sum[0].c1_sq
        assert first_blow[1] == first_sum[1]
        assert first_blow[0].d(first_blow[1]) == first_sum[0].d(first_sum[1])


class TestMisc:
    def test_c1plus_lower_bound(self):
        assert c1plus_sq_lower_bound(Invariants(24, -16, 0)) == 0
        assert c1plus_sq_lower_bound(
            block_invariants(ChenSurface(2_000_000, 11_000_000))) == 11_000_000

    def test_serialization_keys(self):
        inv = block_invariants(ChenSurface(3, 5))
        desc = canonical_spinc_of_kahler(inv, 5, True)
        desc, inv = s1s3_sum(desc, inv, 1)
        data = desc.to_json(inv)
        assert set(data) == {"c1_sq", "status", "d", "provenance", "holonomy_count"}
        assert data["status"] == "BClass"
        assert data["d"] == 1
        assert data["holonomy_count"] == 1
        assert all(isinstance(p, str) for p in data["provenance"])

    def test_serialization_omits_unset_holonomy(self):
        desc = SpinCDescriptor(0, SWStatus.UNKNOWN)
        assert "holonomy_count" not in desc.to_json(Invariants(24, -16, 0))

"""Spin^c structures and Seiberg-Witten status bookkeeping.

A spin^c structure enters as its characteristic number c1^2 together with a
conservative status describing what is known about its Seiberg-Witten
solutions on the manifold at hand:

    NontrivialSW     a structure with nonzero SW count (a mod-2 count of 1);
    BClass           no SW count is claimed, but every metric still admits an
                     irreducible solution for some member of a family of
                     structures (the strong conclusion that survives
                     S^1 x S^3 summands);
    BClassTrivialSW  BClass and additionally the plain SW count vanishes;
    Unknown          nothing is claimed.

The expected (formal) dimension of the solution moduli space is

    d = (c1^2 - (2e + 3 sigma)) / 4.

Blowing up (summing with reversed-orientation CP2) lowers c1^2 by one per
point while 2e + 3 sigma drops equally, so d is unchanged and conclusions
persist.  Summing with S^1 x S^3 keeps c1^2 and raises d by one per summand;
the first summand turns a nonzero SW count into a one-parameter holonomy
family counted once (BClass, holonomy_count = 1), the second forces the plain
count to vanish (BClassTrivialSW), and further summands stay BClass.

Statuses only ever move up the knowledge lattice for a fixed manifold;
the transitions above describe the *new* manifold after a sum.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from .blocks import Invariants, mkl_invariants


class NonIntegralDimensionError(ValueError):
    """c1^2 - (2e + 3 sigma) must be divisible by 4."""


class CanonicalMismatchError(ValueError):
    """The canonical spin^c structure must have c1^2 = 2e + 3 sigma."""


class SWStatus(enum.Enum):
    UNKNOWN = "Unknown"
    NONTRIVIAL_SW = "NontrivialSW"
    B_CLASS = "BClass"
    B_CLASS_TRIVIAL_SW = "BClassTrivialSW"

    @property
    def is_b_class(self) -> bool:
        return self in (SWStatus.B_CLASS, SWStatus.B_CLASS_TRIVIAL_SW)


def formal_dimension(c1_sq: int, inv: Invariants) -> int:
    """Expected moduli dimension (c1^2 - (2e + 3 sigma)) / 4.

    >>> formal_dimension(0, Invariants(e=0, sigma=0, b1=2))
    0
    >>> formal_dimension(0, Invariants(e=-2, sigma=0, b1=1))
    1
    """
    defect = c1_sq - inv.two_e_plus_3sigma
    if defect % 4 != 0:
        raise NonIntegralDimensionError(
            f"c1^2 - (2e + 3 sigma) = {defect} is not divisible by 4"
        )
    return defect // 4


@dataclass(frozen=True)
class SpinCDescriptor:
    """c1^2 plus SW status and an audit trail of how it was derived.

    holonomy_count = 1 marks the state reached by exactly one S^1 x S^3
    summand past a structure with nonzero SW count: the solutions form a
    circle of holonomies counted once, which is what forces the plain count
    to die on the next summand.
    """

    c1_sq: int
    status: SWStatus
    provenance: tuple[str, ...] = ()
    holonomy_count: int | None = None

    def d(self, inv: Invariants) -> int:
        return formal_dimension(self.c1_sq, inv)

    def to_json(self, inv: Invariants) -> dict:
        data = {
            "c1_sq": self.c1_sq,
            "status": self.status.value,
            "d": self.d(inv),
            "provenance": list(self.provenance),
        }
        if self.holonomy_count is not None:
            data["holonomy_count"] = self.holonomy_count
        return data


def canonical_spinc_of_kahler(
    inv: Invariants, c1_sq: int, deg_K_positive: bool
) -> SpinCDescriptor:
    """Canonical spin^c structure of a Kahler surface with b1 = 0.

    Its first Chern class is the anticanonical class, so c1^2 must equal
    2e + 3 sigma; anything else is a bookkeeping mistake and is rejected.
    When the canonical bundle has positive degree the SW count of the
    canonical structure is 1; otherwise all solutions may be reducible and
    nothing is claimed.
    """
    if c1_sq != inv.two_e_plus_3sigma:
        raise CanonicalMismatchError(
            f"canonical c1^2 must be 2e + 3 sigma = {inv.two_e_plus_3sigma}, "
            f"got {c1_sq}"
        )
    if deg_K_positive:
        return SpinCDescriptor(
            c1_sq,
            SWStatus.NONTRIVIAL_SW,
            ("canonical class of a Kahler surface with deg K > 0: "
             "irreducible solution count 1, formal dimension 0",),
        )
    return SpinCDescriptor(
        c1_sq,
        SWStatus.UNKNOWN,
        ("canonical class of a Kahler surface with deg K <= 0: "
         "only reducible solutions guaranteed, status unknown",),
    )


def blow_up(
    desc: SpinCDescriptor, inv: Invariants, k: int
) -> tuple[SpinCDescriptor, Invariants]:
    """Sum k reversed-orientation CP2 summands onto the manifold.

    The structure picks up one exceptional class per point: c1^2 drops by k,
    2e + 3 sigma drops by k, the formal dimension and the SW status are
    unchanged.  (Preserving the status assumes the base conclusion came from
    a Kahler-type argument that survives blow-ups; the provenance records
    this.)  k = 0 is the identity.
    """
    if k < 0:
        raise ValueError(f"blow-up count must be nonnegative, got {k}")
    if k == 0:
        return desc, inv
    new_desc = replace(
        desc,
        c1_sq=desc.c1_sq - k,
        provenance=desc.provenance + (
            f"blow-up at {k} point(s) of a Kahler-type base: c1 gains the "
            f"exceptional classes, c1^2 -= {k}, status and d preserved",
        ),
    )
    return new_desc, mkl_invariants(inv, k, 0)


def _status_after_sums(
    status: SWStatus, holonomy: int | None, l: int
) -> tuple[SWStatus, int | None, str]:
    """Closed form of iterating the single-summand transition l times.

    One summand past a nonzero SW count leaves a circle of holonomies counted
    once (BClass, holonomy_count = 1); the next summand cancels the plain
    count (BClassTrivialSW); after that the status settles at BClass.
    """
    if status is SWStatus.NONTRIVIAL_SW:
        if l == 1:
            return (SWStatus.B_CLASS, 1,
                    "one S1xS3 summand on a nonzero SW count: solutions "
                    "persist as a circle of holonomies counted once; "
                    "B-class, d += 1")
        if l == 2:
            return (SWStatus.B_CLASS_TRIVIAL_SW, None,
                    "two S1xS3 summands on a nonzero SW count: the "
                    "circle-counted family cancels the plain SW count; "
                    "B-class with trivial SW, d += 2")
        return (SWStatus.B_CLASS, None,
                f"{l} S1xS3 summands on a nonzero SW count: B-class "
                f"persists beyond the second summand, d += {l}")
    if status is SWStatus.B_CLASS and holonomy == 1:
        if l == 1:
            return (SWStatus.B_CLASS_TRIVIAL_SW, None,
                    "S1xS3 summand on the circle-counted family: the plain "
                    "SW count cancels; B-class with trivial SW, d += 1")
        return (SWStatus.B_CLASS, None,
                f"{l} S1xS3 summands on the circle-counted family: B-class "
                f"persists, d += {l}")
    if status is SWStatus.B_CLASS_TRIVIAL_SW or status is SWStatus.B_CLASS:
        return (SWStatus.B_CLASS, None if status is SWStatus.B_CLASS_TRIVIAL_SW
                else holonomy,
                f"{l} further S1xS3 summand(s) on a B-class manifold: "
                f"B-class persists, d += {l}")
    return (SWStatus.UNKNOWN, holonomy,
            f"{l} S1xS3 summand(s) on unknown status: nothing claimed, "
            f"d += {l}")


def s1s3_sum(
    desc: SpinCDescriptor, inv: Invariants, l: int
) -> tuple[SpinCDescriptor, Invariants]:
    """Sum l copies of S^1 x S^3 onto the manifold.

    c1^2 is unchanged while 2e + 3 sigma drops by 4 per summand, so the
    formal dimension rises by exactly l.  The status transition is the l-fold
    iterate of the single-summand step: applying the operation twice with
    l = 1 agrees with applying it once with l = 2, and so on.
    """
    if l < 1:
        raise ValueError(f"S1xS3 summand count must be >= 1, got {l}")
    status, holonomy, note = _status_after_sums(desc.status, desc.holonomy_count, l)
    desc = replace(
        desc,
        status=status,
        holonomy_count=holonomy,
        provenance=desc.provenance + (note,),
    )
    return desc, mkl_invariants(inv, 0, l)


def c1plus_sq_lower_bound(base: Invariants) -> int:
    """Lower bound for (c1+)^2 over all metrics after blow-ups.

    For the canonical-class structures of a Kahler base of general type, the
    self-dual part of c1 satisfies (c1+)^2 >= 2e + 3 sigma of the *base*,
    whatever the metric and however many points were blown up.  The returned
    integer is that certified bound.
    """
    return base.two_e_plus_3sigma

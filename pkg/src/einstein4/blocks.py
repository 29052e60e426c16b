"""Building blocks for closed oriented 4-manifolds and their connected sums.

Everything here is exact integer bookkeeping.  A closed oriented 4-manifold
enters the calculator through three numbers: the Euler characteristic e, the
signature sigma, and the first Betti number b1.  Connected sum is additive in
sigma and b1, while each sum operation glues out a pair of 4-balls and costs
two from the Euler characteristic:

    e(M # N) = e(M) + e(N) - 2.

Minimal complex surfaces of general type are described by their holomorphic
Euler characteristic x = chi_h and self-intersection y = c1^2 of the canonical
class; Noether's identities decode these to topology:

    e = 12x - y,   sigma = y - 8x.

For every block handled here e + sigma is divisible by 2 (in fact by 4 for
almost-complex blocks); the parity is preserved by connected sums, which is
why realizable (e, sigma) targets must satisfy e = sigma (mod 2).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction


class ParityViolationError(ValueError):
    """e + sigma must be even for every block in the calculator."""


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Invariants:
    """Exact (e, sigma, b1) triple of a closed oriented 4-manifold.

    >>> k3 = Invariants(e=24, sigma=-16, b1=0)
    >>> k3.two_e_plus_3sigma
    0
    >>> k3.chi_h
    Fraction(2, 1)
    """

    e: int
    sigma: int
    b1: int = 0

    def __post_init__(self) -> None:
        if (self.e + self.sigma) % 2 != 0:
            raise ParityViolationError(
                f"e + sigma must be even, got e={self.e}, sigma={self.sigma}"
            )
        if self.b1 < 0:
            raise ValueError(f"b1 must be nonnegative, got {self.b1}")

    @property
    def two_e_plus_3sigma(self) -> int:
        # 2e + 3sigma = c1^2 of any almost-complex structure on the manifold.
        return 2 * self.e + 3 * self.sigma

    @property
    def chi_h(self) -> Fraction:
        """(e + sigma) / 4, the holomorphic Euler characteristic when complex."""
        return Fraction(self.e + self.sigma, 4)

    def b2_plus_minus(self) -> tuple[int, int] | None:
        """(b2+, b2-) when determined, else None.

        Only for b1 = 0: then b2 = e - 2 and the intersection form splits as
        b2 = b2+ + b2-, sigma = b2+ - b2-.  With b1 > 0 the Betti numbers are
        not determined by (e, sigma, b1) alone, so we refuse to guess.
        """
        if self.b1 != 0:
            return None
        b2 = self.e - 2
        plus, minus = (b2 + self.sigma) // 2, (b2 - self.sigma) // 2
        if plus < 0 or minus < 0:
            return None
        return plus, minus


@dataclass(frozen=True)
class ChenSurface:
    """Minimal general-type surface given by chi_h = x and c1^2 = y.

    region_checked records whether a geography check certified (x, y) inside
    the existence region; construction outside the region is permitted but
    stays flagged False.
    """

    x: int
    y: int
    region_checked: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if self.x <= 0:
            raise ValueError(f"chi_h of a surface block must be positive, got {self.x}")


@dataclass(frozen=True)
class K3:
    """The K3 surface: simply connected, e = 24, sigma = -16."""


@dataclass(frozen=True)
class CP2:
    """The complex projective plane."""


@dataclass(frozen=True)
class CP2Bar:
    """CP2 with reversed orientation; summing one on is a blow-up."""


@dataclass(frozen=True)
class S1xS3:
    """S^1 x S^3; summing one on adds a free factor to pi_1."""


@dataclass(frozen=True)
class S4:
    """The 4-sphere, the identity for connected sum."""


@dataclass(frozen=True)
class Custom:
    """Escape hatch: a named block with declared invariants."""

    name: str
    e: int
    sigma: int
    b1: int

    def __post_init__(self) -> None:
        if not _NAME_RE.match(self.name):
            raise ValueError(f"custom block name must be an identifier, got {self.name!r}")
        if (self.e + self.sigma) % 2 != 0:
            raise ParityViolationError(
                f"custom block {self.name}: e + sigma must be even, "
                f"got e={self.e}, sigma={self.sigma}"
            )
        if self.b1 < 0:
            raise ValueError(f"custom block {self.name}: b1 must be nonnegative")


Block = ChenSurface | K3 | CP2 | CP2Bar | S1xS3 | S4 | Custom


def block_invariants(block: Block) -> Invariants:
    """Exact invariants of a single block.

    >>> block_invariants(K3())
    Invariants(e=24, sigma=-16, b1=0)
    >>> block_invariants(ChenSurface(2_000_000, 11_000_000))
    Invariants(e=13000000, sigma=-5000000, b1=0)
    """
    match block:
        case ChenSurface(x=x, y=y):
            # Noether decoding: e = 12x - y, sigma = y - 8x, simply connected.
            return Invariants(12 * x - y, y - 8 * x, 0)
        case K3():
            return Invariants(24, -16, 0)
        case CP2():
            return Invariants(3, 1, 0)
        case CP2Bar():
            return Invariants(3, -1, 0)
        case S1xS3():
            return Invariants(0, 0, 1)
        case S4():
            return Invariants(2, 0, 0)
        case Custom(e=e, sigma=sigma, b1=b1):
            return Invariants(e, sigma, b1)
    raise TypeError(f"not a building block: {block!r}")


@dataclass(frozen=True)
class ManifoldExpr:
    """A connected sum as an ordered list of (block, multiplicity) summands.

    Invariants are independent of the summand order; the order only matters
    for reproducing the expression as written.
    """

    summands: tuple[tuple[Block, int], ...]

    def __post_init__(self) -> None:
        if not self.summands:
            raise ValueError("a connected sum needs at least one summand")
        for block, mult in self.summands:
            if mult < 1:
                raise ValueError(f"multiplicity must be >= 1, got {mult} for {block!r}")

    @classmethod
    def of(cls, *blocks: Block | tuple[Block, int]) -> "ManifoldExpr":
        items = []
        for item in blocks:
            if isinstance(item, tuple):
                items.append(item)
            else:
                items.append((item, 1))
        return cls(tuple(items))

    @property
    def block_count(self) -> int:
        return sum(mult for _, mult in self.summands)

    def block_multiset(self) -> Counter:
        return _multiset(self)

    def invariants(self) -> Invariants:
        return connected_sum_invariants(self)


def _multiset(expr: ManifoldExpr) -> Counter:
    counts: Counter = Counter()
    for block, mult in expr.summands:
        counts[block] += mult
    return counts


def connected_sum_invariants(expr: ManifoldExpr) -> Invariants:
    """Invariants of the connected sum of all summands.

    Each of the n - 1 sum operations removes a pair of glued 4-balls, so
    e = sum(e_i) - 2(n - 1) while sigma and b1 are plain sums.

    >>> connected_sum_invariants(ManifoldExpr.of(K3(), (CP2Bar(), 2), S1xS3()))
    Invariants(e=24, sigma=-18, b1=1)
    """
    n = expr.block_count
    e_total = sigma_total = b1_total = 0
    for block, mult in expr.summands:
        inv = block_invariants(block)
        e_total += mult * inv.e
        sigma_total += mult * inv.sigma
        b1_total += mult * inv.b1
    return Invariants(e_total - 2 * (n - 1), sigma_total, b1_total)


def is_admissible(e: int, sigma: int) -> bool:
    """Whether (e, sigma) can be hit by sums of blocks: e = sigma (mod 2)."""
    return (e - sigma) % 2 == 0


def mkl_invariants(base: Invariants, k: int, l: int) -> Invariants:
    """Invariants of base # k CP2bar # l (S^1 x S^3), in closed form.

    Expanding the sum costs 2 per extra block, which telescopes to

        e = e0 + k - 2l,   sigma = sigma0 - k,   b1 = b10 + l.

    >>> mkl_invariants(Invariants(24, -16, 0), 2, 1)
    Invariants(e=24, sigma=-18, b1=1)
    """
    if k < 0 or l < 0:
        raise ValueError(f"blow-up and S1xS3 counts must be nonnegative, got k={k}, l={l}")
    return Invariants(base.e + k - 2 * l, base.sigma - k, base.b1 + l)


def mkl_expression(base: Block, k: int, l: int) -> ManifoldExpr:
    """The expression base # k CP2bar # l (S^1 x S^3) with zero counts dropped."""
    summands: list[tuple[Block, int]] = [(base, 1)]
    if k > 0:
        summands.append((CP2Bar(), k))
    if l > 0:
        summands.append((S1xS3(), l))
    return ManifoldExpr(tuple(summands))


def mkl_decomposition(expr: ManifoldExpr) -> tuple[Block, int, int] | None:
    """Recognize expr as base # k CP2bar # l (S^1 x S^3), ignoring S4 factors.

    Returns (base, k, l), or None when there is no unique such base.
    """
    counts = _multiset(expr)
    k = counts.pop(CP2Bar(), 0)
    l = counts.pop(S1xS3(), 0)
    counts.pop(S4(), None)  # identity summands
    if len(counts) != 1:
        return None
    (base, mult), = counts.items()
    if mult != 1:
        return None
    return base, k, l

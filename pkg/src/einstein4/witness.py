"""Constructive search for non-Einstein manifolds with prescribed (e, sigma).

Given an admissible target (m, n), meaning m = n mod 2, the solver produces
connected sums

    M(x, y, k, l)  =  Chen(x, y) # k*~CP2 # l*(S1xS3)

whose invariants hit (e, sigma, b1) = (m, n, l) exactly and which carry a
certified Einstein obstruction.  Writing x0' = (m + n)/2 and y0 = 2m + 3n,
the target invariants force, for a surface block with chi_h = x:

    l = 2x - x0'          (matches e after the S1xS3 summands),
    k = y - 8x - n        (matches sigma after the blow-ups),

and the blow-up budget telescopes to the identity k + 4l = y - y0.  The
obstruction hypothesis 57 (k + 4l) >= 25 y therefore reduces to the linear
test 32 y >= 57 y0.  A witness needs

    y in the geography window at x   (the surface exists, deg K > 0),
    y >= 8x + n                      (k >= 0),
    32 y >= 57 y0                    (the obstruction fires),
    l >= 1                           (b1 = l distinguishes witnesses, and the
                                      S1xS3 summand activates the B-class
                                      conclusion the obstruction rests on).

The solver scans x upward from a certified starting point (below it some
necessary condition fails, so nothing is missed), takes the smallest
admissible y at each x, and emits one witness per x; successive witnesses
have strictly increasing l = 2x - x0', so their first Betti numbers differ
and the underlying manifolds are pairwise non-homeomorphic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .blocks import (
    ChenSurface,
    Invariants,
    ManifoldExpr,
    block_invariants,
    connected_sum_invariants,
    is_admissible,
    mkl_decomposition,
    mkl_expression,
    mkl_invariants,
)
from .geography import ChenParams, ChenRegion, Region
from .obstructions import (
    Rule,
    Verdict,
    VerdictStatus,
    hitchin_thorpe,
    lebrun_generalized,
)
from .parser import format_expr
from .spinc import SpinCDescriptor, blow_up, canonical_spinc_of_kahler, s1s3_sum

PROBE_CAP = 1_000_000


class NotAdmissibleError(ValueError):
    """(e, sigma) targets need e = sigma (mod 2)."""

    def __init__(self, m: int, n: int):
        super().__init__(
            f"target (e, sigma) = ({m}, {n}) is not admissible: "
            f"e - sigma = {m - n} is odd"
        )


class SearchExhaustedError(RuntimeError):
    """The probe budget ran out before enough witnesses were found."""

    def __init__(self, cap: int, l_reached: int, found: int):
        self.cap = cap
        self.l_reached = l_reached
        self.found = found
        super().__init__(
            f"search exhausted after {cap} probes (reached l = {l_reached}, "
            f"found {found} witness(es))"
        )


@dataclass(frozen=True)
class Witness:
    """A certified non-Einstein manifold hitting the target (e, sigma)."""

    expr: ManifoldExpr
    chen_x: int
    chen_y: int
    k: int
    l: int
    invariants: Invariants
    spinc: SpinCDescriptor
    verdicts: tuple[Verdict, ...]
    chen_C_used: int

    def to_json(self) -> dict:
        return {
            "expr": format_expr(self.expr),
            "chen_x": self.chen_x,
            "chen_y": self.chen_y,
            "k": self.k,
            "l": self.l,
            "e": self.invariants.e,
            "sigma": self.invariants.sigma,
            "b1": self.invariants.b1,
            "verdicts": [v.to_json() for v in self.verdicts],
            "chen_C_used": self.chen_C_used,
        }


def _ceil_div(num: int, den: int) -> int:
    assert den > 0
    return -((-num) // den)


def _scan_origin(m: int, n: int, region: Region) -> int:
    """First x worth probing: below it some necessary condition fails."""
    x0_prime = (m + n) // 2
    y0 = 2 * m + 3 * n
    x_for_l = x0_prime // 2 + 1  # least x with l = 2x - x0' >= 1
    y_floor = _ceil_div(57 * y0, 32)
    return max(1, x_for_l, region.scan_start(n, y_floor))


def feasible_l_start(m: int, n: int, region: Region | None = None) -> int:
    """The l value at which the scan begins; no smaller l can give a witness.

    Each necessary condition (window nonempty, k >= 0 attainable below the
    upper boundary, the obstruction floor below the upper boundary, l >= 1)
    rules out every x below a certified point; l = 2x - x0' translates the
    largest of these into a starting l.
    """
    if not is_admissible(m, n):
        raise NotAdmissibleError(m, n)
    region = region or ChenRegion()
    x0_prime = (m + n) // 2
    return 2 * _scan_origin(m, n, region) - x0_prime


def _witness_at(x: int, y: int, m: int, n: int, region: Region) -> Witness:
    x0_prime = (m + n) // 2
    k = y - 8 * x - n
    l = 2 * x - x0_prime
    assert k >= 0 and l >= 1
    surface = ChenSurface(x, y, region_checked=True)
    base_inv = block_invariants(surface)
    expr = mkl_expression(surface, k, l)

    final_inv = mkl_invariants(base_inv, k, l)
    assert final_inv == Invariants(m, n, l)

    # deg K > 0 holds for every surface the geography certifies.
    desc = canonical_spinc_of_kahler(base_inv, y, deg_K_positive=True)
    base_status = desc.status
    desc, inv = blow_up(desc, base_inv, k)
    desc, inv = s1s3_sum(desc, inv, l)
    assert inv == final_inv and desc.status.is_b_class

    obstruction = lebrun_generalized(base_inv, base_status, k, l)
    assert obstruction.status is VerdictStatus.OBSTRUCTED
    return Witness(
        expr=expr,
        chen_x=x,
        chen_y=y,
        k=k,
        l=l,
        invariants=final_inv,
        spinc=desc,
        verdicts=(obstruction, hitchin_thorpe(final_inv)),
        chen_C_used=region.threshold_c,
    )


def solve(
    m: int,
    n: int,
    count: int = 1,
    region: Region | None = None,
    params: ChenParams | None = None,
    probe_cap: int = PROBE_CAP,
) -> list[Witness]:
    """Find `count` certified witnesses for the target (e, sigma) = (m, n).

    One witness per surviving x, smallest certified y first, x ascending;
    the returned witnesses have strictly increasing l (hence pairwise
    distinct b1).  Raises NotAdmissibleError on a parity mismatch and
    SearchExhaustedError if the probe budget ends first.
    """
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    if not is_admissible(m, n):
        raise NotAdmissibleError(m, n)
    region = region or ChenRegion(params or ChenParams())
    x0_prime = (m + n) // 2
    y0 = 2 * m + 3 * n
    y_obstruction_floor = _ceil_div(57 * y0, 32)

    witnesses: list[Witness] = []
    x = _scan_origin(m, n, region)
    probes = 0
    while len(witnesses) < count:
        if probes >= probe_cap:
            raise SearchExhaustedError(probe_cap, 2 * (x - 1) - x0_prime,
                                       len(witnesses))
        probes += 1
        window = region.y_window(x)
        if window is not None:
            y = max(window[0], 8 * x + n, y_obstruction_floor)
            if y <= window[1]:
                witnesses.append(_witness_at(x, y, m, n, region))
        x += 1
    return witnesses


def check_witness(
    witness: Witness, m: int, n: int, region: Region | None = None
) -> list[str]:
    """Re-derive every claim of the witness from scratch; list what fails.

    Deliberately takes the other road everywhere: invariants by expanding the
    sum block by block instead of the closed form, region membership through
    the membership test instead of the window, the obstruction re-evaluated
    from the decoded surface numbers.
    """
    region = region or ChenRegion()
    reasons: list[str] = []
    x, y, k, l = witness.chen_x, witness.chen_y, witness.k, witness.l

    if l < 1:
        reasons.append(f"l = {l} but at least one S1xS3 summand is required")
    if k < 0:
        reasons.append(f"k = {k} is negative")

    decomposition = mkl_decomposition(witness.expr)
    if decomposition is None:
        reasons.append("expression is not base # k*~CP2 # l*(S1xS3)")
        return reasons
    base, expr_k, expr_l = decomposition
    if not isinstance(base, ChenSurface) or (base.x, base.y) != (x, y):
        reasons.append(f"expression base {base!r} does not match "
                       f"Chen({x},{y})")
    if (expr_k, expr_l) != (k, l):
        reasons.append(f"expression has (k, l) = ({expr_k}, {expr_l}), "
                       f"witness claims ({k}, {l})")

    decision = region.decide(x, y)
    if not decision.is_inside:
        reasons.append(f"({x}, {y}) not certified inside the region: "
                       f"{decision.value.value}")

    inv = connected_sum_invariants(witness.expr)
    if (inv.e, inv.sigma) != (m, n):
        reasons.append(f"recomputed (e, sigma) = ({inv.e}, {inv.sigma}), "
                       f"target ({m}, {n})")
    if inv.b1 != l:
        reasons.append(f"recomputed b1 = {inv.b1} but l = {l}; the "
                       f"distinctness certificate needs b1 = l")
    if inv != witness.invariants:
        reasons.append(f"stored invariants {witness.invariants} disagree with "
                       f"recomputed {inv}")

    if k + 4 * l != y - (2 * m + 3 * n):
        reasons.append(f"budget identity fails: k + 4l = {k + 4 * l}, "
                       f"y - (2m + 3n) = {y - (2 * m + 3 * n)}")

    # Spin^c chain, recomputed; tolerate failure and report.
    try:
        base_inv = Invariants(12 * x - y, y - 8 * x, 0)
        desc = canonical_spinc_of_kahler(base_inv, y, deg_K_positive=True)
        base_status = desc.status
        desc, chain_inv = blow_up(desc, base_inv, k)
        if l >= 1:
            desc, chain_inv = s1s3_sum(desc, chain_inv, l)
        if not desc.status.is_b_class:
            reasons.append(f"spin^c chain ends with status "
                           f"{desc.status.value}, not a B-class")
        if desc.c1_sq != y - k:
            reasons.append(f"chain c1^2 = {desc.c1_sq}, expected y - k = {y - k}")
        if desc.d(chain_inv) != l:
            reasons.append(f"chain formal dimension {desc.d(chain_inv)}, "
                           f"expected l = {l}")
        verdict = lebrun_generalized(base_inv, base_status, k, l)
        if verdict.status is not VerdictStatus.OBSTRUCTED:
            reasons.append("re-evaluated obstruction is "
                           f"{verdict.status.value}, not Obstructed")
    except ValueError as err:
        reasons.append(f"spin^c/obstruction recomputation failed: {err}")

    stored = [v for v in witness.verdicts
              if v.rule is Rule.LEBRUN_GENERALIZED]
    if not any(v.status is VerdictStatus.OBSTRUCTED for v in stored):
        reasons.append("witness carries no Obstructed generalized verdict")
    return reasons


def verify(witness: Witness, m: int, n: int, region: Region | None = None) -> bool:
    """True only if every claim of the witness re-verifies from scratch."""
    return not check_witness(witness, m, n, region)

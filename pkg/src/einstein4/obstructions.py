"""Obstruction rules for Einstein metrics on closed oriented 4-manifolds.

Four rules, each returning a Verdict with an exact certificate:

  * Hitchin-Thorpe: an Einstein metric forces 2e >= 3|sigma|, so 2e < 3|sigma|
    obstructs.  The borderline is the equality 2e = 3|sigma| (equivalently
    e = (3/2)|sigma|), where Einstein metrics exist only for flat manifolds
    and quotients of the K3 surface; it is reported separately rather than as
    an obstruction.
  * Gromov: an Einstein metric forces e >= ||M|| / (2592 pi^2) for the
    simplicial volume ||M||, so e < ||M|| / (2592 pi^2) obstructs.  The
    comparison is decided against a certified enclosure of pi^2 at doubling
    precision; the residual case e = 0 reduces to the exact rational test
    ||M|| > 0.
  * LeBrun: for a base with 2e + 3 sigma > 0 carrying a nonzero SW count or a
    B-class conclusion, the blow-up at k points admits no Einstein metric
    once 57 k >= 25 (2e + 3 sigma)(base).
  * Generalized LeBrun: with l additional S^1 x S^3 summands the same holds
    once 57 (k + 4l) >= 25 (2e + 3 sigma)(base).

Verdicts never claim existence; NotDetermined means only that the rule's
inequality fails.  All comparisons are exact (integer cross-multiplication,
or certified rational enclosures where pi^2 enters).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .blocks import (
    Invariants,
    ManifoldExpr,
    block_invariants,
    connected_sum_invariants,
    mkl_decomposition,
)
from .enclosures import pi_squared, refine_until
from .spinc import SpinCDescriptor, SWStatus

GROMOV_START_BITS = 64
GROMOV_CAP_BITS = 4096


class HypothesisUnmetError(ValueError):
    """A rule was invoked outside its hypotheses; nothing is concluded."""


class Rule(enum.Enum):
    HITCHIN_THORPE = "HitchinThorpe"
    GROMOV = "Gromov"
    LEBRUN = "LeBrun"
    LEBRUN_GENERALIZED = "LeBrunGeneralized"


class VerdictStatus(enum.Enum):
    OBSTRUCTED = "Obstructed"
    NOT_DETERMINED = "NotDetermined"
    BORDERLINE_EXCEPTION = "BorderlineException"
    # Used by evaluate_all for rules whose hypotheses could not be checked;
    # direct rule calls raise HypothesisUnmetError instead.
    HYPOTHESIS_UNMET = "HypothesisUnmet"


def _json_number(value):
    value = Fraction(value)
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Certificate:
    """The exact comparison a verdict rests on: left <cmp> right."""

    left: Fraction
    right: Fraction
    comparison: str
    holds: bool
    note: str = ""

    def to_json(self) -> dict:
        data = {
            "left": _json_number(self.left),
            "right": _json_number(self.right),
            "comparison": self.comparison,
            "holds": self.holds,
        }
        if self.note:
            data["note"] = self.note
        return data


@dataclass(frozen=True)
class Verdict:
    rule: Rule
    status: VerdictStatus
    certificate: Certificate | None = None
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "rule": self.rule.value,
            "status": self.status.value,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "notes": list(self.notes),
        }


_BORDERLINE_NOTE = (
    "equality 2e = 3|sigma|: an Einstein metric is only possible for a flat "
    "manifold or a quotient of the K3 surface (K3 itself, the Enriques "
    "surface, or the quotient of the Enriques surface by a free "
    "antiholomorphic involution); no obstruction asserted"
)


def hitchin_thorpe(inv: Invariants) -> Verdict:
    """Obstructed iff 2e < 3|sigma|; equality is the borderline exception.

    >>> hitchin_thorpe(Invariants(e=0, sigma=-2, b1=0)).status
    <VerdictStatus.OBSTRUCTED: 'Obstructed'>
    """
    lhs = 2 * inv.e
    rhs = 3 * abs(inv.sigma)
    if lhs < rhs:
        return Verdict(
            Rule.HITCHIN_THORPE,
            VerdictStatus.OBSTRUCTED,
            Certificate(Fraction(lhs), Fraction(rhs), "<", True),
        )
    if lhs == rhs:
        return Verdict(
            Rule.HITCHIN_THORPE,
            VerdictStatus.BORDERLINE_EXCEPTION,
            Certificate(Fraction(lhs), Fraction(rhs), "==", True),
            (_BORDERLINE_NOTE,),
        )
    return Verdict(
        Rule.HITCHIN_THORPE,
        VerdictStatus.NOT_DETERMINED,
        Certificate(Fraction(lhs), Fraction(rhs), "<", False),
    )


def gromov(inv: Invariants, simplicial_volume) -> Verdict:
    """Obstructed iff e < ||M|| / (2592 pi^2), decided with certified pi^2.

    The test is cross-multiplied to 2592 e pi^2 < ||M|| and compared against
    a rational enclosure of pi^2, doubling the working precision until the
    inequality resolves; for e != 0 the two sides can never be equal, so the
    loop terminates far below the precision cap.
    """
    volume = Fraction(simplicial_volume)
    if volume < 0:
        raise ValueError(f"simplicial volume must be nonnegative, got {volume}")
    if inv.e == 0:
        # 0 < ||M|| / (2592 pi^2) iff ||M|| > 0: exact, no pi needed.
        holds = volume > 0
        cert = Certificate(
            Fraction(0), volume, "<", holds,
            note="e = 0: residual exact comparison 0 < ||M||",
        )
    else:
        coeff = 2592 * inv.e

        def decide(bits: int):
            enclosure = pi_squared(bits) * coeff
            if enclosure.certainly_lt(volume):
                return ("obstructed", enclosure.hi, bits)
            if enclosure.certainly_ge(volume):
                return ("not", enclosure.lo, bits)
            return None

        result, _ = refine_until(decide, GROMOV_START_BITS, GROMOV_CAP_BITS)
        if result is None:  # would need ||M|| within 2^-4096 of 2592 e pi^2
            raise ArithmeticError(
                "pi^2 comparison did not resolve below the precision cap"
            )
        kind, bound, bits = result
        holds = kind == "obstructed"
        side = "upper" if holds else "lower"
        cert = Certificate(
            bound, volume, "<", holds,
            note=(f"certified {side} bound of 2592 * e * pi^2 "
                  f"at {bits} bits of pi"),
        )
    status = VerdictStatus.OBSTRUCTED if cert.holds else VerdictStatus.NOT_DETERMINED
    return Verdict(Rule.GROMOV, status, cert)


def _require_lebrun_hypotheses(base: Invariants, status: SWStatus) -> None:
    if base.two_e_plus_3sigma <= 0:
        raise HypothesisUnmetError(
            f"base must have 2e + 3 sigma > 0, got {base.two_e_plus_3sigma}"
        )
    if status is SWStatus.UNKNOWN:
        raise HypothesisUnmetError(
            "base needs a nonzero SW count or a B-class conclusion; "
            "status is Unknown"
        )


def lebrun(base: Invariants, status: SWStatus, k: int) -> Verdict:
    """Blow-up obstruction: Obstructed iff 57 k >= 25 (2e + 3 sigma)(base).

    Exact integer cross-multiplication of k >= (25/57)(2e + 3 sigma).
    """
    if k < 0:
        raise ValueError(f"blow-up count must be nonnegative, got {k}")
    _require_lebrun_hypotheses(base, status)
    target = base.two_e_plus_3sigma
    holds = 57 * k >= 25 * target
    return Verdict(
        Rule.LEBRUN,
        VerdictStatus.OBSTRUCTED if holds else VerdictStatus.NOT_DETERMINED,
        Certificate(Fraction(57 * k), Fraction(25 * target), ">=", holds),
        (f"k = {k} blow-up points on a base with 2e + 3 sigma = {target}, "
         f"SW status {status.value}",),
    )


def lebrun_generalized(base: Invariants, status: SWStatus, k: int, l: int) -> Verdict:
    """With l S^1 x S^3 summands: Obstructed iff 57(k + 4l) >= 25(2e+3sigma).

    Reduces to the plain blow-up rule at l = 0.
    """
    if k < 0 or l < 0:
        raise ValueError(f"counts must be nonnegative, got k={k}, l={l}")
    _require_lebrun_hypotheses(base, status)
    target = base.two_e_plus_3sigma
    holds = 57 * (k + 4 * l) >= 25 * target
    return Verdict(
        Rule.LEBRUN_GENERALIZED,
        VerdictStatus.OBSTRUCTED if holds else VerdictStatus.NOT_DETERMINED,
        Certificate(Fraction(57 * (k + 4 * l)), Fraction(25 * target), ">=", holds),
        (f"k = {k} blow-up points and l = {l} S1xS3 summands on a base with "
         f"2e + 3 sigma = {target}, SW status {status.value}",),
    )


def _unmet(rule: Rule, note: str) -> Verdict:
    return Verdict(rule, VerdictStatus.HYPOTHESIS_UNMET, None, (note,))


def evaluate_all(
    expr: ManifoldExpr,
    spinc: SpinCDescriptor | None = None,
    simplicial_volume=None,
) -> list[Verdict]:
    """Run every rule on the expression; one Verdict per rule, fixed order.

    Rules whose inputs are missing (no simplicial volume, no recognizable
    base # k*~CP2 # l*S1xS3 decomposition, no SW status for the base) come
    back HypothesisUnmet with an explanatory note instead of being silently
    dropped.  The spin^c descriptor, when given, supplies the SW status of
    the decomposition's base.
    """
    inv = connected_sum_invariants(expr)
    verdicts = [hitchin_thorpe(inv)]

    if simplicial_volume is None:
        verdicts.append(_unmet(Rule.GROMOV, "simplicial volume not supplied"))
    else:
        verdicts.append(gromov(inv, simplicial_volume))

    decomposition = mkl_decomposition(expr)
    if decomposition is None:
        note = ("expression is not base # k*~CP2 # l*S1xS3 with a unique base")
        verdicts.append(_unmet(Rule.LEBRUN, note))
        verdicts.append(_unmet(Rule.LEBRUN_GENERALIZED, note))
        return verdicts

    base_block, k, l = decomposition
    base_inv = block_invariants(base_block)
    status = spinc.status if spinc is not None else SWStatus.UNKNOWN
    status_note = None if spinc is not None else (
        "no spin^c descriptor supplied for the base; SW status treated as Unknown"
    )
    for rule, args in ((Rule.LEBRUN, (k,)), (Rule.LEBRUN_GENERALIZED, (k, l))):
        if rule is Rule.LEBRUN and l > 0:
            verdicts.append(_unmet(
                rule, "S1xS3 summands present; the plain blow-up rule only "
                      "covers l = 0 (see the generalized rule)"))
            continue
        try:
            fn = lebrun if rule is Rule.LEBRUN else lebrun_generalized
            verdict = fn(base_inv, status, *args)
        except HypothesisUnmetError as err:
            note = str(err) if status_note is None else f"{err} ({status_note})"
            verdict = _unmet(rule, note)
        verdicts.append(verdict)
    return verdicts

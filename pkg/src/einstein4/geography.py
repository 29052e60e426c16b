"""Geography of minimal general-type surfaces: the certified existence strip.

A pair (x, y) = (chi_h, c1^2) is accepted when it lies strictly between two
boundary curves,

    lower(x) = (352/89) x + (701/5)  x^(2/3)   (approx. 3.955 x + 140.2 x^(2/3))
    upper(x) = (18644/2129) x - (3657/10) x^(2/3)   (approx. 8.757 x - 365.7 x^(2/3))

and x exceeds a configurable threshold C (default 1).  Every surface with
invariants in this strip beyond the threshold is realized by a minimal
general-type surface with ample canonical bundle, which is what downstream
constructions rely on.  The four boundary coefficients above are defined in
exactly one place: here.

Membership tests never round: y is compared against dyadic enclosures of the
boundary values, refined by doubling the working precision until the strict
inequalities resolve one way or the other.  Perfect-cube x makes the
boundaries rational and the decision immediate.  Only when the precision cap
is hit does a test return Indeterminate, reporting the precision reached;
raising the cap can only sharpen decisions, never flip them.

The strip opens (upper > lower) exactly beyond the rational crossing point

    x* = ((3657/10 + 701/5) / (18644/2129 - 352/89))^3  (about 1.169 * 10^6)

obtained by cubing the boundary equation, so questions like "the first x
whose window is nonempty" reduce to exact rational arithmetic plus a short
scan.
"""

from __future__ import annotations

import abc
import enum
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from xml.sax.saxutils import escape

from .enclosures import Enclosure, cbrt_sq

LOWER_LINEAR = Fraction(352, 89)
LOWER_CBRT = Fraction(701, 5)
UPPER_LINEAR = Fraction(18644, 2129)
UPPER_CBRT = Fraction(3657, 10)


@dataclass(frozen=True)
class ChenParams:
    """Region threshold and working-precision settings."""

    C: int = 1
    precision_bits: int = 64
    precision_cap: int = 4096

    def __post_init__(self) -> None:
        if self.C < 0:
            raise ValueError(f"threshold C must be nonnegative, got {self.C}")
        if self.precision_bits < 8:
            raise ValueError(f"precision_bits must be at least 8, got {self.precision_bits}")
        if self.precision_cap < self.precision_bits:
            raise ValueError("precision_cap must be at least precision_bits")


class RegionValue(enum.Enum):
    INSIDE = "Inside"
    OUTSIDE = "Outside"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class RegionDecision:
    value: RegionValue
    precision_reached: int | None = None

    @classmethod
    def inside(cls) -> "RegionDecision":
        return cls(RegionValue.INSIDE)

    @classmethod
    def outside(cls) -> "RegionDecision":
        return cls(RegionValue.OUTSIDE)

    @classmethod
    def indeterminate(cls, bits: int) -> "RegionDecision":
        return cls(RegionValue.INDETERMINATE, bits)

    @property
    def is_inside(self) -> bool:
        return self.value is RegionValue.INSIDE

    @property
    def is_outside(self) -> bool:
        return self.value is RegionValue.OUTSIDE


def bounds(x: int, bits: int) -> tuple[Enclosure, Enclosure]:
    """Enclosures of (lower(x), upper(x)) at the given dyadic precision.

    >>> low, up = bounds(1, 64)
    >>> low.is_exact and up.is_exact  # 1 is a cube, so both are rational
    True
    >>> (low.lo, up.lo)
    (Fraction(64149, 445), Fraction(-7599313, 21290))
    """
    if x < 1:
        raise ValueError(f"x must be a positive integer, got {x}")
    curve = cbrt_sq(x, bits)
    lower = curve * LOWER_CBRT + LOWER_LINEAR * x
    upper = -(curve * UPPER_CBRT) + UPPER_LINEAR * x
    return lower, upper


def in_region(x: int, y: int, params: ChenParams = ChenParams()) -> RegionDecision:
    """Certified decision of lower(x) < y < upper(x) with x > C.

    Strict inequalities throughout: boundary points are Outside.  Inside and
    Outside answers are stable under any increase of precision; only an
    Indeterminate (cap reached with y trapped inside a boundary enclosure)
    can be sharpened.
    """
    if x < 1:
        raise ValueError(f"x must be a positive integer, got {x}")
    if x <= params.C:
        return RegionDecision.outside()
    bits = params.precision_bits
    while True:
        lower, upper = bounds(x, bits)
        if lower.certainly_ge(y) or upper.certainly_le(y):
            return RegionDecision.outside()
        if lower.certainly_lt(y) and upper.certainly_gt(y):
            return RegionDecision.inside()
        if bits >= params.precision_cap:
            return RegionDecision.indeterminate(bits)
        bits = min(2 * bits, params.precision_cap)


def y_window(x: int, params: ChenParams = ChenParams()) -> tuple[int, int] | None:
    """The integers strictly between the boundaries at x, or None if empty.

    Needs x > C.  Endpoints are certified: the returned minimum exceeds
    lower(x), the maximum stays below upper(x), and both are tight unless the
    precision cap interferes, in which case the window is conservatively
    shrunk (never widened).
    """
    if x <= params.C:
        raise ValueError(f"y_window needs x > C = {params.C}, got x = {x}")
    bits = params.precision_bits
    y_min = y_max = None
    while True:
        lower, upper = bounds(x, bits)
        if y_min is None:
            if lower.is_exact:
                y_min = _floor(lower.lo) + 1
            else:
                candidate = _floor(lower.hi) + 1
                if candidate - 1 <= lower.lo:  # candidate - 1 <= lower: tight
                    y_min = candidate
        if y_max is None:
            if upper.is_exact:
                y_max = _ceil(upper.lo) - 1
            else:
                candidate = _ceil(upper.lo) - 1
                if candidate + 1 >= upper.hi:  # candidate + 1 >= upper: tight
                    y_max = candidate
        if y_min is not None and y_max is not None:
            break
        if bits >= params.precision_cap:
            # Conservative fallback: certified but possibly not tight.
            if y_min is None:
                y_min = _floor(lower.hi) + 1
            if y_max is None:
                y_max = _ceil(upper.lo) - 1
            break
        bits = min(2 * bits, params.precision_cap)
    if y_min > y_max:
        return None
    return y_min, y_max


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _cube(q: Fraction) -> Fraction:
    return q * q * q


def first_open_x() -> int:
    """Least integer x with upper(x) > lower(x), by exact cubing.

    upper > lower amounts to (A - a) x > (B + b) x^(2/3) for the linear and
    cube-root coefficients, and cubing gives the rational threshold
    x > ((B + b)/(A - a))^3.
    """
    crossing = _cube((UPPER_CBRT + LOWER_CBRT) / (UPPER_LINEAR - LOWER_LINEAR))
    return max(1, _floor(crossing) + 1)


def upper_exceeds_line(x: int, slope: Fraction, intercept: Fraction) -> bool:
    """Exact test of upper(x) > slope * x + intercept for x >= 1.

    Rearranged to (A - slope) x - intercept > B x^(2/3) and cubed; both sides
    rational, no enclosures involved.
    """
    if x < 1:
        raise ValueError(f"x must be a positive integer, got {x}")
    lhs = (UPPER_LINEAR - slope) * x - intercept
    if lhs <= 0:
        return False
    return _cube(lhs) > _cube(UPPER_CBRT) * (x * x)


def _first_upper_crossing(x_start: int, slope: Fraction, intercept: Fraction) -> int:
    """Least x >= x_start with upper(x) > slope*x + intercept.

    Requires slope < A (else upper never escapes the line).  The difference
    upper(x) - slope*x - intercept decreases until x_inc = (2B/(3(A-s)))^3
    and increases beyond, so a False start stays False up to x_inc and the
    first True lies on the increasing branch, where bisection applies.
    """
    if slope >= UPPER_LINEAR:
        raise ValueError("slope must stay below the upper linear coefficient")
    if upper_exceeds_line(x_start, slope, intercept):
        return x_start
    x_inc = _cube(2 * UPPER_CBRT / (3 * (UPPER_LINEAR - slope)))
    lo = max(x_start, _floor(x_inc) + 1)
    if upper_exceeds_line(lo, slope, intercept):
        return lo
    hi = 2 * lo
    while not upper_exceeds_line(hi, slope, intercept):
        lo, hi = hi, 2 * hi
    # False at lo, True at hi, monotone in between: bisect the least True.
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if upper_exceeds_line(mid, slope, intercept):
            hi = mid
        else:
            lo = mid
    return hi


def min_feasible_x(params: ChenParams = ChenParams()) -> int:
    """Least x > C whose integer window is nonempty.

    The real strip opens just past first_open_x(); the integer window follows
    within a few steps because the strip widens at a definite linear rate.

    >>> min_feasible_x(ChenParams(C=2_000_000)) >= 2_000_001
    True
    """
    x = max(first_open_x(), params.C + 1)
    for _ in range(100_000):
        if y_window(x, params) is not None:
            return x
        x += 1
    raise ArithmeticError("no nonempty window found in 100000 steps")  # unreachable


class Region(abc.ABC):
    """Interface the witness search needs from a geography region."""

    @property
    @abc.abstractmethod
    def threshold_c(self) -> int: ...

    @abc.abstractmethod
    def y_window(self, x: int) -> tuple[int, int] | None:
        """Certified integer window at x (None when empty)."""

    @abc.abstractmethod
    def decide(self, x: int, y: int) -> RegionDecision: ...

    @abc.abstractmethod
    def scan_start(self, sigma: int, y_floor: int | None) -> int:
        """A starting x below which no window point can satisfy y >= 8x + sigma
        and y >= y_floor; scanning from here misses nothing."""


class ChenRegion(Region):
    """The certified strip above, as a Region."""

    def __init__(self, params: ChenParams = ChenParams()):
        self.params = params

    @property
    def threshold_c(self) -> int:
        return self.params.C

    def y_window(self, x: int) -> tuple[int, int] | None:
        return y_window(x, self.params)

    def decide(self, x: int, y: int) -> RegionDecision:
        return in_region(x, y, self.params)

    def scan_start(self, sigma: int, y_floor: int | None) -> int:
        start = max(first_open_x(), self.params.C + 1)
        # Window points need y < upper(x) and y >= 8x + sigma, so upper must
        # clear the line 8x + sigma; likewise any constant floor on y.
        candidates = [start, _first_upper_crossing(start, Fraction(8), Fraction(sigma))]
        if y_floor is not None:
            candidates.append(_first_upper_crossing(start, Fraction(0), Fraction(y_floor)))
        return max(candidates)


class TableRegion(Region):
    """Region from an explicit window table; for tests and what-if runs."""

    def __init__(self, windows: dict[int, tuple[int, int]], threshold: int = 0):
        for x, (lo, hi) in windows.items():
            if x <= threshold:
                raise ValueError(f"window at x = {x} not beyond threshold {threshold}")
            if lo > hi:
                raise ValueError(f"empty window ({lo}, {hi}) at x = {x}; omit it")
        self.windows = dict(windows)
        self.threshold = threshold

    @property
    def threshold_c(self) -> int:
        return self.threshold

    def y_window(self, x: int) -> tuple[int, int] | None:
        return self.windows.get(x)

    def decide(self, x: int, y: int) -> RegionDecision:
        window = self.windows.get(x)
        if window is not None and window[0] <= y <= window[1]:
            return RegionDecision.inside()
        return RegionDecision.outside()

    def scan_start(self, sigma: int, y_floor: int | None) -> int:
        if not self.windows:
            raise ValueError("table region has no windows")
        return min(self.windows)


def format_significant(value: Fraction, digits: int) -> str:
    """Decimal rendering of an exact rational to the given significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        quotient = Decimal(value.numerator) / Decimal(value.denominator)
    return str(quotient)


def _midpoint(enc: Enclosure) -> Fraction:
    return (enc.lo + enc.hi) / 2


def emit_geography(
    x_min: int,
    x_max: int,
    step: int,
    fmt: str,
    params: ChenParams = ChenParams(),
    out_path: str | None = None,
) -> str:
    """Render boundary samples on [x_min, x_max] as CSV or SVG.

    CSV columns: x, lower, upper, window_nonempty, with the boundary values
    written to 20 significant digits.  SVG draws both boundary curves and
    shades the strip between them where it is open.  Output depends only on
    the arguments; rerunning writes identical bytes.
    """
    if x_min < 1 or x_max < x_min:
        raise ValueError(f"need 1 <= x_min <= x_max, got [{x_min}, {x_max}]")
    if step < 1:
        raise ValueError(f"step must be positive, got {step}")
    if fmt not in ("csv", "svg"):
        raise ValueError(f"format must be 'csv' or 'svg', got {fmt!r}")

    display_bits = max(params.precision_bits, 128)
    samples = []
    for x in range(x_min, x_max + 1, step):
        lower, upper = bounds(x, display_bits)
        window = y_window(x, params) if x > params.C else None
        samples.append((x, _midpoint(lower), _midpoint(upper), window is not None))

    if fmt == "csv":
        lines = ["x,lower,upper,window_nonempty"]
        for x, low, up, nonempty in samples:
            lines.append(
                f"{x},{format_significant(low, 20)},{format_significant(up, 20)},"
                f"{str(nonempty).lower()}"
            )
        document = "\n".join(lines) + "\n"
    else:
        document = _svg_document(samples)

    if out_path is not None:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(document)
    return document


_SVG_W, _SVG_H, _SVG_MARGIN = 800, 500, 60


def _svg_document(samples: list[tuple[int, Fraction, Fraction, bool]]) -> str:
    xs = [s[0] for s in samples]
    ys = [s[1] for s in samples] + [s[2] for s in samples]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    x_span = max(Fraction(x_hi - x_lo), Fraction(1))
    y_span = max(y_hi - y_lo, Fraction(1))
    inner_w = _SVG_W - 2 * _SVG_MARGIN
    inner_h = _SVG_H - 2 * _SVG_MARGIN

    def px(x) -> str:
        return format_significant(
            _SVG_MARGIN + (Fraction(x) - x_lo) * inner_w / x_span, 12)

    def py(y) -> str:
        return format_significant(
            _SVG_H - _SVG_MARGIN - (Fraction(y) - y_lo) * inner_h / y_span, 12)

    def polyline(points: list[tuple], color: str) -> str:
        coords = " ".join(f"{px(x)},{py(y)}" for x, y in points)
        return (f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                f'points="{coords}"/>')

    lower_pts = [(x, low) for x, low, _, _ in samples]
    upper_pts = [(x, up) for x, _, up, _ in samples]
    open_pts = [(x, low, up) for x, low, up, _ in samples if up > low]

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" '
        f'height="{_SVG_H}" viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<rect x="0" y="0" width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
    ]
    if open_pts:
        ring = [(x, up) for x, _, up in open_pts]
        ring += [(x, low) for x, low, _ in reversed(open_pts)]
        coords = " ".join(f"{px(x)},{py(y)}" for x, y in ring)
        parts.append(f'<polygon fill="#cfe8cf" stroke="none" points="{coords}"/>')
    parts.append(polyline(lower_pts, "#1965b0"))
    parts.append(polyline(upper_pts, "#dc050c"))
    axis = (f'<polyline fill="none" stroke="black" stroke-width="1" points="'
            f'{_SVG_MARGIN},{_SVG_MARGIN} {_SVG_MARGIN},{_SVG_H - _SVG_MARGIN} '
            f'{_SVG_W - _SVG_MARGIN},{_SVG_H - _SVG_MARGIN}"/>')
    parts.append(axis)
    labels = [
        (px(x_lo), _SVG_H - _SVG_MARGIN + 20, str(x_lo), "middle"),
        (px(x_hi), _SVG_H - _SVG_MARGIN + 20, str(x_hi), "middle"),
        (_SVG_MARGIN - 8, py(y_lo), format_significant(y_lo, 6), "end"),
        (_SVG_MARGIN - 8, py(y_hi), format_significant(y_hi, 6), "end"),
    ]
    for lx, ly, text, anchor in labels:
        parts.append(
            f'<text x="{lx}" y="{ly}" font-size="12" text-anchor="{anchor}">'
            f"{escape(text)}</text>")
    parts.append(
        '<text x="400" y="30" font-size="14" text-anchor="middle">'
        "general-type geography: lower (blue) and upper (red) boundaries"
        "</text>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

"""Elementary planar geometry for unit-square coverings.

Everything here is exact-center floating point plus explicit rigor margins:
poses of unit squares, ternary containment tests, clipping of a segment
against a square, and a guarded scalar (value + absolute error radius) used
wherever a sign decision has to be certified rather than sampled.

All functions are pure; there is no shared mutable state.
"""

import math
from dataclasses import dataclass

INSIDE = "inside"
OUTSIDE = "outside"
BOUNDARY = "boundary-band"

HALF_PI = math.pi / 2.0
SQRT2 = math.sqrt(2.0)

# Tangency threshold: a segment/square contact shorter than this is treated
# as a single-point touch and reported as empty (measure zero never helps
# cover a 1-dimensional set).
DEGENERATE_EPS = 1e-12


def _require_finite(*values):
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"non-finite coordinate: {v!r}")


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        _require_finite(self.x, self.y)


@dataclass(frozen=True)
class PlacedSquare:
    """Pose of one unit square: center plus rotation angle.

    The edge length is always exactly 1.  The angle is normalized into
    [0, pi/2) because a square is invariant under quarter turns.
    """

    center: Point
    angle: float

    def __post_init__(self):
        _require_finite(self.angle)
        a = math.fmod(self.angle, HALF_PI)
        if a < 0.0:
            a += HALF_PI
        if a >= HALF_PI:  # fmod rounding can land exactly on the period
            a = 0.0
        object.__setattr__(self, "angle", a)


@dataclass(frozen=True)
class SideInterval:
    """Covered arclength sub-interval [lo, hi] along one side of the target."""

    side_index: int
    lo: float
    hi: float

    def __post_init__(self):
        if not (0 <= self.side_index <= 3):
            raise ValueError(f"side_index out of range: {self.side_index}")
        if self.lo > self.hi:
            raise ValueError(f"inverted interval: [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo


def _axes(sq: PlacedSquare):
    c, s = math.cos(sq.angle), math.sin(sq.angle)
    return c, s


def square_corners(sq: PlacedSquare) -> tuple[Point, Point, Point, Point]:
    """The four corners in counterclockwise order."""
    c, s = _axes(sq)
    ux, uy = 0.5 * c, 0.5 * s
    vx, vy = -0.5 * s, 0.5 * c
    cx, cy = sq.center.x, sq.center.y
    return (
        Point(cx - ux - vx, cy - uy - vy),
        Point(cx + ux - vx, cy + uy - vy),
        Point(cx + ux + vx, cy + uy + vy),
        Point(cx - ux + vx, cy - uy + vy),
    )


def containment_depth(sq: PlacedSquare, p: Point) -> float:
    """Signed depth of p in sq: positive inside, negative outside.

    Equals the minimum of the four half-plane functionals, i.e. 0.5 minus the
    Chebyshev distance from the center in the square's own frame.
    """
    c, s = _axes(sq)
    dx, dy = p.x - sq.center.x, p.y - sq.center.y
    xi = c * dx + s * dy
    eta = -s * dx + c * dy
    return 0.5 - max(abs(xi), abs(eta))


def contains_point(sq: PlacedSquare, p: Point, margin: float) -> str:
    """Ternary containment: INSIDE / OUTSIDE / BOUNDARY (within the margin band).

    inside  <=> every half-plane functional >= +margin,
    outside <=> some functional <= -margin.
    At margin 0 a point exactly on the boundary counts as inside (closed square).
    """
    if margin < 0.0:
        raise ValueError("margin must be >= 0")
    _require_finite(p.x, p.y)
    d = containment_depth(sq, p)
    if d >= margin:
        return INSIDE
    if d <= -margin and d < 0.0:
        return OUTSIDE
    return BOUNDARY


def segment_square_interval(
    sq: PlacedSquare, a: Point, b: Point, side_index: int = 0
) -> SideInterval | None:
    """Arclength interval of segment [a, b] lying inside sq, or None.

    A convex square meets a segment in at most one sub-segment; single-point
    tangencies (length <= DEGENERATE_EPS) are reported as None.
    """
    dx, dy = b.x - a.x, b.y - a.y
    length = math.hypot(dx, dy)
    if length == 0.0:
        raise ValueError("segment endpoints must be distinct")
    ux, uy = dx / length, dy / length

    c, s = _axes(sq)
    # Segment in the square's frame: p(t) = p0 + t*d for t in [0, length].
    rx, ry = a.x - sq.center.x, a.y - sq.center.y
    p0 = (c * rx + s * ry, -s * rx + c * ry)
    d = (c * ux + s * uy, -s * ux + c * uy)

    t_lo, t_hi = 0.0, length
    for p0i, di in zip(p0, d):
        if abs(di) < 1e-18:
            if abs(p0i) > 0.5:
                return None
            continue
        t1 = (-0.5 - p0i) / di
        t2 = (0.5 - p0i) / di
        if t1 > t2:
            t1, t2 = t2, t1
        t_lo = max(t_lo, t1)
        t_hi = min(t_hi, t2)
        if t_lo >= t_hi:
            return None
    if t_hi - t_lo <= DEGENERATE_EPS:
        return None
    return SideInterval(side_index, t_lo, t_hi)


# ---------------------------------------------------------------------------
# Guarded scalar arithmetic
# ---------------------------------------------------------------------------

_INF = math.inf


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


class GuardedScalar:
    """A float with certified error bounds.

    ``value`` follows the plain floating-point evaluation path; ``lo`` and
    ``hi`` enclose the true real result, maintained by outward-rounded
    interval propagation on every operation (the bounds are kept one-sided
    tight rather than symmetrized, which matters next to square-root kinks).
    ``radius`` is the reported absolute error bound.  Sign queries answer
    only when [lo, hi] excludes zero.
    """

    __slots__ = ("value", "lo", "hi")

    def __init__(self, value: float, radius: float = 0.0):
        if radius < 0.0 or math.isnan(radius):
            raise ValueError(f"invalid radius: {radius!r}")
        self.value = float(value)
        self.lo = self.value - radius
        self.hi = self.value + radius

    @classmethod
    def exact(cls, v: float) -> "GuardedScalar":
        return cls(float(v), 0.0)

    @classmethod
    def from_bounds(cls, lo: float, hi: float) -> "GuardedScalar":
        if lo > hi:
            raise ValueError(f"invalid bounds [{lo}, {hi}]")
        out = cls(0.5 * (lo + hi), 0.0)
        out.lo, out.hi = lo, hi
        return out

    @classmethod
    def pi(cls) -> "GuardedScalar":
        return cls(math.pi, 1.3e-16)

    @property
    def radius(self) -> float:
        return max(self.hi - self.value, self.value - self.lo, 0.0)

    def __repr__(self):
        return f"GuardedScalar({self.value!r}, radius={self.radius:.3g})"

    @staticmethod
    def _coerce(other) -> "GuardedScalar":
        if isinstance(other, GuardedScalar):
            return other
        return GuardedScalar(float(other), 0.0)

    def _wrap(self, value: float, lo: float, hi: float) -> "GuardedScalar":
        if math.isnan(value) or lo > hi:
            out = GuardedScalar(0.0, 0.0)
            out.lo, out.hi = -_INF, _INF
            return out
        out = GuardedScalar(value, 0.0)
        out.lo, out.hi = lo, hi
        return out

    def __add__(self, other):
        o = self._coerce(other)
        return self._wrap(
            self.value + o.value, _down(self.lo + o.lo), _up(self.hi + o.hi)
        )

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.value, -self.hi, -self.lo)

    def __sub__(self, other):
        o = self._coerce(other)
        return self._wrap(
            self.value - o.value, _down(self.lo - o.hi), _up(self.hi - o.lo)
        )

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        o = self._coerce(other)
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return self._wrap(self.value * o.value, _down(min(prods)), _up(max(prods)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0.0 <= o.hi:
            # Denominator interval touches zero: sign is undecidable.
            return GuardedScalar(0.0, _INF)
        quots = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return self._wrap(self.value / o.value, _down(min(quots)), _up(max(quots)))

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def sq(self) -> "GuardedScalar":
        lo, hi = self.lo, self.hi
        if lo <= 0.0 <= hi:
            m = max(lo * lo, hi * hi)
            return self._wrap(self.value * self.value, 0.0, _up(m))
        m_lo = min(lo * lo, hi * hi)
        m_hi = max(lo * lo, hi * hi)
        return self._wrap(self.value * self.value, _down(m_lo), _up(m_hi))

    def sqrt(self) -> "GuardedScalar":
        if self.hi < 0.0:
            raise ValueError(f"sqrt of negative interval {self!r}")
        lo = max(self.lo, 0.0)
        v = math.sqrt(self.value) if self.value > 0.0 else 0.0
        return self._wrap(v, _down(math.sqrt(lo)), _up(math.sqrt(self.hi)))

    # sin/cos carry a 4-ulp pad for libm inexactness on top of the endpoint
    # evaluation; endpoints suffice on monotone pieces and extrema are added
    # when the interval spans them.
    def sin(self) -> "GuardedScalar":
        return self._trig(math.sin, math.pi / 2.0)

    def cos(self) -> "GuardedScalar":
        return self._trig(math.cos, 0.0)

    def _trig(self, fn, peak_at: float) -> "GuardedScalar":
        lo, hi = self.lo, self.hi
        if not (math.isfinite(lo) and math.isfinite(hi)):
            return GuardedScalar(0.0, _INF)
        if hi - lo >= 2.0 * math.pi:
            return GuardedScalar(fn(self.value), 2.0)
        pad = 4e-16
        vals = [fn(lo), fn(hi)]
        two_pi = 2.0 * math.pi
        # peaks at peak_at + 2k*pi, valleys at peak_at + pi + 2k*pi
        k0 = math.ceil((lo - peak_at) / two_pi)
        if peak_at + k0 * two_pi <= hi:
            vals.append(1.0)
        k1 = math.ceil((lo - peak_at - math.pi) / two_pi)
        if peak_at + math.pi + k1 * two_pi <= hi:
            vals.append(-1.0)
        return self._wrap(
            fn(self.value),
            max(_down(min(vals) - pad), -1.0),
            min(_up(max(vals) + pad), 1.0),
        )

    def __abs__(self):
        lo, hi = self.lo, self.hi
        if lo >= 0.0:
            return self._wrap(abs(self.value), lo, hi)
        if hi <= 0.0:
            return self._wrap(abs(self.value), -hi, -lo)
        return self._wrap(abs(self.value), 0.0, max(-lo, hi))

    def sign(self) -> str:
        """'positive', 'negative', or 'unknown' if 0 is not excluded."""
        if self.lo > 0.0:
            return "positive"
        if self.hi < 0.0:
            return "negative"
        return "unknown"

    def is_nonnegative(self) -> bool:
        return self.lo >= 0.0

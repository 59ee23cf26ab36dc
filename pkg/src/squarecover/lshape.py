"""Maximal L-shapes inside a unit square.

An L-shape is a pair of orthogonal segments sharing an endpoint (the corner).
For a long leg of length x in [1, sqrt(2)], the longest short leg that still
fits in a unit square is l(x) = x - x*sqrt(x^2 - 1); the extremal placement
puts the long-leg endpoint on a vertex of the square and the corner and
short-leg endpoint on the two sides not containing that vertex.
"""

import math
from dataclasses import dataclass

from .geom_core import PlacedSquare, Point, SQRT2

DOMAIN_TOL = 1e-12


@dataclass(frozen=True)
class LShape:
    """Two orthogonal legs meeting at `corner`; each leg is (unit direction, length)."""

    corner: Point
    leg_a: tuple[tuple[float, float], float]
    leg_b: tuple[tuple[float, float], float]

    def __post_init__(self):
        (ax, ay), la = self.leg_a
        (bx, by), lb = self.leg_b
        if la < 0.0 or lb < 0.0:
            raise ValueError("leg lengths must be >= 0")
        if abs(ax * bx + ay * by) > 1e-9:
            raise ValueError("legs must be orthogonal")
        for ux, uy in ((ax, ay), (bx, by)):
            if abs(math.hypot(ux, uy) - 1.0) > 1e-9:
                raise ValueError("leg directions must be unit vectors")

    def endpoints(self) -> tuple[Point, Point]:
        (ax, ay), la = self.leg_a
        (bx, by), lb = self.leg_b
        c = self.corner
        return Point(c.x + ax * la, c.y + ay * la), Point(c.x + bx * lb, c.y + by * lb)


def _clamp_domain(x: float) -> float:
    if x < 1.0 - DOMAIN_TOL or x > SQRT2 + DOMAIN_TOL:
        raise ValueError(f"long-leg length {x!r} outside [1, sqrt(2)]")
    return min(max(x, 1.0), SQRT2)


def l_of(x: float) -> float:
    """Maximal short-leg length for long leg x; strictly decreasing, l(1)=1, l(sqrt2)=0."""
    x = _clamp_domain(x)
    return x - x * math.sqrt(x * x - 1.0)


def l_prime(x: float) -> float:
    """d/dx of l_of; unbounded as x -> 1+."""
    x = _clamp_domain(x)
    return 1.0 - (2.0 * x * x - 1.0) / math.sqrt(x * x - 1.0)


def l_second(x: float) -> float:
    """Second derivative of l_of: -x(2x^2-3)/(x^2-1)^(3/2)."""
    x = _clamp_domain(x)
    return -x * (2.0 * x * x - 3.0) / (x * x - 1.0) ** 1.5


def l_inverse(y: float) -> float:
    """The unique x in [1, sqrt(2)] with l_of(x) = y, for y in [0, 1].

    Bracketed bisection; the closed-form inversion suffers cancellation in
    nested radicals near x = 1, bisection does not.
    """
    if y < -DOMAIN_TOL or y > 1.0 + DOMAIN_TOL:
        raise ValueError(f"short-leg length {y!r} outside [0, 1]")
    y = min(max(y, 0.0), 1.0)
    if y == 1.0:
        return 1.0
    if y == 0.0:
        return SQRT2
    lo, hi = 1.0, SQRT2
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if l_of(mid) > y:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15:
            break
    return 0.5 * (lo + hi)


def _rot90(v: tuple[float, float]) -> tuple[float, float]:
    return (-v[1], v[0])


def maximal_embedding(
    x: float,
    corner: Point,
    dir_long: tuple[float, float],
    handedness: int,
) -> PlacedSquare:
    """Pose of the unit square realizing the maximal L-shape with long leg x.

    The L-shape has its corner at `corner`, long leg of length x along
    `dir_long`, and short leg of length l_of(x) along handedness * rot90(dir_long).
    The returned square contains both legs; the long-leg endpoint is one of
    its vertices.  At x = 1 the embedding is non-unique and the convention is
    the square whose sides lie on both legs (the continuous limit).
    """
    if handedness not in (-1, 1):
        raise ValueError("handedness must be +1 or -1")
    x = _clamp_domain(x)
    nx, ny = dir_long
    norm = math.hypot(nx, ny)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError("dir_long must be a unit vector")
    ux, uy = nx / norm, ny / norm
    wx, wy = _rot90((ux, uy))
    wx, wy = handedness * wx, handedness * wy

    # In the frame (origin = corner, X along the long leg, Y along the short
    # leg) the square's vertices are fixed by the incidence conditions: the
    # long-leg endpoint (x, 0) is a vertex, the corner sits on one side and
    # the short-leg endpoint on the adjacent side.
    s = math.sqrt(x * x - 1.0)
    c1 = 1.0 - s
    frame = (
        (-c1 * s / x, c1 / x),
        (s * s / x, -s / x),
        (x, 0.0),
        ((-c1 * s + 1.0) / x, (c1 + s) / x),
    )
    world = [
        (corner.x + lx * ux + ly * wx, corner.y + lx * uy + ly * wy)
        for lx, ly in frame
    ]
    cx = sum(p[0] for p in world) / 4.0
    cy = sum(p[1] for p in world) / 4.0
    ex, ey = world[1][0] - world[0][0], world[1][1] - world[0][1]
    return PlacedSquare(Point(cx, cy), math.atan2(ey, ex))


def build_lshape(
    x: float, corner: Point, dir_long: tuple[float, float], handedness: int
) -> LShape:
    """The L-shape (legs x and l_of(x)) that maximal_embedding embeds."""
    nx, ny = dir_long
    norm = math.hypot(nx, ny)
    u = (nx / norm, ny / norm)
    w = _rot90(u)
    w = (handedness * w[0], handedness * w[1])
    return LShape(corner, (u, _clamp_domain(x)), (w, l_of(x)))

"""Exact record configurations: unit squares covering a square or its boundary.

The target square is always [0, edge]^2 with v1 at the origin and vertices
labeled counterclockwise.  Interior records exist for n <= 5; boundary
records for n = 2, 3 and all n >= 4 with n = 0 or 1 (mod 4), built from
corner squares (an L-shape trace with legs x and l(x)) plus diagonally
placed side squares each covering sqrt(2) of one side.
"""

import math
from dataclasses import dataclass

from .geom_core import PlacedSquare, Point, SQRT2
from .lshape import l_of, maximal_embedding
from .paper_checks import CONSTANTS

INTERIOR = "interior"
BOUNDARY = "boundary"


@dataclass(frozen=True)
class Configuration:
    edge: float
    mode: str
    squares: tuple[PlacedSquare, ...]

    def __post_init__(self):
        if not (math.isfinite(self.edge) and self.edge > 0.0):
            raise ValueError(f"edge must be positive and finite: {self.edge!r}")
        if self.mode not in (INTERIOR, BOUNDARY):
            raise ValueError(f"unknown mode: {self.mode!r}")
        if len(self.squares) == 0:
            raise ValueError("configuration needs at least one square")
        object.__setattr__(self, "squares", tuple(self.squares))

    def corners(self) -> tuple[Point, Point, Point, Point]:
        e = self.edge
        return (Point(0.0, 0.0), Point(e, 0.0), Point(e, e), Point(0.0, e))

    def with_edge(self, edge: float) -> "Configuration":
        return Configuration(edge, self.mode, self.squares)


@dataclass(frozen=True)
class LegAssignment:
    """Per-vertex leg parameters and per-side breakdown for boundary records.

    x[i] is the long-leg parameter of the corner square at vertex i.  Side i
    carries the leg y[i] at vertex i, k[i] diagonal side squares, and the leg
    z[i] at vertex i+1, so that y[i] + k[i]*sqrt(2) + z[i] = edge and
    {z[i-1], y[i]} = {x[i], l(x[i])}.
    """

    edge: float
    x: tuple[float, float, float, float]
    y: tuple[float, float, float, float]
    k: tuple[int, int, int, int]
    z: tuple[float, float, float, float]

    def side_sums(self) -> tuple[float, ...]:
        return tuple(
            self.y[i] + self.k[i] * SQRT2 + self.z[i] for i in range(4)
        )

    def validate(self, tol: float = 1e-12) -> None:
        for i in range(4):
            pair = sorted((self.z[i - 1], self.y[i]))
            want = sorted((self.x[i], l_of(self.x[i])))
            if abs(pair[0] - want[0]) > tol or abs(pair[1] - want[1]) > tol:
                raise ValueError(f"leg pair at vertex {i} inconsistent")
        for s in self.side_sums():
            if abs(s - self.edge) > tol:
                raise ValueError("side sums do not match the edge")


def construct_interior(n: int) -> Configuration:
    """Largest-known-exact interior covering with n unit squares (n <= 5)."""
    if n == 1 or n == 2:
        sq = PlacedSquare(Point(0.5, 0.5), 0.0)
        # for n=2 the second square is redundant; duplicating the translate
        # keeps the configuration canonical
        return Configuration(1.0, INTERIOR, (sq,) * n)
    if n == 3:
        s = CONSTANTS.sqrt_phi
        corner_sq = PlacedSquare(Point(s - 0.5, s - 0.5), 0.0)
        # the two tilted squares each realize the maximal L-shape with long
        # leg sqrt(phi) along a side, anchored so that v1 is one of their
        # vertices
        tilt_bottom = maximal_embedding(s, Point(s, 0.0), (-1.0, 0.0), -1)
        tilt_left = maximal_embedding(s, Point(0.0, s), (0.0, -1.0), +1)
        return Configuration(s, INTERIOR, (tilt_bottom, tilt_left, corner_sq))
    if n == 4 or n == 5:
        quads = (
            PlacedSquare(Point(0.5, 0.5), 0.0),
            PlacedSquare(Point(1.5, 0.5), 0.0),
            PlacedSquare(Point(1.5, 1.5), 0.0),
            PlacedSquare(Point(0.5, 1.5), 0.0),
        )
        if n == 5:
            quads = quads + (PlacedSquare(Point(0.5, 0.5), 0.0),)
        return Configuration(2.0, INTERIOR, quads)
    raise ValueError(f"no exact interior record for n={n}")


def _diag_square(x: float, y: float) -> PlacedSquare:
    return PlacedSquare(Point(x, y), math.pi / 4.0)


def construct_boundary(n: int) -> Configuration:
    """Largest-exact boundary covering with n unit squares.

    Supported: n = 2, 3 and n >= 4 with n = 0, 1 (mod 4).  The residues
    2, 3 (mod 4) for n >= 6 have no known exact value.
    """
    if n == 2:
        sq = PlacedSquare(Point(0.5, 0.5), 0.0)
        return Configuration(1.0, BOUNDARY, (sq, sq))
    if n == 3:
        interior = construct_interior(3)
        return Configuration(interior.edge, BOUNDARY, interior.squares)
    if n < 4 or n % 4 not in (0, 1):
        raise ValueError(f"no exact boundary record for n={n}")

    k = (n - 4) // 4 if n % 4 == 0 else (n - 5) // 4
    e = sbd_closed_form(n)
    squares: list[PlacedSquare] = []

    if n % 4 == 0:
        # axis-aligned corner square at every vertex (legs 1 and 1), k
        # diagonal squares on each side covering the middle k*sqrt(2)
        squares += [
            PlacedSquare(Point(0.5, 0.5), 0.0),
            PlacedSquare(Point(e - 0.5, 0.5), 0.0),
            PlacedSquare(Point(e - 0.5, e - 0.5), 0.0),
            PlacedSquare(Point(0.5, e - 0.5), 0.0),
        ]
        for j in range(k):
            c = 1.0 + (j + 0.5) * SQRT2
            squares.append(_diag_square(c, 0.0))  # bottom
        for j in range(k):
            c = 1.0 + (j + 0.5) * SQRT2
            squares.append(_diag_square(e, c))  # right
        for j in range(k):
            c = e - 1.0 - (j + 0.5) * SQRT2
            squares.append(_diag_square(c, e))  # top
        for j in range(k):
            c = e - 1.0 - (j + 0.5) * SQRT2
            squares.append(_diag_square(0.0, c))  # left
        return Configuration(e, BOUNDARY, tuple(squares))

    # n = 1 (mod 4): leg parameters (sqrt2, xbar, 1, xbar).
    xb = CONSTANTS.xbar
    lx = l_of(xb)
    v2, v3, v4 = Point(e, 0.0), Point(e, e), Point(0.0, e)
    # vertex 1: long leg sqrt(2) up the left side -> diagonal through v1
    squares.append(_diag_square(0.0, SQRT2 / 2.0))
    # vertex 2: maximal L-shape, long leg xbar up the right side, short leg
    # l(xbar) back along the bottom
    squares.append(maximal_embedding(xb, v2, (0.0, 1.0), +1))
    # vertex 3: axis-aligned corner square
    squares.append(PlacedSquare(Point(e - 0.5, e - 0.5), 0.0))
    # vertex 4: mirror L-shape, long leg xbar along the top toward v3
    squares.append(maximal_embedding(xb, v4, (1.0, 0.0), -1))
    # bottom side: k+1 diagonals covering [0, (k+1) sqrt2]
    for j in range(k + 1):
        squares.append(_diag_square((j + 0.5) * SQRT2, 0.0))
    # right side: k diagonals covering [xbar, xbar + k sqrt2]
    for j in range(k):
        squares.append(_diag_square(e, xb + (j + 0.5) * SQRT2))
    # top side: k diagonals, arclength measured from v3 (x = e - s)
    for j in range(k):
        squares.append(_diag_square(e - 1.0 - (j + 0.5) * SQRT2, e))
    # left side: k diagonals, arclength from v4 (y = e - s)
    for j in range(k):
        squares.append(_diag_square(0.0, e - lx - (j + 0.5) * SQRT2))
    return Configuration(e, BOUNDARY, tuple(squares))


def sbd_parts(n: int) -> tuple[str, int]:
    """Closed-form structure of the boundary record: (base, k) meaning
    base + k*sqrt(2), base in {'2', '1+xbar'}."""
    if n < 4 or n % 4 not in (0, 1):
        raise ValueError(f"no boundary closed form for n={n}")
    if n % 4 == 0:
        return "2", (n - 4) // 4
    return "1+xbar", (n - 5) // 4


def sbd_closed_form(n: int) -> float:
    """2 + k*sqrt2 for n = 4+4k; (1+xbar) + k*sqrt2 for n = 5+4k."""
    base, k = sbd_parts(n)
    base_val = 2.0 if base == "2" else 1.0 + CONSTANTS.xbar
    return base_val + k * SQRT2


def leg_assignment(n: int) -> LegAssignment:
    """Leg bookkeeping of the boundary construction for supported n >= 4."""
    base, k = sbd_parts(n)
    e = sbd_closed_form(n)
    if base == "2":
        ones = (1.0, 1.0, 1.0, 1.0)
        return LegAssignment(e, ones, ones, (k, k, k, k), ones)
    xb = CONSTANTS.xbar
    lx = l_of(xb)
    return LegAssignment(
        e,
        x=(SQRT2, xb, 1.0, xb),
        y=(0.0, xb, 1.0, lx),
        k=(k + 1, k, k, k),
        z=(lx, 1.0, xb, SQRT2),
    )


def known_interior_value(n: int):
    """(value, formula, provenance) for proved interior records, else None."""
    if n in (1, 2):
        return 1.0, "1", "exact"
    if n == 3:
        return CONSTANTS.sqrt_phi, "sqrt(phi)", "exact"
    if n in (4, 5):
        return 2.0, "2", "exact"
    return None


def known_boundary_value(n: int):
    """(value, formula, provenance) for proved boundary records, else None."""
    if n == 2:
        return 1.0, "1", "exact"
    if n == 3:
        return CONSTANTS.sqrt_phi, "sqrt(phi)", "exact"
    if n >= 4 and n % 4 in (0, 1):
        base, k = sbd_parts(n)
        if k == 0:
            return sbd_closed_form(n), base, "exact"
        formula = f"{base}+{k}*sqrt(2)" if k > 1 else f"{base}+sqrt(2)"
        return sbd_closed_form(n), formula, "recurrence"
    return None

"""Coverings of a square by unit squares, with certified verification."""

from .geom_core import (
    BOUNDARY,
    INSIDE,
    OUTSIDE,
    GuardedScalar,
    PlacedSquare,
    Point,
    SideInterval,
    containment_depth,
    contains_point,
    segment_square_interval,
    square_corners,
)
from .lshape import LShape, l_inverse, l_of, maximal_embedding
from .constructions import (
    Configuration,
    LegAssignment,
    construct_boundary,
    construct_interior,
    leg_assignment,
    sbd_closed_form,
)
from .verify import (
    CoverageCertificate,
    GapReport,
    OracleResult,
    monte_carlo_oracle,
    uncovered_boundary_length,
    verify_boundary,
    verify_interior,
)
from .paper_checks import (
    CONSTANTS,
    A1A2,
    CheckReport,
    Constants,
    G_of,
    f_of,
    run_all_checks,
    xbar_solve,
)
from .optimize import SearchParams, SearchResult, local_search, max_edge_search, penalty

__version__ = "0.1.0"

"""Seeded derivative-free search for large coverable edge lengths.

Inner loop: coordinate pattern search over the 3n pose parameters minimizing
a coverage penalty at a fixed edge, augmented with two problem-aware moves:
plateau drift (accepting penalty-neutral moves that grow total boundary
trace, which unlocks the zero-sum seam trades these assemblies are full of)
and a role projection that reads off which corner or side each square is
serving, re-solves the leg-balance ring, and snaps the poses onto the
resulting exact layout.  Outer loop: bisection on the edge; an edge counts
feasible only when the verifier certifies a configuration, so results are
certified lower bounds.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .constructions import (
    BOUNDARY,
    INTERIOR,
    Configuration,
    construct_boundary,
    construct_interior,
)
from .geom_core import PlacedSquare, Point, SQRT2, segment_square_interval
from .lshape import l_inverse, l_of, maximal_embedding
from .verify import (
    CoverageCertificate,
    interior_uncovered_bound,
    uncovered_boundary_length,
    verify_boundary,
    verify_interior,
)

PENALTY_DEPTH = 13
_COARSE_DEPTH = 8
_BISECT_TOL = 1e-6


@dataclass
class SearchParams:
    restarts: int = 8
    inner_iterations: int = 4000
    initial_step: float = 0.12
    shrink_factor: float = 0.5
    sigma_perturb: float = 0.05
    time_budget_s: float = 120.0
    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.shrink_factor < 1.0):
            raise ValueError("shrink_factor must be in (0, 1)")
        for name in ("restarts", "inner_iterations", "initial_step",
                     "sigma_perturb", "time_budget_s"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class SearchResult:
    best_edge: float
    config: Configuration | None
    certificate: CoverageCertificate | None
    history: list = field(default_factory=list)


def penalty(cfg: Configuration, max_depth: int = PENALTY_DEPTH) -> float:
    """Coverage deficit: 0 exactly when the verifier certifies coverage."""
    if cfg.mode == BOUNDARY:
        return uncovered_boundary_length(cfg)
    return interior_uncovered_bound(cfg, max_depth, margin=0.0)


def perturb_configuration(cfg: Configuration, sigma: float, seed: int) -> Configuration:
    """Gaussian perturbation of all pose parameters (deterministic given seed)."""
    rng = np.random.default_rng(seed)
    squares = []
    for sq in cfg.squares:
        dx, dy, da = rng.normal(0.0, sigma, size=3)
        squares.append(
            PlacedSquare(Point(sq.center.x + dx, sq.center.y + dy), sq.angle + da)
        )
    return Configuration(cfg.edge, cfg.mode, tuple(squares))


def _vec(cfg: Configuration) -> np.ndarray:
    out = []
    for sq in cfg.squares:
        out += [sq.center.x, sq.center.y, sq.angle]
    return np.array(out)


def _cfg(edge: float, mode: str, vec: np.ndarray) -> Configuration:
    squares = tuple(
        PlacedSquare(Point(vec[i], vec[i + 1]), vec[i + 2])
        for i in range(0, len(vec), 3)
    )
    return Configuration(edge, mode, squares)


# ---------------------------------------------------------------------------
# Role projection: snap a roughly-assembled configuration onto the exact
# leg-balance layout its squares are attempting.
# ---------------------------------------------------------------------------


def _leg_partner(p: float) -> float:
    """The longest second leg pairable with a leg of length p in one unit
    square: l(p) for p >= 1, l_inverse(p) for p < 1.  Strictly decreasing
    bijection of [0, sqrt2]."""
    if p >= 1.0:
        return l_of(min(p, SQRT2))
    return l_inverse(max(p, 0.0))


def _corner_square_pose(vertex_idx: int, a_leg: float, b_leg: float, e: float) -> PlacedSquare:
    """Pose of the corner square at vertex `vertex_idx` of [0, e]^2 tracing
    a_leg along the incoming side (ending at the vertex) and b_leg along the
    outgoing side."""
    corners = (Point(0.0, 0.0), Point(e, 0.0), Point(e, e), Point(0.0, e))
    # outgoing side direction at each vertex (counterclockwise ring)
    out_dirs = ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))
    v = corners[vertex_idx]
    d_out = out_dirs[vertex_idx]
    d_in = (-out_dirs[(vertex_idx + 3) % 4][0], -out_dirs[(vertex_idx + 3) % 4][1])
    if a_leg >= b_leg:
        # long leg along the incoming side; rot90(d_in) vs d_out decides hand
        hand = +1 if (-d_in[1], d_in[0]) == d_out else -1
        return maximal_embedding(max(a_leg, 1.0), v, d_in, hand)
    hand = +1 if (-d_out[1], d_out[0]) == d_in else -1
    return maximal_embedding(max(b_leg, 1.0), v, d_out, hand)


def _ring_layout(e: float, k: tuple[int, int, int, int]):
    """Equal-slack solve of the boundary leg ring: vertex i contributes legs
    (a_i, T(a_i)); side i must reach e with k_i diagonal side squares, so
    T(a_i) + k_i*sqrt2 + a_{i+1} = e + s for a common slack s.

    Shooting on a_0: chase the chain around the ring and root-find the
    closure residual.  Returns the legs `a` or None when infeasible."""

    def chase(a0: float, s: float):
        a = [a0]
        for i in range(4):
            nxt = e + s - k[i] * SQRT2 - _leg_partner(a[-1])
            if nxt < -1e-9 or nxt > SQRT2 + 1e-9:
                return None
            a.append(min(max(nxt, 0.0), SQRT2))
        return a

    for s in (3e-4, 1e-4, 3e-5, 1e-5, 0.0):
        grid = 257
        prev = None
        for g in range(grid + 1):
            a0 = SQRT2 * g / grid
            chain = chase(a0, s)
            resid = None if chain is None else chain[4] - a0
            if resid is not None and prev is not None and prev[1] * resid <= 0.0:
                lo, hi = prev[0], a0
                for _ in range(80):
                    mid = 0.5 * (lo + hi)
                    c = chase(mid, s)
                    if c is None:
                        break
                    if (c[4] - mid) * prev[1] > 0.0:
                        lo = mid
                    else:
                        hi = mid
                chain = chase(0.5 * (lo + hi), s)
                if chain is not None and abs(chain[4] - chain[0]) < 1e-7:
                    a = chain[:4]
                    slack = [
                        _leg_partner(a[i]) + k[i] * SQRT2 + a[(i + 1) % 4] - e
                        for i in range(4)
                    ]
                    if min(slack) >= -1e-12:
                        return a, slack
            if resid is not None:
                prev = (a0, resid)
    return None


def _spread_side_squares(e: float, side: int, start: float, end: float, count: int):
    """Diagonal squares covering [start, end] of side `side`, evenly
    overlapped.  Each covers sqrt2 of the side line around its center."""
    if count == 0:
        return []
    span = end - start
    out = []
    for j in range(count):
        c = start + (j + 0.5) * span / count
        if side == 0:
            p = Point(c, 0.0)
        elif side == 1:
            p = Point(e, c)
        elif side == 2:
            p = Point(e - c, e)
        else:
            p = Point(0.0, e - c)
        out.append(PlacedSquare(p, math.pi / 4.0))
    return out


def _project_boundary(cfg: Configuration) -> Configuration | None:
    """Infer corner/side roles from the current poses and rebuild the exact
    ring layout at this edge; None when the roles cannot be balanced."""
    e = cfg.edge
    n = len(cfg.squares)
    if n < 4:
        return None
    corners = (Point(0.0, 0.0), Point(e, 0.0), Point(e, e), Point(0.0, e))
    # the square nearest each corner becomes that corner's square
    taken = set()
    corner_sq = []
    for v in corners:
        best_j, best_d = None, math.inf
        for j, sq in enumerate(cfg.squares):
            if j in taken:
                continue
            d = math.hypot(sq.center.x - v.x, sq.center.y - v.y)
            if d < best_d:
                best_j, best_d = j, d
        if best_j is None or best_d > 1.2:
            return None
        taken.add(best_j)
        corner_sq.append(best_j)
    # remaining squares count as side squares on their nearest side
    k = [0, 0, 0, 0]
    for j, sq in enumerate(cfg.squares):
        if j in taken:
            continue
        cx, cy = sq.center.x, sq.center.y
        dists = (cy, e - cx, e - cy, cx)
        k[int(np.argmin(dists))] += 1
    layout = _ring_layout(e, tuple(k))
    if layout is None:
        return None
    a, slacks = layout
    squares: list[PlacedSquare | None] = [None] * n
    for i in range(4):
        a_leg, b_leg = a[i], _leg_partner(a[i])
        squares[corner_sq[i]] = _corner_square_pose(i, a_leg, b_leg, e)
    spread = []
    for i in range(4):
        # side i: vertex-square legs already cover [0, b_i] and [e - a_{i+1}, e]
        start = _leg_partner(a[i])
        end = e - a[(i + 1) % 4]
        spread.append(_spread_side_squares(e, i, max(0.0, start), min(e, end), k[i]))
    it = [iter(s) for s in spread]
    for j, sq in enumerate(cfg.squares):
        if squares[j] is not None:
            continue
        cx, cy = sq.center.x, sq.center.y
        dists = (cy, e - cx, e - cy, cx)
        side = int(np.argmin(dists))
        squares[j] = next(it[side])
    return Configuration(e, BOUNDARY, tuple(squares))


def _dihedral_variants(cfg: Configuration):
    """The eight symmetry images of a configuration of [0, e]^2."""
    e = cfg.edge
    variants = []
    for flip in (False, True):
        for rot in range(4):
            squares = []
            for sq in cfg.squares:
                x, y, ang = sq.center.x, sq.center.y, sq.angle
                if flip:
                    x, y, ang = y, x, -ang + math.pi / 2.0
                for _ in range(rot):
                    x, y, ang = e - y, x, ang + math.pi / 2.0
                squares.append(PlacedSquare(Point(x, y), ang))
            variants.append(Configuration(e, cfg.mode, tuple(squares)))
    return variants


def _interior_templates(n: int, e: float):
    """Candidate exact interior layouts with n squares at edge e."""
    out = []
    if e <= 1.0:
        sq = PlacedSquare(Point(e / 2.0, e / 2.0), 0.0)
        out.append(Configuration(e, INTERIOR, (sq,) * n))
    if n >= 3 and e <= math.sqrt((1.0 + math.sqrt(5.0)) / 2.0):
        tilt_b = maximal_embedding(max(e, 1.0), Point(e, 0.0), (-1.0, 0.0), -1)
        tilt_l = maximal_embedding(max(e, 1.0), Point(0.0, e), (0.0, -1.0), +1)
        corner = PlacedSquare(Point(e - 0.5, e - 0.5), 0.0)
        base = (tilt_b, tilt_l, corner)
        out.append(Configuration(e, INTERIOR, base + (corner,) * (n - 3)))
    if n >= 4 and e <= 2.0:
        quads = (
            PlacedSquare(Point(0.5, 0.5), 0.0),
            PlacedSquare(Point(e - 0.5, 0.5), 0.0),
            PlacedSquare(Point(e - 0.5, e - 0.5), 0.0),
            PlacedSquare(Point(0.5, e - 0.5), 0.0),
        )
        out.append(Configuration(e, INTERIOR, quads + (quads[0],) * (n - 4)))
    return out


def _project_interior(cfg: Configuration) -> Configuration | None:
    """Snap to the nearest dihedral image of a known interior layout."""
    best, best_d = None, math.inf
    cur = _vec(cfg)
    for template in _interior_templates(len(cfg.squares), cfg.edge):
        for variant in _dihedral_variants(template):
            d = float(np.max(np.abs(_vec(variant) - cur)))
            if d < best_d:
                best, best_d = variant, d
    return best


def _project(cfg: Configuration) -> Configuration | None:
    if cfg.mode == BOUNDARY:
        return _project_boundary(cfg)
    return _project_interior(cfg)


# ---------------------------------------------------------------------------
# Pattern search
# ---------------------------------------------------------------------------


def _trace_mass(cfg: Configuration) -> float:
    corners = cfg.corners()
    total = 0.0
    for i in range(4):
        a, b = corners[i], corners[(i + 1) % 4]
        for sq in cfg.squares:
            iv = segment_square_interval(sq, a, b)
            if iv is not None:
                total += iv.length
    return total


def _descend(vec, edge, mode, depth, max_evals, step0, shrink, deadline, history,
             tag, rng, n_rand=4, drift_cap=250):
    """Pattern search: steepest of the coordinate +-moves plus a few seeded
    random directions, with line acceleration and plateau drift on the
    boundary trace mass."""

    def pen_of(v):
        return penalty(_cfg(edge, mode, v), depth)

    boundary = mode == BOUNDARY
    best = np.asarray(vec, dtype=float).copy()
    best_pen = pen_of(best)
    mass = _trace_mass(_cfg(edge, mode, best)) if boundary else 0.0
    evals = 1
    step = step0
    drifts = 0
    dims = len(best)
    eye = np.eye(dims)
    while (
        best_pen > 0.0
        and evals < max_evals
        and step > 1e-9
        and time.monotonic() < deadline
    ):
        dirs = list(eye)
        if n_rand:
            for d in rng.standard_normal((n_rand, dims)):
                dirs.append(d / np.linalg.norm(d))
        cand_pen, cand_mv = best_pen, None
        plateau_mv = None
        for d in dirs:
            for sgn in (1.0, -1.0):
                trial = best + sgn * step * d
                p = pen_of(trial)
                evals += 1
                if p < cand_pen:
                    cand_pen, cand_mv = p, sgn * d
                elif (
                    boundary
                    and cand_mv is None
                    and plateau_mv is None
                    and p <= best_pen
                ):
                    m2 = _trace_mass(_cfg(edge, mode, trial))
                    if m2 > mass + 1e-12:
                        plateau_mv = (sgn * d, p, m2)
        if cand_mv is not None:
            best = best + step * cand_mv
            best_pen = cand_pen
            history.append((tag, edge, best_pen))
            while best_pen > 0.0 and evals < max_evals:
                trial = best + step * cand_mv
                p = pen_of(trial)
                evals += 1
                if p < best_pen:
                    best, best_pen = trial, p
                else:
                    break
            if boundary:
                mass = _trace_mass(_cfg(edge, mode, best))
        elif plateau_mv is not None and drifts < drift_cap:
            d, p, m2 = plateau_mv
            best = best + step * d
            best_pen, mass = p, m2
            drifts += 1
        else:
            step *= shrink
    return best, best_pen, evals


def _try_project(cfg: Configuration, best_pen: float):
    proj = _project(cfg)
    if proj is None:
        return None, best_pen
    p = penalty(proj)
    if p < best_pen:
        return proj, p
    return None, best_pen


def local_search(cfg0: Configuration, params: SearchParams) -> Configuration:
    """Pattern search over poses at fixed edge, with role-projection repair;
    deterministic given (cfg0, params).  Already-covered configurations are
    returned unchanged (penalty-0 short circuit)."""
    return _local_search(cfg0, params, [])[0]


def _local_search(cfg0, params, history, deadline=None, tag=0):
    if deadline is None:
        deadline = time.monotonic() + params.time_budget_s
    best_pen = penalty(cfg0)
    if best_pen == 0.0:
        return cfg0, 0.0
    best_cfg = cfg0
    rng = np.random.default_rng([params.seed, tag])
    mode, edge = cfg0.mode, cfg0.edge

    proj, p = _try_project(best_cfg, best_pen)
    if proj is not None:
        best_cfg, best_pen = proj, p
    if best_pen == 0.0:
        return best_cfg, 0.0

    depth_seq = [PENALTY_DEPTH] if mode == BOUNDARY else [_COARSE_DEPTH, PENALTY_DEPTH]
    vec = _vec(best_cfg)
    for phase, depth in enumerate(depth_seq):
        step0 = params.initial_step if phase == 0 else max(params.initial_step / 4.0, 4e-3)
        vec, pen, _ = _descend(
            vec, edge, mode, depth, params.inner_iterations, step0,
            params.shrink_factor, deadline, history, tag, rng,
        )
        cfg = _cfg(edge, mode, vec)
        true_pen = penalty(cfg)
        if true_pen < best_pen:
            best_cfg, best_pen = cfg, true_pen
        if best_pen == 0.0:
            return best_cfg, 0.0
        proj, p = _try_project(best_cfg, best_pen)
        if proj is not None:
            best_cfg, best_pen = proj, p
            vec = _vec(best_cfg)
        if best_pen == 0.0:
            return best_cfg, 0.0

    # seeded kicks around the best point
    kicks = 0
    while best_pen > 0.0 and kicks < 8 and time.monotonic() < deadline:
        kicks += 1
        kicked = _vec(best_cfg) + rng.normal(0.0, params.sigma_perturb / 3.0, 3 * len(best_cfg.squares))
        vec, pen, _ = _descend(
            kicked, edge, mode, depth_seq[-1], params.inner_iterations // 2,
            params.initial_step / 2.0, params.shrink_factor, deadline, history, tag, rng,
        )
        cfg = _cfg(edge, mode, vec)
        true_pen = penalty(cfg)
        if true_pen < best_pen:
            best_cfg, best_pen = cfg, true_pen
        proj, p = _try_project(cfg, best_pen)
        if proj is not None:
            best_cfg, best_pen = proj, p
        if best_pen == 0.0:
            break
    return best_cfg, best_pen


def _certify(cfg: Configuration) -> CoverageCertificate:
    if cfg.mode == BOUNDARY:
        return verify_boundary(cfg, margin=0.0)[0]
    return verify_interior(cfg, max_depth=PENALTY_DEPTH, margin=0.0)


def _construction_start(n: int, mode: str, edge: float) -> Configuration | None:
    try:
        base = construct_boundary(n) if mode == BOUNDARY else construct_interior(n)
    except ValueError:
        base = None
        for m in range(n - 1, 0, -1):
            try:
                base = construct_boundary(m) if mode == BOUNDARY else construct_interior(m)
                break
            except ValueError:
                continue
        if base is None:
            return None
        spare = PlacedSquare(Point(base.edge / 2.0, base.edge / 2.0), 0.0)
        base = Configuration(
            base.edge, mode, base.squares + (spare,) * (n - len(base.squares))
        )
    if base.edge + 1e-12 < edge:
        return None
    return Configuration(edge, mode, base.squares)


def _random_start(n: int, mode: str, edge: float, rng) -> Configuration:
    squares = tuple(
        PlacedSquare(
            Point(rng.uniform(-0.2, edge + 0.2), rng.uniform(-0.2, edge + 0.2)),
            rng.uniform(0.0, math.pi / 2.0),
        )
        for _ in range(n)
    )
    return Configuration(edge, mode, squares)


def max_edge_search(
    n: int,
    mode: str,
    params: SearchParams,
    warm_start: bool = True,
    extra_starts: list[Configuration] | None = None,
) -> SearchResult:
    """Bisection on the edge in [1, n]; feasibility = some restart certifies
    coverage.  Lower-bound semantics: the reported edge is always certified,
    nothing is claimed about larger edges."""
    if n < 1:
        raise ValueError("n must be >= 1")
    deadline = time.monotonic() + params.time_budget_s
    slice_s = max(5.0, params.time_budget_s / 24.0)
    history: list = []
    best_edge, best_cfg = 0.0, None

    def feasible(edge: float, step_idx: int) -> Configuration | None:
        test_deadline = min(deadline, time.monotonic() + slice_s)
        for r in range(params.restarts):
            if time.monotonic() >= test_deadline:
                return None
            start = None
            if r == 0 and best_cfg is not None:
                start = Configuration(edge, mode, best_cfg.squares)
            elif r == 1 and extra_starts:
                start = Configuration(edge, mode, extra_starts[0].squares)
            elif warm_start and r in (1, 2):
                start = _construction_start(n, mode, edge)
                if start is not None and r == 2:
                    start = perturb_configuration(
                        start, params.sigma_perturb, (params.seed + 1) * 1000 + step_idx
                    )
            if start is None:
                rng = np.random.default_rng([params.seed, step_idx, r])
                start = _random_start(n, mode, edge, rng)
            cfg, pen = _local_search(start, params, history, deadline, tag=r)
            history.append((r, edge, pen))
            if pen == 0.0:
                cert = _certify(cfg)
                if cert.verdict == "covered":
                    return cfg
        return None

    lo, hi = 1.0, float(n)
    step_idx = 0
    cfg = feasible(lo, step_idx)
    if cfg is not None:
        best_edge, best_cfg = lo, cfg
    while hi - lo > _BISECT_TOL and time.monotonic() < deadline:
        step_idx += 1
        mid = 0.5 * (lo + hi)
        cfg = feasible(mid, step_idx)
        if cfg is not None:
            best_edge, best_cfg = mid, cfg
            lo = mid
        else:
            hi = mid
    if best_cfg is None:
        return SearchResult(0.0, None, None, history)
    cert = _certify(best_cfg)
    return SearchResult(best_edge, best_cfg, cert, history)

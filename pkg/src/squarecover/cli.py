"""Command-line interface: construct / verify / optimize / check-paper /
table / render, plus the JSON and SVG serialization of configurations,
certificates, and check reports.

Exit codes: 0 success (covered / all checks pass), 1 gap or check failure,
2 undecided or inconclusive, 3 usage error.
"""

import argparse
import json
import math
import sys

from .constructions import (
    BOUNDARY,
    INTERIOR,
    Configuration,
    construct_boundary,
    construct_interior,
    known_boundary_value,
    known_interior_value,
)
from .geom_core import PlacedSquare, Point, square_corners
from .optimize import SearchParams, max_edge_search
from .paper_checks import CheckReport, run_all_checks
from .verify import (
    DEFAULT_MARGIN,
    DEFAULT_MAX_DEPTH,
    CoverageCertificate,
    GapReport,
    verify_boundary,
    verify_interior,
)

EXIT_OK = 0
EXIT_GAP = 1
EXIT_UNDECIDED = 2
EXIT_USAGE = 3


class ConfigError(ValueError):
    """Config document rejected; `code` is one of bad-json | schema | non-finite."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


_TOP_KEYS = {"schema_version", "edge", "mode", "squares"}
_SQ_KEYS = {"center", "angle"}


def _finite_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError("schema", f"{where}: expected a number, got {value!r}")
    v = float(value)
    if not math.isfinite(v):
        raise ConfigError("non-finite", f"{where}: non-finite number {value!r}")
    return v


def parse_config(text: str) -> Configuration:
    """Strict parse of the config document; unknown fields are rejected."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("bad-json", f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("schema", "top level must be an object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigError("schema", f"unknown fields: {sorted(unknown)}")
    missing = _TOP_KEYS - set(doc)
    if missing:
        raise ConfigError("schema", f"missing fields: {sorted(missing)}")
    if doc["schema_version"] != "1":
        raise ConfigError("schema", f"unsupported schema_version {doc['schema_version']!r}")
    if doc["mode"] not in (INTERIOR, BOUNDARY):
        raise ConfigError("schema", f"mode must be interior or boundary, got {doc['mode']!r}")
    edge = _finite_number(doc["edge"], "edge")
    if edge <= 0.0:
        raise ConfigError("schema", "edge must be positive")
    if not isinstance(doc["squares"], list) or len(doc["squares"]) < 1:
        raise ConfigError("schema", "squares must be a nonempty list")
    squares = []
    for i, entry in enumerate(doc["squares"]):
        where = f"squares[{i}]"
        if not isinstance(entry, dict):
            raise ConfigError("schema", f"{where}: expected an object")
        unknown = set(entry) - _SQ_KEYS
        if unknown:
            raise ConfigError("schema", f"{where}: unknown fields {sorted(unknown)}")
        if set(entry) != _SQ_KEYS:
            raise ConfigError("schema", f"{where}: needs center and angle")
        center = entry["center"]
        if not (isinstance(center, list) and len(center) == 2):
            raise ConfigError("schema", f"{where}: center must be [x, y]")
        x = _finite_number(center[0], f"{where}.center[0]")
        y = _finite_number(center[1], f"{where}.center[1]")
        angle = _finite_number(entry["angle"], f"{where}.angle")
        squares.append(PlacedSquare(Point(x, y), angle))
    return Configuration(edge, doc["mode"], tuple(squares))


def serialize_config(cfg: Configuration) -> str:
    doc = {
        "schema_version": "1",
        "edge": cfg.edge,
        "mode": cfg.mode,
        "squares": [
            {"center": [sq.center.x, sq.center.y], "angle": sq.angle}
            for sq in cfg.squares
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def certificate_to_dict(cert: CoverageCertificate, gap: GapReport | None = None) -> dict:
    doc = {
        "verdict": cert.verdict,
        "witnesses": [[p.x, p.y] for p in cert.witnesses],
        "undecided_area_bound": cert.undecided_area_bound,
        "max_depth_used": cert.max_depth_used,
        "margin": cert.margin,
        "tight": cert.tight,
    }
    if gap is not None:
        doc["gap_report"] = {
            "uncovered": [[iv.side_index, iv.lo, iv.hi] for iv in gap.uncovered],
            "total_uncovered_length": gap.total_uncovered_length,
        }
    return doc


def report_to_json(reports: list[CheckReport]) -> str:
    return json.dumps([r.to_json_dict() for r in reports], indent=2) + "\n"


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------


def _fmt(x: float) -> str:
    return repr(round(x, 9) + 0.0)


def render_svg(
    cfg: Configuration,
    cert: CoverageCertificate | None = None,
    gap: GapReport | None = None,
) -> str:
    """Deterministic SVG: target square dashed, items solid, uncovered
    boundary sub-segments dashed red, gap witnesses marked with crosses."""
    e = cfg.edge
    pad = 0.8
    xs, ys = [0.0, e], [0.0, e]
    for sq in cfg.squares:
        for p in square_corners(sq):
            xs.append(p.x)
            ys.append(p.y)
    lo_x, hi_x = min(xs) - pad, max(xs) + pad
    lo_y, hi_y = min(ys) - pad, max(ys) + pad
    scale = 120.0
    w, h = (hi_x - lo_x) * scale, (hi_y - lo_y) * scale

    def px(x: float) -> str:
        return _fmt((x - lo_x) * scale)

    def py(y: float) -> str:
        return _fmt((hi_y - y) * scale)  # flip so +y is up

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(w)}" height="{_fmt(h)}" '
        f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
        f'<rect width="{_fmt(w)}" height="{_fmt(h)}" fill="white"/>',
    ]
    for sq in cfg.squares:
        pts = " ".join(f"{px(p.x)},{py(p.y)}" for p in square_corners(sq))
        lines.append(
            f'<polygon points="{pts}" fill="#4878a8" fill-opacity="0.18" '
            f'stroke="#1f4e79" stroke-width="1.5"/>'
        )
    target = f"{px(0)},{py(0)} {px(e)},{py(0)} {px(e)},{py(e)} {px(0)},{py(e)}"
    lines.append(
        f'<polygon points="{target}" fill="none" stroke="black" '
        f'stroke-width="1.5" stroke-dasharray="6,4"/>'
    )
    if gap is not None:
        corners = cfg.corners()
        for iv in gap.uncovered:
            a = corners[iv.side_index]
            b = corners[(iv.side_index + 1) % 4]
            for t in (iv.lo, iv.hi):
                pass
            ax = a.x + (b.x - a.x) * iv.lo / e
            ay = a.y + (b.y - a.y) * iv.lo / e
            bx = a.x + (b.x - a.x) * iv.hi / e
            by = a.y + (b.y - a.y) * iv.hi / e
            lines.append(
                f'<line x1="{px(ax)}" y1="{py(ay)}" x2="{px(bx)}" y2="{py(by)}" '
                f'stroke="#c00000" stroke-width="3" stroke-dasharray="2,3"/>'
            )
    if cert is not None:
        for p in cert.witnesses:
            r = 4.0
            cxp, cyp = float(px(p.x)), float(py(p.y))
            lines.append(
                f'<path d="M {_fmt(cxp - r)} {_fmt(cyp - r)} L {_fmt(cxp + r)} {_fmt(cyp + r)} '
                f'M {_fmt(cxp - r)} {_fmt(cyp + r)} L {_fmt(cxp + r)} {_fmt(cyp - r)}" '
                f'stroke="#c00000" stroke-width="2"/>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_check_svg(report: CheckReport) -> str:
    """Line plot of a check report's (x, value, radius) series."""
    data = report.data
    w, h, pad = 640.0, 400.0, 48.0
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(w)}" height="{_fmt(h)}" viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
        f'<rect width="{_fmt(w)}" height="{_fmt(h)}" fill="white"/>',
        f'<text x="{_fmt(pad)}" y="24" font-family="monospace" font-size="14">'
        f"{report.check_id} [{report.verdict}]</text>",
    ]
    if data:
        xs = [d[0] for d in data]
        vs = [d[1] for d in data]
        x_lo, x_hi = min(xs), max(xs)
        v_lo, v_hi = min(vs), max(vs)
        if x_hi == x_lo:
            x_hi = x_lo + 1.0
        if v_hi == v_lo:
            v_hi = v_lo + 1.0

        def sx(x):
            return pad + (x - x_lo) / (x_hi - x_lo) * (w - 2 * pad)

        def sy(v):
            return h - pad - (v - v_lo) / (v_hi - v_lo) * (h - 2 * pad)

        if v_lo < 0.0 < v_hi:
            lines.append(
                f'<line x1="{_fmt(pad)}" y1="{_fmt(sy(0.0))}" x2="{_fmt(w - pad)}" '
                f'y2="{_fmt(sy(0.0))}" stroke="#999999" stroke-width="1"/>'
            )
        pts = " ".join(f"{_fmt(sx(x))},{_fmt(sy(v))}" for x, v in zip(xs, vs))
        lines.append(
            f'<polyline points="{pts}" fill="none" stroke="#1f4e79" stroke-width="1.5"/>'
        )
        lines.append(
            f'<text x="{_fmt(pad)}" y="{_fmt(h - 16)}" font-family="monospace" '
            f'font-size="12">x in [{x_lo:.6g}, {x_hi:.6g}], '
            f"value in [{v_lo:.6g}, {v_hi:.6g}]</text>"
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _verdict_exit(verdict: str) -> int:
    return {"covered": EXIT_OK, "gap": EXIT_GAP, "undecided": EXIT_UNDECIDED}[verdict]


def _run_verify(cfg: Configuration, mode: str, depth: int, margin: float):
    if mode == BOUNDARY:
        cert, gap = verify_boundary(cfg, margin=margin)
    else:
        cert, gap = verify_interior(cfg, max_depth=depth, margin=margin), None
    return cert, gap


def _cmd_construct(args) -> int:
    builder = construct_boundary if args.mode == BOUNDARY else construct_interior
    try:
        cfg = builder(args.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cert, gap = _run_verify(cfg, args.mode, DEFAULT_MAX_DEPTH + 4, 0.0)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize_config(cfg))
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(cfg, cert, gap))
    print(
        f"n={args.n} mode={args.mode} edge={cfg.edge!r} "
        f"verdict={cert.verdict} (tight)"
    )
    return _verdict_exit(cert.verdict)


def _cmd_verify(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = parse_config(fh.read())
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_USAGE
    mode = args.mode or cfg.mode
    margin = 0.0 if args.tight else args.margin
    cert, gap = _run_verify(cfg, mode, args.depth, margin)
    print(json.dumps(certificate_to_dict(cert, gap), indent=2))
    return _verdict_exit(cert.verdict)


def _cmd_optimize(args) -> int:
    params = SearchParams(
        restarts=args.restarts,
        seed=args.seed,
        time_budget_s=args.budget,
    )
    result = max_edge_search(args.n, args.mode, params, warm_start=args.warm)
    if result.config is None:
        print("no certified covering found", file=sys.stderr)
        return EXIT_GAP
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize_config(result.config))
    print(
        f"n={args.n} mode={args.mode} best_edge={result.best_edge!r} "
        f"verdict={result.certificate.verdict} restarts={args.restarts}"
    )
    return _verdict_exit(result.certificate.verdict)


def _cmd_check_paper(args) -> int:
    reports = run_all_checks(args.grid)
    for rep in reports:
        print(
            f"{rep.verdict.upper():<13} {rep.check_id} "
            f"(grid={rep.grid_size}, worst_margin={rep.worst_margin:.3e})"
            + (f" -- {rep.notes}" if rep.notes else "")
        )
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report_to_json(reports))
    if args.svg_dir:
        import os

        os.makedirs(args.svg_dir, exist_ok=True)
        for rep in reports:
            if not rep.data:
                continue
            name = rep.check_id.replace("/", "_") + ".svg"
            with open(os.path.join(args.svg_dir, name), "w", encoding="utf-8") as fh:
                fh.write(render_check_svg(rep))
    verdicts = {rep.verdict for rep in reports}
    if verdicts == {"pass"}:
        print("aggregate: PASS")
        return EXIT_OK
    if "fail" in verdicts:
        print("aggregate: FAIL")
        return EXIT_GAP
    print("aggregate: INCONCLUSIVE")
    return EXIT_UNDECIDED


def _cmd_table(args) -> int:
    rows = []
    for n in range(1, args.max_n + 1):
        sint = known_interior_value(n)
        sbd = known_boundary_value(n) if n >= 2 else None
        rows.append(
            (
                n,
                f"{sint[0]:.10f} = {sint[1]}" if sint else "-",
                f"{sbd[0]:.10f} = {sbd[1]}" if sbd else "-",
                sbd[2] if sbd else (sint[2] if sint else "-"),
            )
        )
    print(f"{'n':>3}  {'interior':<28} {'boundary':<32} provenance")
    for n, si, sb, prov in rows:
        print(f"{n:>3}  {si:<28} {sb:<32} {prov}")
    return EXIT_OK


def _cmd_render(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = parse_config(fh.read())
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cert, gap = _run_verify(cfg, cfg.mode, DEFAULT_MAX_DEPTH, 0.0)
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(render_svg(cfg, cert, gap))
    print(f"wrote {args.svg} (verdict {cert.verdict})")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _Parser(prog="squarecover")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a known-exact configuration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=[INTERIOR, BOUNDARY], required=True)
    p.add_argument("--out")
    p.add_argument("--svg")
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("verify", help="verify a configuration file")
    p.add_argument("config")
    p.add_argument("--mode", choices=[INTERIOR, BOUNDARY])
    p.add_argument("--depth", type=int, default=DEFAULT_MAX_DEPTH)
    p.add_argument("--margin", type=float, default=DEFAULT_MARGIN)
    p.add_argument("--tight", action="store_true", help="margin-0 tight mode")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("optimize", help="search for large coverable edges")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=[INTERIOR, BOUNDARY], required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--budget", type=float, default=120.0)
    p.add_argument("--warm", action="store_true", help="seed from known records")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_optimize)

    p = sub.add_parser("check-paper", help="run the numeric certification suite")
    p.add_argument("--grid", type=int, default=4096)
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--svg-dir", help="emit one SVG plot per check")
    p.set_defaults(fn=_cmd_check_paper)

    p = sub.add_parser("table", help="print known exact values")
    p.add_argument("--max-n", type=int, default=13)
    p.set_defaults(fn=_cmd_table)

    p = sub.add_parser("render", help="render a configuration to SVG")
    p.add_argument("config")
    p.add_argument("--svg", required=True)
    p.set_defaults(fn=_cmd_render)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())

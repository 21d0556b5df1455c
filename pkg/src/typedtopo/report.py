"""Dataset ingestion, pipeline orchestration and the JSON report."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .components import (
    ComponentInterval,
    adjacency,
    branch_boundaries,
    build_branches,
    components_by_track,
    find_anomalies,
    find_holes,
)
from .errors import DatasetParseError, DomainError
from .grid import AreaRef, GridParams, Point, decode, encode, min_sectors, pad, track_sequence
from .locator import ImplicitCurve, map_curve, map_dataset
from .pseudotree import build_pseudotree, find_cycles
from .transforms import TransformSpec

SIG_DIGITS = 12


class PipelineError(Exception):
    """A module error raised while running the pipeline, tagged with its stage."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause


# -- input ----------------------------------------------------------------------


def _number(text: str, line: int) -> float:
    try:
        v = float(text)
    except ValueError:
        raise DatasetParseError(f"not a number: {text.strip()!r}", line) from None
    if not math.isfinite(v):
        raise DatasetParseError(f"non-finite coordinate {text.strip()!r}", line)
    return v


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def _parse_csv(text: str) -> list[Point]:
    pts = []
    first = True
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
            continue
        if first:
            first = False
            # a first row with no numeric field is a header
            if not any(_is_number(f) for f in row):
                continue
        if len(row) != 2:
            raise DatasetParseError(f"expected 2 fields, got {len(row)}", lineno)
        pts.append((_number(row[0], lineno), _number(row[1], lineno)))
    return pts


def _parse_json(text: str) -> list[Point]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DatasetParseError(e.msg, e.lineno) from None
    if not isinstance(data, list):
        raise DatasetParseError("expected a JSON array of [x, y] pairs", 1)
    pts = []
    for k, item in enumerate(data):
        if (
            not isinstance(item, (list, tuple))
            or len(item) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)
        ):
            raise DatasetParseError(f"element {k} is not an [x, y] pair of numbers")
        x, y = float(item[0]), float(item[1])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DatasetParseError(f"element {k} has a non-finite coordinate")
        pts.append((x, y))
    return pts


@dataclass
class Dataset:
    points: list[Point]
    duplicates: int = 0


def parse_text(text: str, fmt: str) -> Dataset:
    if not text.strip():
        raise DomainError("dataset is empty")
    if fmt == "csv":
        raw = _parse_csv(text)
    elif fmt == "json":
        raw = _parse_json(text)
    else:
        raise DomainError(f"unknown dataset format {fmt!r}")
    seen = set()
    pts = []
    for p in raw:
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return Dataset(pts, len(raw) - len(pts))


def parse_dataset(path, fmt: str | None = None) -> Dataset:
    """Read a CSV or JSON point file; the format defaults to the file suffix."""
    path = Path(path)
    if fmt is None:
        fmt = "json" if path.suffix.lower() == ".json" else "csv"
    return parse_text(path.read_text(encoding="utf-8"), fmt)


# -- configuration --------------------------------------------------------------


@dataclass
class RunConfig:
    r: float
    n: int | None = None
    center: Point | str = (0.0, 0.0)
    t_max: int | None = None
    pad: bool = False
    curve: str | None = None
    transforms: list[TransformSpec] = field(default_factory=list)
    input: str | None = None

    def __post_init__(self):
        if not (isinstance(self.r, (int, float)) and self.r > 0 and math.isfinite(self.r)):
            raise DomainError(f"r must be positive, got {self.r!r}")
        if self.n is None:
            self.n = min_sectors(self.r)
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")
        if self.t_max is not None and self.t_max < 1:
            raise DomainError(f"t_max must be >= 1, got {self.t_max}")
        if isinstance(self.center, str) and self.center != "auto":
            raise DomainError(f"center must be a point or 'auto', got {self.center!r}")

    def echo(self) -> dict:
        return {
            "r": self.r,
            "n": self.n,
            "center": self.center if isinstance(self.center, str) else list(self.center),
            "t_max": self.t_max,
            "pad": self.pad,
            "curve": self.curve,
            "transforms": [t.describe() for t in self.transforms],
        }


# -- canonical JSON -------------------------------------------------------------


def _canon(v: Any) -> Any:
    if isinstance(v, float):
        if not math.isfinite(v):
            raise DomainError("report values must be finite")
        v = float(f"{v:.{SIG_DIGITS}g}")
        return 0.0 if v == 0 else v
    if isinstance(v, dict):
        return {str(k): _canon(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_canon(x) for x in v]
    return v


def dumps(report: dict) -> str:
    return json.dumps(_canon(report), sort_keys=True, indent=2) + "\n"


# -- pipeline -------------------------------------------------------------------


def _comp(c: ComponentInterval) -> list[int]:
    return [c.t, c.lo, c.hi]


def _pt(p: Point, center: Point) -> list[float]:
    # report geometry is relative to the grid center
    return [p[0] - center[0], p[1] - center[1]]


def parse_curve(expr: str) -> ImplicitCurve:
    """Compile ``f(x, y)`` or ``lhs = rhs`` into an evaluator of ``lhs - rhs``."""
    import sympy

    x, y = sympy.symbols("x y")
    try:
        if "=" in expr:
            lhs, rhs = expr.split("=", 1)
            f = sympy.sympify(lhs) - sympy.sympify(rhs)
        else:
            f = sympy.sympify(expr)
    except (sympy.SympifyError, SyntaxError, TypeError) as e:
        raise DomainError(f"cannot parse curve {expr!r}: {e}") from None
    extra = f.free_symbols - {x, y}
    if extra:
        raise DomainError(f"curve uses unknown symbols {sorted(map(str, extra))}")
    fn = sympy.lambdify((x, y), f, modules="math")
    return ImplicitCurve(lambda a, b: fn(a, b), expr)


def _stage(name: str, fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except (DomainError, ArithmeticError, ValueError) as e:
        raise PipelineError(name, e) from e


def run_pipeline(config: RunConfig, points: Sequence[Point], duplicates: int = 0) -> dict:
    """Run every analysis step on ``points`` and return the report dict."""
    pts = [(float(x), float(y)) for x, y in points]
    if config.center == "auto":
        shift = (min((p[0] for p in pts), default=0.0), min((p[1] for p in pts), default=0.0))
        pts = [(x - shift[0], y - shift[1]) for x, y in pts]
        center = (0.0, 0.0)
    else:
        shift = (0.0, 0.0)
        center = tuple(map(float, config.center))
    params = GridParams(config.r, config.n, center)

    if config.pad and pts:
        window = (
            min(p[0] for p in pts),
            min(p[1] for p in pts),
            max(p[0] for p in pts),
            max(p[1] for p in pts),
        )
        pts = _stage("padding", pad, params, pts, window)

    mapped = _stage("locator", map_dataset, params, pts)
    cells = list(mapped.cells)
    beyond = 0
    if config.t_max is not None:
        beyond = sum(1 for c in cells if c.t > config.t_max)
        cells = [c for c in cells if c.t <= config.t_max]
    codes = sorted(encode(params, c) for c in cells)

    comps = _stage("track_components", components_by_track, params, cells)
    adj = _stage("track_components", adjacency, params, comps)
    branches = _stage("track_components", build_branches, params, comps, adj)
    holes = _stage("track_components", find_holes, params, branches)
    all_comps = [c for t in comps for c in comps[t]]
    anomalies = find_anomalies(all_comps, branches)
    tree = _stage("pseudotree", build_pseudotree, params, comps, adj)
    cycles = find_cycles(tree)

    per_track: dict[str, list[int]] = {}
    for c in codes:
        per_track.setdefault(str(decode(params, c).t), []).append(c)

    boundaries = []
    for b in branches:
        lower, upper = branch_boundaries(params, b)
        boundaries.append(
            {
                "lower": [_pt(p, center) for p in lower],
                "upper": [_pt(p, center) for p in upper],
            }
        )

    max_t = max((c.t for c in cells), default=0)
    report: dict[str, Any] = {
        "config": config.echo(),
        "grid": {
            "r": params.r,
            "n": params.n,
            "center": list(center),
            "shift": list(shift),
            "t_render": config.t_max if config.t_max is not None else max(max_t, 1),
        },
        "input": {
            "points": len(points),
            "duplicates_removed": duplicates,
            "padded_points": len(pts) - len(points),
            "origin_points": mapped.origin_count,
            "cells_beyond_t_max": beyond,
        },
        "codes": codes,
        "codes_by_track": per_track,
        "track_sequence": track_sequence(params, codes),
        "components": [
            {"cell": _comp(c), "interval": list(c.codes(params)), "occupied": list(c.occupied)}
            for c in sorted(all_comps)
        ],
        "branches": [[_comp(c) for c in b] for b in branches],
        "boundaries": boundaries,
        "holes": [
            {
                "branches": list(h.branches),
                "start": _comp(h.start),
                "end": _comp(h.end),
                "cw_side": [_comp(c) for c in h.cw_side],
                "ccw_side": [_comp(c) for c in h.ccw_side],
                "polygon": [_pt(p, center) for p in h.polygon],
            }
            for h in holes
        ],
        "anomalies": [_comp(c) for c in anomalies],
        "pseudotree": {
            "levels": {
                str(t): [[nd.component.lo, nd.component.hi, *nd.interval] for nd in row]
                for t, row in tree.levels.items()
            },
            "edges": [[_comp(p), _comp(c)] for p, c in tree.edges],
            "shared_children": [[_comp(a), _comp(b), _comp(c)] for a, b, c in tree.shared_children()],
            "cycles": [[_comp(c) for c in cyc] for cyc in cycles],
        },
    }

    if config.curve:
        curve = _stage("curve", parse_curve, config.curve)
        t0 = config.t_max if config.t_max is not None else max(max_t, 1)
        found = _stage("curve", map_curve, params, curve, t0)
        report["curve"] = {
            "expression": config.curve,
            "t0": t0,
            "origin": any(c.is_origin for c in found),
            "codes": sorted(encode(params, c) for c in found if not c.is_origin),
        }

    if config.transforms:
        results = []
        for spec in config.transforms:
            out = _stage("transforms", spec.apply, params, cells)
            results.append({**spec.describe(), "codes": sorted(encode(params, c) for c in out)})
        report["transforms"] = results
    return report


def report_cells(report: dict) -> list[AreaRef]:
    params = report_params(report)
    return [decode(params, c) for c in report["codes"]]


def report_params(report: dict) -> GridParams:
    g = report["grid"]
    return GridParams(g["r"], g["n"], (0.0, 0.0))


def write_report(report: dict, path) -> None:
    Path(path).write_text(dumps(report), encoding="utf-8")

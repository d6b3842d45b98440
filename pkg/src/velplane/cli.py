"""Command-line pipeline and the text/SVG export formats.

Subcommands
-----------
ingest   parse a raw dataset, clean it, write the canonical trips file
analyze  trips file (or raw dataset) -> plane/boundary/pattern exports
noise    reference ladder of colored-noise plane points plus raw series
sweep    analyze at several sampling intervals, one export per interval
plot     render plane exports to a standalone SVG

File formats (comma-separated text with a header row; derived values carry
12 significant digits, the trips file exact shortest floats, and every
writer is deterministic so reruns are byte-identical):

* trips.csv            vehicle_id, trip_id, t, v
* plane.csv            label, kind, entropy, complexity, dimension, delay, n_samples
* boundary.csv         kind, n_cells, entropy, complexity
* patterns.csv         label, pattern, count, probability
* cleaning_report.json the CleaningReport counters
* series_k<K>.csv      value (one raw noise sample per row)

Flags may also come from a JSON config file (``--config``); explicit flags
win. Exit codes: 0 success, 1 unreadable/unusable input, 2 invalid
configuration or values.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
import warnings
from dataclasses import dataclass
from html import escape
from pathlib import Path

import numpy as np

from .ingest import (
    CleaningReport,
    ParseError,
    Trip,
    clean_pipeline,
    parse_beijing,
    parse_borlange,
    parse_mobile_century,
)
from .noisegen import generate_fk_noise, ladder_specs
from .ordinal import OrdinalDistribution, OrdinalPattern, ordinal_distribution
from .quantifiers import BoundaryCurve, PlanePoint, boundary_curves, plane_point
from .resample import assemble_series

__all__ = [
    "PlaneExport",
    "write_trips",
    "read_trips",
    "write_patterns",
    "analyze_trips",
    "render_plane_svg",
    "main",
]

DEFAULT_INTERVALS = {"mobile-century": 3.0, "borlange": 14.0, "beijing": 60.0}
DEFAULT_LADDER = (0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0)
CONTAINMENT_TOL = 1e-9

_F = "{:.12g}".format  # canonical float formatting for every text export


# ---------------------------------------------------------------------------
# canonical trips file
# ---------------------------------------------------------------------------


def write_trips(trips: list[Trip], path) -> None:
    """Write trips to the canonical columnar format, deterministically ordered.

    Timestamps and velocities use shortest exact float formatting rather
    than the 12-significant-digit style of the derived exports: epoch
    timestamps with millisecond resolution need 13+ digits to survive a
    round trip.
    """
    ordered = sorted(trips, key=lambda t: (t.vehicle_id, float(t.times[0]), t.trip_id))
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["vehicle_id", "trip_id", "t", "v"])
        for trip in ordered:
            for t, v in zip(trip.times, trip.velocities):
                writer.writerow([trip.vehicle_id, trip.trip_id, repr(float(t)), repr(float(v))])


def read_trips(path) -> list[Trip]:
    """Read a canonical trips file back into Trip objects."""
    path = Path(path)
    if not path.exists():
        raise ParseError(f"no such trips file: {path}")
    trips: list[Trip] = []
    current: tuple[str, str] | None = None
    times: list[float] = []
    speeds: list[float] = []

    def flush():
        if current is not None:
            trips.append(
                Trip(
                    vehicle_id=current[0],
                    trip_id=current[1],
                    times=np.array(times),
                    velocities=np.array(speeds),
                )
            )

    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["vehicle_id", "trip_id", "t", "v"]:
            raise ParseError(f"{path}: not a canonical trips file")
        for row in reader:
            if len(row) != 4:
                raise ParseError(f"{path}: malformed row {row!r}")
            key = (row[0], row[1])
            if key != current:
                flush()
                current, times, speeds = key, [], []
            times.append(float(row[2]))
            speeds.append(float(row[3]))
    flush()
    if not trips:
        raise ParseError(f"{path}: empty trips file")
    return trips


# ---------------------------------------------------------------------------
# plane export
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class PlaneExport:
    """Plane points plus the boundary curves they must lie between."""

    points: list[PlanePoint]
    minimum: BoundaryCurve
    maximum: BoundaryCurve

    def check_containment(self, tol: float = CONTAINMENT_TOL) -> None:
        for pt in self.points:
            lo = float(self.minimum.complexity_at(pt.entropy))
            hi = float(self.maximum.complexity_at(pt.entropy))
            if not (lo - tol <= pt.complexity <= hi + tol):
                raise ValueError(
                    f"point {pt.label!r} at ({pt.entropy}, {pt.complexity}) "
                    "escapes the boundary curves"
                )

    def write(self, directory) -> None:
        """Write ``plane.csv`` and ``boundary.csv`` under ``directory``."""
        self.check_containment()
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        with (directory / "plane.csv").open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(
                ["label", "kind", "entropy", "complexity", "dimension", "delay", "n_samples"]
            )
            for pt in sorted(self.points, key=lambda p: (p.kind, p.label)):
                writer.writerow(
                    [
                        pt.label,
                        pt.kind,
                        _F(pt.entropy),
                        _F(pt.complexity),
                        pt.dimension,
                        pt.delay,
                        pt.n_samples,
                    ]
                )
        with (directory / "boundary.csv").open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["kind", "n_cells", "entropy", "complexity"])
            for curve in (self.minimum, self.maximum):
                for h, c in zip(curve.entropies, curve.complexities):
                    writer.writerow([curve.kind, curve.n_cells, _F(h), _F(c)])

    @classmethod
    def read(cls, directory) -> "PlaneExport":
        directory = Path(directory)
        plane_path = directory / "plane.csv"
        boundary_path = directory / "boundary.csv"
        if not plane_path.exists() or not boundary_path.exists():
            raise ParseError(f"{directory}: not a plane export (missing csv files)")

        points = []
        with plane_path.open(newline="") as fh:
            reader = csv.reader(fh)
            next(reader)
            for row in reader:
                points.append(
                    PlanePoint(
                        entropy=float(row[2]),
                        complexity=float(row[3]),
                        label=row[0],
                        dimension=int(row[4]),
                        delay=int(row[5]),
                        kind=row[1],
                        n_samples=int(row[6]),
                    )
                )

        samples: dict[str, tuple[list[float], list[float], int]] = {}
        with boundary_path.open(newline="") as fh:
            reader = csv.reader(fh)
            next(reader)
            for kind, n_cells, h, c in reader:
                hs, cs, _ = samples.setdefault(kind, ([], [], int(n_cells)))
                hs.append(float(h))
                cs.append(float(c))
        try:
            curves = {
                kind: BoundaryCurve(np.array(hs), np.array(cs), kind=kind, n_cells=n)
                for kind, (hs, cs, n) in samples.items()
            }
            return cls(points, curves["minimum"], curves["maximum"])
        except (KeyError, ValueError) as exc:
            raise ParseError(f"{directory}: malformed boundary curves ({exc})") from exc


def write_patterns(distributions: list[tuple[str, OrdinalDistribution]], path) -> None:
    """Write full per-label ordinal pattern distributions."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["label", "pattern", "count", "probability"])
        for label, dist in sorted(distributions, key=lambda pair: pair[0]):
            probs = dist.probabilities
            for index in range(dist.n_cells):
                writer.writerow(
                    [
                        label,
                        str(OrdinalPattern.from_index(index, dist.dimension)),
                        int(dist.counts[index]),
                        _F(probs[index]),
                    ]
                )


def write_report(report: CleaningReport, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# analysis orchestration
# ---------------------------------------------------------------------------


def analyze_trips(
    trips: list[Trip], dimension: int, delay: int, interval: float
) -> tuple[list[PlanePoint], list[tuple[str, OrdinalDistribution]]]:
    """Per-vehicle plane points and pattern distributions.

    Vehicles whose assembled series is too short for one pattern window (or
    never moves) are skipped with a warning.
    """
    by_vehicle: dict[str, list[Trip]] = {}
    for trip in trips:
        by_vehicle.setdefault(trip.vehicle_id, []).append(trip)

    points, distributions = [], []
    for vehicle_id in sorted(by_vehicle):
        series = assemble_series(by_vehicle[vehicle_id], interval, dimension, delay)
        if series is None:
            warnings.warn(f"vehicle {vehicle_id} skipped: series unusable at this dimension")
            continue
        dist = ordinal_distribution(series.values, dimension, delay)
        points.append(plane_point(dist, label=vehicle_id, kind="vehicle"))
        distributions.append((vehicle_id, dist))
    return points, distributions


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b")
_NOISE_COLOR = "#444444"


def _marker(shape: str, x: float, y: float, color: str, css: str = "point") -> str:
    size = 4.0
    if shape == "circle":
        return f'<circle class="{css}" cx="{x:.2f}" cy="{y:.2f}" r="{size}" fill="{color}"/>'
    if shape == "square":
        return (
            f'<rect class="{css}" x="{x - size:.2f}" y="{y - size:.2f}" '
            f'width="{2 * size}" height="{2 * size}" fill="{color}"/>'
        )
    if shape == "diamond":
        pts = f"{x:.2f},{y - size:.2f} {x + size:.2f},{y:.2f} {x:.2f},{y + size:.2f} {x - size:.2f},{y:.2f}"
        return f'<polygon class="{css}" points="{pts}" fill="{color}"/>'
    if shape == "triangle":
        pts = f"{x:.2f},{y - size:.2f} {x + size:.2f},{y + size:.2f} {x - size:.2f},{y + size:.2f}"
        return f'<polygon class="{css}" points="{pts}" fill="{color}"/>'
    # cross
    return (
        f'<path class="{css}" d="M {x - size:.2f} {y - size:.2f} L {x + size:.2f} {y + size:.2f} '
        f'M {x - size:.2f} {y + size:.2f} L {x + size:.2f} {y - size:.2f}" '
        f'stroke="{color}" stroke-width="2" fill="none"/>'
    )


_VEHICLE_SHAPES = ("circle", "cross", "square", "diamond")


def render_plane_svg(groups: list[tuple[str, PlaneExport]], path) -> None:
    """Render plane exports to a standalone SVG file.

    Boundary curves are drawn as solid paths; noise ladders as triangles on
    a dashed connector ordered by decreasing entropy; vehicle points get one
    marker shape per export group.
    """
    if not groups:
        raise ValueError("nothing to plot")
    width, height = 720.0, 540.0
    left, right, top, bottom = 72.0, 16.0, 16.0, 56.0

    c_values = [0.05]
    for _, export in groups:
        c_values.append(float(export.maximum.complexities.max()))
        c_values.extend(pt.complexity for pt in export.points)
    c_max = 1.08 * max(c_values)

    def px(h: float) -> float:
        return left + h * (width - left - right)

    def py(c: float) -> float:
        return height - bottom - (c / c_max) * (height - top - bottom)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}">',
        f'<rect x="0" y="0" width="{width:g}" height="{height:g}" fill="white"/>',
        f'<rect class="frame" x="{left}" y="{top}" width="{width - left - right}" '
        f'height="{height - top - bottom}" fill="none" stroke="black"/>',
    ]

    for tick in (0.0, 0.2, 0.4, 0.6, 0.8, 1.0):
        x = px(tick)
        parts.append(
            f'<line x1="{x:.2f}" y1="{height - bottom:.2f}" x2="{x:.2f}" '
            f'y2="{height - bottom + 5:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{height - bottom + 20:.2f}" font-size="12" '
            f'text-anchor="middle">{tick:g}</text>'
        )
    n_yticks = 5
    for i in range(n_yticks + 1):
        c = c_max * i / n_yticks
        y = py(c)
        parts.append(f'<line x1="{left - 5:.2f}" y1="{y:.2f}" x2="{left:.2f}" y2="{y:.2f}" stroke="black"/>')
        parts.append(
            f'<text x="{left - 9:.2f}" y="{y + 4:.2f}" font-size="12" text-anchor="end">{c:.2f}</text>'
        )
    parts.append(
        f'<text x="{(left + width - right) / 2:.2f}" y="{height - 14:.2f}" font-size="14" '
        f'text-anchor="middle">normalized entropy</text>'
    )
    parts.append(
        f'<text x="18" y="{(top + height - bottom) / 2:.2f}" font-size="14" text-anchor="middle" '
        f'transform="rotate(-90 18 {(top + height - bottom) / 2:.2f})">statistical complexity</text>'
    )

    drawn_curves: set[int] = set()
    legend_y = top + 18.0
    for group_index, (name, export) in enumerate(groups):
        if export.minimum.n_cells not in drawn_curves:
            drawn_curves.add(export.minimum.n_cells)
            for curve in (export.minimum, export.maximum):
                coords = " L ".join(
                    f"{px(h):.2f} {py(c):.2f}"
                    for h, c in zip(curve.entropies, curve.complexities)
                )
                parts.append(
                    f'<path class="curve" d="M {coords}" fill="none" stroke="black" stroke-width="1"/>'
                )

        color = _COLORS[group_index % len(_COLORS)]
        shape = _VEHICLE_SHAPES[group_index % len(_VEHICLE_SHAPES)]
        noise_points = sorted(
            (pt for pt in export.points if pt.kind == "noise"),
            key=lambda pt: -pt.entropy,
        )
        if len(noise_points) > 1:
            joined = " ".join(f"{px(pt.entropy):.2f},{py(pt.complexity):.2f}" for pt in noise_points)
            parts.append(
                f'<polyline class="ladder" points="{joined}" fill="none" '
                f'stroke="{_NOISE_COLOR}" stroke-dasharray="6 4"/>'
            )
        for pt in noise_points:
            parts.append(_marker("triangle", px(pt.entropy), py(pt.complexity), _NOISE_COLOR))
        for pt in export.points:
            if pt.kind != "noise":
                parts.append(_marker(shape, px(pt.entropy), py(pt.complexity), color))

        parts.append(_marker(shape, width - right - 150.0, legend_y - 4.0, color, css="legend"))
        parts.append(
            f'<text x="{width - right - 140:.2f}" y="{legend_y:.2f}" font-size="12">'
            f"{escape(name)}</text>"
        )
        legend_y += 18.0

    parts.append("</svg>")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(parts) + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _load_raw_dataset(cfg: dict, report: CleaningReport) -> list[Trip]:
    dataset = cfg["dataset"]
    strict = bool(cfg.get("strict"))
    if dataset == "mobile-century":
        trips = []
        for path in _require(cfg, "input"):
            trips.extend(parse_mobile_century(path, strict=strict, report=report))
        return trips
    if dataset == "borlange":
        mobility = cfg.get("mobility")
        nodes = cfg.get("nodes")
        nodepos = cfg.get("nodepos")
        if not (mobility and nodes and nodepos):
            raise ValueError("borlange ingest needs --mobility, --nodes and --nodepos")
        return parse_borlange(mobility, nodes, nodepos, strict=strict, report=report)
    if dataset == "beijing":
        return parse_beijing(_require(cfg, "input"), strict=strict, report=report)
    raise ValueError(f"cannot ingest dataset kind {dataset!r}")


def _load_trips(cfg: dict) -> list[Trip]:
    if cfg["dataset"] == "canonical":
        return read_trips(_require(cfg, "input")[0])
    report = CleaningReport()
    trips = _load_raw_dataset(cfg, report)
    policy = cfg.get("policy") or cfg["dataset"]
    trips, _ = clean_pipeline(trips, policy, report)
    return trips


def _interval(cfg: dict) -> float:
    value = cfg.get("sample_interval")
    if value is None:
        value = DEFAULT_INTERVALS.get(cfg["dataset"])
    if value is None:
        raise ValueError("--sample-interval is required for canonical trips input")
    value = float(value)
    if value <= 0:
        raise ValueError("--sample-interval must be positive")
    return value


def _write_analysis(trips: list[Trip], cfg: dict, out_dir: Path) -> int:
    dimension, delay = int(cfg["dimension"]), int(cfg["delay"])
    points, distributions = analyze_trips(trips, dimension, delay, _interval(cfg))
    minimum, maximum = boundary_curves(math.factorial(dimension))
    export = PlaneExport(points, minimum, maximum)
    export.write(out_dir)
    write_patterns(distributions, out_dir / "patterns.csv")
    print(f"wrote {len(points)} plane points to {out_dir}")
    return 0


def cmd_ingest(cfg: dict) -> int:
    report = CleaningReport()
    trips = _load_raw_dataset(cfg, report)
    policy = cfg.get("policy") or cfg["dataset"]
    trips, report = clean_pipeline(trips, policy, report)
    out_dir = Path(_require_str(cfg, "out"))
    write_trips(trips, out_dir / "trips.csv")
    write_report(report, out_dir / "cleaning_report.json")
    vehicles = len({t.vehicle_id for t in trips})
    print(
        f"wrote {len(trips)} trips from {vehicles} vehicles to {out_dir} "
        f"({report.retained_observations} observations kept, "
        f"{report.discarded_observations} discarded, {report.skipped_rows} rows skipped)"
    )
    return 0


def cmd_analyze(cfg: dict) -> int:
    return _write_analysis(_load_trips(cfg), cfg, Path(_require_str(cfg, "out")))


def cmd_noise(cfg: dict) -> int:
    ks = [float(k) for k in cfg["ks"]]
    length, seed = int(cfg["length"]), int(cfg["seed"])
    dimension, delay = int(cfg["dimension"]), int(cfg["delay"])
    out_dir = Path(_require_str(cfg, "out"))

    out_dir.mkdir(parents=True, exist_ok=True)
    points = []
    for spec in ladder_specs(ks, length=length, seed=seed):
        series = generate_fk_noise(spec)
        series_path = out_dir / f"series_k{spec.exponent:g}.csv"
        with series_path.open("w", newline="") as fh:
            fh.write("value\n")
            fh.writelines(_F(x) + "\n" for x in series)
        dist = ordinal_distribution(series, dimension, delay)
        points.append(plane_point(dist, label=f"noise k={spec.exponent:g}", kind="noise"))

    minimum, maximum = boundary_curves(math.factorial(dimension))
    PlaneExport(points, minimum, maximum).write(out_dir)
    print(f"wrote {len(points)} noise reference points to {out_dir}")
    return 0


def cmd_sweep(cfg: dict) -> int:
    intervals = [float(v) for v in _require(cfg, "sample_intervals")]
    trips = _load_trips(cfg)
    out_dir = Path(_require_str(cfg, "out"))
    for interval in intervals:
        sub_cfg = dict(cfg, sample_interval=interval)
        _write_analysis(trips, sub_cfg, out_dir / f"ts_{interval:g}")
    return 0


def cmd_plot(cfg: dict) -> int:
    exports = []
    for directory in _require(cfg, "export"):
        exports.append((Path(directory).name, PlaneExport.read(directory)))
    out = Path(_require_str(cfg, "out"))
    render_plane_svg(exports, out)
    print(f"wrote {out}")
    return 0


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------


def _require(cfg: dict, key: str) -> list:
    value = cfg.get(key)
    if not value:
        raise ValueError(f"--{key.replace('_', '-')} is required")
    return value if isinstance(value, list) else [value]


def _require_str(cfg: dict, key: str) -> str:
    value = cfg.get(key)
    if not value:
        raise ValueError(f"--{key.replace('_', '-')} is required")
    return str(value)


def _float_list(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    return [float(part) for part in str(text).replace(",", " ").split()]


_DEFAULTS: dict[str, dict] = {
    "ingest": {"dataset": None, "strict": False},
    "analyze": {"dataset": "canonical", "dimension": 4, "delay": 1, "strict": False},
    "noise": {
        "ks": list(DEFAULT_LADDER),
        "length": 2**16,
        "seed": 0,
        "dimension": 4,
        "delay": 1,
    },
    "sweep": {"dataset": "canonical", "dimension": 4, "delay": 1, "strict": False},
    "plot": {},
}


def _add_common_io(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON file of defaults; explicit flags override it")
    sub.add_argument("--out", help="output directory (or file for plot)")


def _add_dataset_args(sub: argparse.ArgumentParser, kinds: tuple[str, ...]) -> None:
    sub.add_argument("--dataset", choices=kinds)
    sub.add_argument("--input", nargs="+", help="dataset files/directory (or trips.csv)")
    sub.add_argument("--mobility", help="borlange mobility file")
    sub.add_argument("--nodes", help="borlange nodes file")
    sub.add_argument("--nodepos", help="borlange node positions file")
    sub.add_argument("--policy", choices=("mobile-century", "borlange", "beijing"))
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--strict", dest="strict", action="store_true", default=None)
    group.add_argument("--lenient", dest="strict", action="store_false", default=None)


def _add_analysis_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--dimension", type=int)
    sub.add_argument("--delay", type=int)
    sub.add_argument("--sample-interval", dest="sample_interval", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="velplane",
        description="Locate velocity series on the complexity-entropy plane.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    sub = subparsers.add_parser("ingest", help="parse and clean a raw dataset")
    _add_dataset_args(sub, ("mobile-century", "borlange", "beijing"))
    _add_common_io(sub)

    sub = subparsers.add_parser("analyze", help="compute per-vehicle plane points")
    _add_dataset_args(sub, ("mobile-century", "borlange", "beijing", "canonical"))
    _add_analysis_args(sub)
    _add_common_io(sub)

    sub = subparsers.add_parser("noise", help="reference ladder of colored noise")
    sub.add_argument("--ks", type=_float_list, help="spectral exponents, e.g. '0,0.5,1'")
    sub.add_argument("--length", type=int)
    sub.add_argument("--seed", type=int)
    _add_analysis_args(sub)
    _add_common_io(sub)

    sub = subparsers.add_parser("sweep", help="analyze at several sampling intervals")
    _add_dataset_args(sub, ("mobile-century", "borlange", "beijing", "canonical"))
    _add_analysis_args(sub)
    sub.add_argument(
        "--sample-intervals",
        dest="sample_intervals",
        type=_float_list,
        help="comma-separated sampling intervals in seconds",
    )
    _add_common_io(sub)

    sub = subparsers.add_parser("plot", help="render plane exports as SVG")
    sub.add_argument("--export", nargs="+", help="plane export directories")
    _add_common_io(sub)

    return parser


_COMMANDS = {
    "ingest": cmd_ingest,
    "analyze": cmd_analyze,
    "noise": cmd_noise,
    "sweep": cmd_sweep,
    "plot": cmd_plot,
}


def _merge_config(args: argparse.Namespace) -> dict:
    cfg = dict(_DEFAULTS[args.command])
    if getattr(args, "config", None):
        config_path = Path(args.config)
        if not config_path.exists():
            raise ParseError(f"no such config file: {config_path}")
        loaded = json.loads(config_path.read_text())
        if not isinstance(loaded, dict):
            raise ValueError("config file must hold a JSON object")
        cfg.update(loaded)
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        cfg[key] = value
    if "ks" in cfg:
        cfg["ks"] = _float_list(cfg["ks"])
    if cfg.get("sample_intervals") is not None:
        cfg["sample_intervals"] = _float_list(cfg["sample_intervals"])
    return cfg


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = _merge_config(args)
        if args.command in ("ingest", "analyze", "sweep") and not cfg.get("dataset"):
            raise ValueError("--dataset is required")
        return _COMMANDS[args.command](cfg)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Parsers for the three GPS log formats and the velocity cleaning pipeline.

All parsers emit :class:`Trip` objects whose observations are
``(timestamp seconds, velocity m/s)`` pairs, whatever the source units:

* Mobile Century logs: one comma-separated file per vehicle with columns
  ``unix_ms, lat, lon, speed_mph``; one trip per vehicle.
* Borlange logs: three row-aligned files. ``mobility`` holds
  ``vehicle, day, trip, start, end`` with ``YYYY-MM-DD HH:MM:SS`` times,
  ``nodes`` holds the start/end node ids of each interval, and ``nodepos``
  maps node ids to coordinates. Note the published sample stores nodepos
  columns as ``id, longitude, latitude`` (longitude first). Velocities are
  displacement over elapsed time per row.
* Beijing taxi logs: comma-separated day files with columns
  ``vehicle, utc_s, lat*1e5, lon*1e5, raw_speed``. The raw speed column has
  no documented unit and is ignored; velocities come from consecutive
  fixes, and trips are the maximal runs of nonzero velocity.

By default parsers are lenient: malformed rows are skipped and counted in
the :class:`CleaningReport`. With ``strict=True`` they raise
:class:`ParseError` instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

__all__ = [
    "ParseError",
    "GpsFix",
    "Trip",
    "CleaningReport",
    "EARTH_RADIUS_M",
    "MPH_TO_MPS",
    "POLICIES",
    "geodesic_distance",
    "interval_velocity",
    "parse_mobile_century",
    "parse_borlange",
    "parse_beijing",
    "clean_pipeline",
]

EARTH_RADIUS_M = 6_371_008.8  # mean Earth radius
MPH_TO_MPS = 1609.344 / 3600.0

POLICIES = ("mobile-century", "borlange", "beijing")

_TIME_FORMAT = "%Y-%m-%d %H:%M:%S"


class ParseError(ValueError):
    """Unusable input file (malformed in strict mode, empty, misaligned)."""


@dataclass(frozen=True)
class GpsFix:
    """One raw position record."""

    timestamp: float
    lat: float
    lon: float
    speed: float | None = None
    speed_unit: str | None = None


@dataclass(frozen=True, eq=False)
class Trip:
    """Timestamped velocity observations of one vehicle between stops."""

    vehicle_id: str
    trip_id: str
    times: np.ndarray
    velocities: np.ndarray

    def __post_init__(self):
        if self.times.shape != self.velocities.shape or self.times.ndim != 1:
            raise ValueError("times and velocities must be equal-length 1-d arrays")

    def __len__(self) -> int:
        return self.times.size

    def replace_observations(self, times: np.ndarray, velocities: np.ndarray) -> "Trip":
        return Trip(self.vehicle_id, self.trip_id, times, velocities)


@dataclass
class CleaningReport:
    """Bookkeeping for every observation that enters the pipeline.

    ``parsed_observations`` always equals ``retained_observations`` plus all
    the ``discarded_*`` counters; parse-stage drops (malformed rows and
    unusable fixes) are tracked separately since they never become
    observations.
    """

    skipped_rows: int = 0
    discarded_fixes: int = 0
    parsed_observations: int = 0
    discarded_nan: int = 0
    discarded_inf: int = 0
    discarded_negative: int = 0
    discarded_outlier_observations: int = 0
    discarded_trip_observations: int = 0
    outlier_trips: int = 0
    short_trips: int = 0
    retained_observations: int = 0
    trip_mean_lower_quartile: float | None = None
    trip_mean_upper_quartile: float | None = None
    pooled_upper_quartile: float | None = None

    @property
    def discarded_observations(self) -> int:
        return (
            self.discarded_nan
            + self.discarded_inf
            + self.discarded_negative
            + self.discarded_outlier_observations
            + self.discarded_trip_observations
        )

    def check_conservation(self) -> None:
        if self.parsed_observations != self.retained_observations + self.discarded_observations:
            raise ValueError("cleaning report does not conserve observations")

    def to_dict(self) -> dict:
        return asdict(self)


def geodesic_distance(point_a, point_b):
    """Great-circle distance in meters between (lat, lon) points in degrees.

    Haversine formula on a sphere of mean radius; accepts scalars or
    broadcastable arrays, returns float for scalar input.
    """
    lat1, lon1 = np.asarray(point_a[0], dtype=float), np.asarray(point_a[1], dtype=float)
    lat2, lon2 = np.asarray(point_b[0], dtype=float), np.asarray(point_b[1], dtype=float)
    for lat, lon in ((lat1, lon1), (lat2, lon2)):
        if not (np.all(np.isfinite(lat)) and np.all(np.isfinite(lon))):
            raise ValueError("non-finite coordinate")
        if np.any(np.abs(lat) > 90.0) or np.any(np.abs(lon) > 180.0):
            raise ValueError("coordinate out of range")
    phi1, phi2 = np.radians(lat1), np.radians(lat2)
    dphi = phi2 - phi1
    dlam = np.radians(lon2) - np.radians(lon1)
    a = np.sin(dphi / 2.0) ** 2 + np.cos(phi1) * np.cos(phi2) * np.sin(dlam / 2.0) ** 2
    d = 2.0 * EARTH_RADIUS_M * np.arcsin(np.sqrt(np.clip(a, 0.0, 1.0)))
    return float(d) if np.ndim(d) == 0 else d


def interval_velocity(displacement_m: float, elapsed_s: float) -> float:
    """Average speed over an interval; NaN when the interval has no duration."""
    if elapsed_s == 0.0:
        return math.nan
    return displacement_m / elapsed_s


def _new_report(report: CleaningReport | None) -> CleaningReport:
    return report if report is not None else CleaningReport()


def _skip(report: CleaningReport, strict: bool, message: str) -> None:
    if strict:
        raise ParseError(message)
    report.skipped_rows += 1


def parse_mobile_century(
    path, strict: bool = False, report: CleaningReport | None = None
) -> list[Trip]:
    """Parse Mobile Century logs: one file per vehicle, one trip per file.

    ``path`` may be a single log file or a directory of them. Timestamps are
    converted from Unix milliseconds to seconds and speeds from mi/h to m/s.
    """
    report = _new_report(report)
    root = Path(path)
    if root.is_dir():
        files = sorted(p for p in root.iterdir() if p.is_file())
        if not files:
            raise ParseError(f"no files in {root}")
    else:
        if not root.exists():
            raise ParseError(f"no such file: {root}")
        files = [root]

    trips = []
    for file in files:
        times, speeds = [], []
        for line_no, line in enumerate(file.read_text().splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 4:
                _skip(report, strict, f"{file.name}:{line_no}: expected 4 columns")
                continue
            try:
                t_ms, lat, lon, mph = (float(p) for p in parts)
            except ValueError:
                _skip(report, strict, f"{file.name}:{line_no}: unparseable row")
                continue
            if not all(map(math.isfinite, (t_ms, lat, lon, mph))) or abs(lat) > 90 or abs(lon) > 180:
                _skip(report, strict, f"{file.name}:{line_no}: invalid field values")
                continue
            t = t_ms / 1000.0
            if times and t <= times[-1]:
                report.discarded_fixes += 1
                continue
            times.append(t)
            speeds.append(mph * MPH_TO_MPS)
        if not times:
            raise ParseError(f"no usable rows in {file}")
        report.parsed_observations += len(times)
        trips.append(
            Trip(
                vehicle_id=file.stem,
                trip_id="0",
                times=np.array(times),
                velocities=np.array(speeds),
            )
        )
    return trips


def _parse_epoch(stamp: str) -> float:
    return datetime.strptime(stamp.strip(), _TIME_FORMAT).replace(tzinfo=timezone.utc).timestamp()


def _read_node_positions(path) -> dict[int, tuple[float, float]]:
    """Node id -> (lat, lon). File rows are ``id lon lat`` (longitude first)."""
    positions = {}
    for line in Path(path).read_text().splitlines():
        line = line.replace(",", " ").strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"nodepos row needs 3 fields, got {line!r}")
        node, lon, lat = int(parts[0]), float(parts[1]), float(parts[2])
        positions[node] = (lat, lon)
    return positions


def parse_borlange(
    mobility_path,
    nodes_path,
    nodepos_path,
    strict: bool = False,
    report: CleaningReport | None = None,
) -> list[Trip]:
    """Parse the three row-aligned Borlange files into per-(day, trip) trips.

    Each aligned row pair gives one observation: speed is the great-circle
    distance between the two node positions over the elapsed time, stamped
    at the interval midpoint. Zero-duration rows produce NaN velocities for
    the cleaning stage to discard.
    """
    report = _new_report(report)
    mobility_rows = [l for l in Path(mobility_path).read_text().splitlines() if l.strip()]
    node_rows = [l for l in Path(nodes_path).read_text().splitlines() if l.strip()]
    if len(mobility_rows) != len(node_rows):
        raise ParseError(
            f"mobility has {len(mobility_rows)} rows but nodes has {len(node_rows)}"
        )
    positions = _read_node_positions(nodepos_path)

    groups: dict[tuple[str, str, str], list[tuple[float, float]]] = {}
    for line_no, (mob_line, node_line) in enumerate(zip(mobility_rows, node_rows), start=1):
        mob_parts = [p.strip() for p in mob_line.split(",")]
        node_parts = node_line.split()
        if len(mob_parts) != 5 or len(node_parts) != 2:
            _skip(report, strict, f"row {line_no}: malformed mobility/nodes pair")
            continue
        try:
            vehicle, day, trip = mob_parts[0], mob_parts[1], mob_parts[2]
            t_start = _parse_epoch(mob_parts[3])
            t_end = _parse_epoch(mob_parts[4])
            node_a, node_b = int(node_parts[0]), int(node_parts[1])
        except ValueError:
            _skip(report, strict, f"row {line_no}: unparseable mobility/nodes pair")
            continue
        if node_a not in positions or node_b not in positions:
            report.discarded_fixes += 1
            continue
        if t_end < t_start:
            report.discarded_fixes += 1
            continue
        displacement = geodesic_distance(positions[node_a], positions[node_b])
        speed = interval_velocity(displacement, t_end - t_start)
        groups.setdefault((vehicle, day, trip), []).append((0.5 * (t_start + t_end), speed))

    trips = []
    for (vehicle, day, trip), observations in groups.items():
        observations.sort(key=lambda pair: pair[0])
        times, speeds = [], []
        for t, v in observations:
            if times and t <= times[-1]:
                report.discarded_fixes += 1
                continue
            times.append(t)
            speeds.append(v)
        if not times:
            continue
        report.parsed_observations += len(times)
        trips.append(
            Trip(
                vehicle_id=vehicle,
                trip_id=f"{day}-{trip}",
                times=np.array(times),
                velocities=np.array(speeds),
            )
        )
    if not trips:
        raise ParseError("no usable rows in Borlange input")
    return trips


def parse_beijing(
    paths, strict: bool = False, report: CleaningReport | None = None
) -> list[Trip]:
    """Parse Beijing taxi day files (text form) into zero-speed-delimited trips.

    Coordinates are stored scaled by 1e5; the trailing raw speed column is
    ignored. Velocities are computed between consecutive fixes of the same
    vehicle and stamped at interval midpoints; runs of nonzero velocity
    become trips, zero-velocity intervals separate them.
    """
    report = _new_report(report)
    if isinstance(paths, (str, Path)):
        paths = [paths]
    files = [Path(p) for p in paths]
    if not files:
        raise ParseError("no Beijing input files given")

    fixes: dict[str, list[GpsFix]] = {}
    for file in files:
        if not file.exists():
            raise ParseError(f"no such file: {file}")
        for line_no, line in enumerate(file.read_text().splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 5:
                _skip(report, strict, f"{file.name}:{line_no}: expected 5 columns")
                continue
            try:
                vehicle = parts[0]
                t = float(parts[1])
                lat = float(parts[2]) * 1e-5
                lon = float(parts[3]) * 1e-5
                raw_speed = float(parts[4])  # unit unknown: recorded, never used
            except ValueError:
                _skip(report, strict, f"{file.name}:{line_no}: unparseable row")
                continue
            if not all(map(math.isfinite, (t, lat, lon))) or abs(lat) > 90 or abs(lon) > 180:
                _skip(report, strict, f"{file.name}:{line_no}: invalid field values")
                continue
            fixes.setdefault(vehicle, []).append(
                GpsFix(timestamp=t, lat=lat, lon=lon, speed=raw_speed, speed_unit=None)
            )

    trips = []
    for vehicle in sorted(fixes):
        records = fixes[vehicle]
        kept: list[GpsFix] = []
        for record in records:
            if kept and record.timestamp <= kept[-1].timestamp:
                report.discarded_fixes += 1
                continue
            kept.append(record)
        if len(kept) < 2:
            continue

        run_times: list[float] = []
        run_speeds: list[float] = []
        trip_count = 0

        def close_run():
            nonlocal trip_count
            if run_times:
                report.parsed_observations += len(run_times)
                trips.append(
                    Trip(
                        vehicle_id=vehicle,
                        trip_id=str(trip_count),
                        times=np.array(run_times),
                        velocities=np.array(run_speeds),
                    )
                )
                trip_count += 1
                run_times.clear()
                run_speeds.clear()

        for a, b in zip(kept, kept[1:]):
            speed = interval_velocity(
                geodesic_distance((a.lat, a.lon), (b.lat, b.lon)), b.timestamp - a.timestamp
            )
            if speed == 0.0:
                close_run()
                continue
            run_times.append(0.5 * (a.timestamp + b.timestamp))
            run_speeds.append(speed)
        close_run()
    return trips


def _drop_observations(trip: Trip, mask: np.ndarray) -> Trip:
    return trip.replace_observations(trip.times[mask], trip.velocities[mask])


def clean_pipeline(
    trips: list[Trip], policy: str, report: CleaningReport | None = None
) -> tuple[list[Trip], CleaningReport]:
    """Remove invalid observations and policy-defined outliers.

    First NaN, Inf and negative velocities are dropped, then the policy's
    outlier rule runs:

    * ``borlange``: trips whose mean velocity falls outside the interquartile
      range of all trip means are dropped entirely, then observations above
      the upper quartile of the remaining pooled velocities are dropped.
    * ``beijing``: observations above the upper quartile of the pooled
      velocities are dropped.
    * ``mobile-century``: nothing to do.

    Trips left with fewer than two observations are dropped (a velocity
    series needs at least one interval). Raises when nothing survives.
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; expected one of {POLICIES}")
    report = _new_report(report)
    if report.parsed_observations == 0:
        report.parsed_observations = int(sum(len(t) for t in trips))

    finite_trips = []
    for trip in trips:
        v = trip.velocities
        nan_mask = np.isnan(v)
        inf_mask = np.isinf(v)
        neg_mask = np.isfinite(v) & (v < 0.0)
        report.discarded_nan += int(nan_mask.sum())
        report.discarded_inf += int(inf_mask.sum())
        report.discarded_negative += int(neg_mask.sum())
        keep = ~(nan_mask | inf_mask | neg_mask)
        finite_trips.append(_drop_observations(trip, keep))

    survivors = [t for t in finite_trips if len(t) > 0]

    if policy == "borlange" and survivors:
        means = np.array([float(t.velocities.mean()) for t in survivors])
        lower, upper = np.quantile(means, 0.25), np.quantile(means, 0.75)
        report.trip_mean_lower_quartile = float(lower)
        report.trip_mean_upper_quartile = float(upper)
        kept_trips = []
        for trip, mean in zip(survivors, means):
            if lower <= mean <= upper:
                kept_trips.append(trip)
            else:
                report.outlier_trips += 1
                report.discarded_trip_observations += len(trip)
        survivors = kept_trips

    if policy in ("borlange", "beijing") and survivors:
        pooled = np.concatenate([t.velocities for t in survivors])
        upper = float(np.quantile(pooled, 0.75))
        report.pooled_upper_quartile = upper
        trimmed = []
        for trip in survivors:
            keep = trip.velocities <= upper
            report.discarded_outlier_observations += int((~keep).sum())
            trimmed.append(_drop_observations(trip, keep))
        survivors = trimmed

    # Velocities are already in m/s at this point (parsers standardize), so
    # the final unit pass has nothing to convert.

    cleaned = []
    for trip in survivors:
        if len(trip) >= 2:
            cleaned.append(trip)
        else:
            report.short_trips += 1
            report.discarded_trip_observations += len(trip)

    report.retained_observations = int(sum(len(t) for t in cleaned))
    report.check_conservation()
    if not cleaned:
        raise ValueError("all data discarded")
    return cleaned, report

"""Equal-interval resampling of trip velocities.

Trips are resampled one at a time with a shape-preserving piecewise cubic
Hermite interpolant and then concatenated per vehicle; nothing is
interpolated across the gaps between trips, since the vehicle was not
observed there.

The interpolant limits knot derivatives the Fritsch-Carlson way: interior
derivatives start from the mean of the adjacent secant slopes, are zeroed
at local extrema (adjacent secants of opposing sign), and are capped at
three times the smaller adjacent secant magnitude, which keeps the cubic
monotone wherever the data is monotone. Endpoint derivatives use the
one-sided three-point formula with the same zeroing and cap against the
boundary secant.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .ingest import Trip
from .validation import check_delay, check_dimension

__all__ = ["VelocitySeries", "pchip_interpolate", "resample_trip", "assemble_series"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class VelocitySeries:
    """Equally sampled velocities of one vehicle.

    ``junctions`` holds the start index of every trip segment after the
    first, so windows spanning the artificial trip joins can be masked by
    downstream analysis if desired.
    """

    vehicle_id: str
    values: np.ndarray
    interval: float
    trip_count: int
    junctions: tuple[int, ...] = ()

    def __len__(self) -> int:
        return self.values.size


def _limited_derivatives(t: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Knot derivatives with Fritsch-Carlson limiting."""
    widths = np.diff(t)
    secants = np.diff(v) / widths
    n = t.size
    if n == 2:
        return np.array([secants[0], secants[0]])

    d = np.empty(n)
    for i in range(1, n - 1):
        left, right = secants[i - 1], secants[i]
        if left * right <= 0.0:
            d[i] = 0.0
        else:
            mean = 0.5 * (left + right)
            cap = 3.0 * min(abs(left), abs(right))
            d[i] = math.copysign(min(abs(mean), cap), mean)

    for idx, (h0, h1, s0, s1) in (
        (0, (widths[0], widths[1], secants[0], secants[1])),
        (n - 1, (widths[-1], widths[-2], secants[-1], secants[-2])),
    ):
        est = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1)
        if est * s0 <= 0.0:
            d[idx] = 0.0
        else:
            d[idx] = math.copysign(min(abs(est), 3.0 * abs(s0)), est)
    return d


def pchip_interpolate(times, values, query_times) -> np.ndarray:
    """Shape-preserving cubic Hermite interpolation at the query times.

    Parameters
    ----------
    times : array-like
        Strictly increasing knot times, at least two.
    values : array-like
        Knot values, same length.
    query_times : array-like
        Times to evaluate at; must lie within the knot span (extrapolation
        is refused).

    Returns
    -------
    numpy.ndarray
        Interpolated values: exact at knots, free of overshoot beyond the
        local data range on monotone segments.
    """
    t = np.asarray(times, dtype=np.float64)
    v = np.asarray(values, dtype=np.float64)
    q = np.asarray(query_times, dtype=np.float64)
    if t.ndim != 1 or t.shape != v.shape or t.size < 2:
        raise ValueError("need at least two knots with matching values")
    if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
        raise ValueError("non-finite knot")
    if np.any(np.diff(t) == 0.0):
        raise ValueError("duplicate knot times")
    if np.any(np.diff(t) < 0.0):
        raise ValueError("knot times must be strictly increasing")
    if q.size and (q.min() < t[0] or q.max() > t[-1]):
        raise ValueError("extrapolation refused")

    d = _limited_derivatives(t, v)
    idx = np.clip(np.searchsorted(t, q, side="right") - 1, 0, t.size - 2)
    h = t[idx + 1] - t[idx]
    s = (q - t[idx]) / h
    s2, s3 = s * s, s * s * s
    basis_v0 = 2.0 * s3 - 3.0 * s2 + 1.0
    basis_d0 = s3 - 2.0 * s2 + s
    basis_v1 = -2.0 * s3 + 3.0 * s2
    basis_d1 = s3 - s2
    return basis_v0 * v[idx] + basis_d0 * h * d[idx] + basis_v1 * v[idx + 1] + basis_d1 * h * d[idx + 1]


def resample_trip(trip: Trip, interval: float) -> np.ndarray:
    """Velocities of one trip sampled every ``interval`` seconds.

    The grid starts at the first observation and extends as far as the last
    one; a trip shorter than one interval yields a single sample. Negative
    interpolated values are clamped to zero (velocities are speeds).
    """
    if len(trip) < 2:
        raise ValueError(f"trip {trip.vehicle_id}/{trip.trip_id} has fewer than 2 observations")
    if not interval > 0.0:
        raise ValueError("sampling interval must be positive")
    span = float(trip.times[-1] - trip.times[0])
    n_samples = int(math.floor(span / interval * (1.0 + 1e-12))) + 1
    grid = trip.times[0] + interval * np.arange(n_samples)
    grid[-1] = min(grid[-1], trip.times[-1])  # guard float overshoot
    sampled = pchip_interpolate(trip.times, trip.velocities, grid)
    negatives = int((sampled < 0.0).sum())
    if negatives:
        logger.info(
            "clamped %d negative interpolated velocities in trip %s/%s",
            negatives,
            trip.vehicle_id,
            trip.trip_id,
        )
        sampled = np.maximum(sampled, 0.0)
    return sampled


def assemble_series(
    trips: list[Trip],
    interval: float,
    dimension: int = 4,
    delay: int = 1,
) -> VelocitySeries | None:
    """Concatenate one vehicle's resampled trips into a velocity series.

    Trips are resampled independently and joined without bridging the gaps
    between them; segment boundaries are recorded in ``junctions``. Returns
    ``None`` (vehicle omitted) when the vehicle never moves, when the
    concatenated series is shorter than one pattern window of the given
    ``dimension`` and ``delay``, or when no trip is resamplable.
    """
    d = check_dimension(dimension)
    tau = check_delay(delay)
    usable = sorted((t for t in trips if len(t) >= 2), key=lambda t: float(t.times[0]))
    if not usable:
        return None
    vehicle_ids = {t.vehicle_id for t in usable}
    if len(vehicle_ids) != 1:
        raise ValueError(f"assemble_series expects one vehicle, got {sorted(vehicle_ids)}")

    segments = [resample_trip(trip, interval) for trip in usable]
    values = np.concatenate(segments)
    min_length = (d - 1) * tau + 1
    if values.size < min_length:
        logger.info(
            "vehicle %s dropped: series of %d samples is shorter than one window (%d)",
            usable[0].vehicle_id,
            values.size,
            min_length,
        )
        return None
    if not np.any(values > 0.0):
        logger.info("vehicle %s dropped: stopped for the whole recording", usable[0].vehicle_id)
        return None

    starts = np.cumsum([len(s) for s in segments[:-1]])
    return VelocitySeries(
        vehicle_id=usable[0].vehicle_id,
        values=values,
        interval=float(interval),
        trip_count=len(segments),
        junctions=tuple(int(i) for i in starts),
    )

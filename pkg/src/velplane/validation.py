"""Input validation helpers shared by the functional API and the estimators."""

from __future__ import annotations

import math

import numpy as np

PROBABILITY_SUM_TOL = 1e-9

MIN_DIMENSION = 2
MAX_DIMENSION = 9


def as_series(values, name: str = "series") -> np.ndarray:
    """Coerce ``values`` to a 1-d float64 array without NaN/Inf checks."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        arr = np.ravel(arr)
    if arr.size == 0:
        raise ValueError(f"{name} is empty")
    return arr


def check_finite_series(values, name: str = "series") -> np.ndarray:
    """Coerce to 1-d float64 and reject NaN/Inf samples."""
    arr = as_series(values, name)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"non-finite sample in {name}")
    return arr


def check_dimension(dimension: int) -> int:
    """Validate an embedding dimension (factorials stay table sized)."""
    d = int(dimension)
    if d != dimension or not MIN_DIMENSION <= d <= MAX_DIMENSION:
        raise ValueError(
            f"dimension must be an integer in [{MIN_DIMENSION}, {MAX_DIMENSION}], got {dimension!r}"
        )
    return d


def check_delay(delay: int) -> int:
    """Validate an embedding delay (in samples)."""
    t = int(delay)
    if t != delay or t < 1:
        raise ValueError(f"delay must be a positive integer, got {delay!r}")
    return t


def check_probabilities(p, name: str = "distribution") -> np.ndarray:
    """Validate a probability vector: non-negative entries summing to one.

    Returns the vector as a float64 array. The sum is allowed to deviate
    from one by at most ``PROBABILITY_SUM_TOL``.
    """
    arr = np.asarray(p, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"{name} must be a non-empty 1-d vector")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite probabilities")
    if np.any(arr < 0.0):
        raise ValueError(f"{name} contains negative probabilities")
    total = float(arr.sum())
    if not math.isclose(total, 1.0, rel_tol=0.0, abs_tol=PROBABILITY_SUM_TOL):
        raise ValueError(f"{name} sums to {total!r}, expected 1")
    return arr


def check_series_collection(X) -> list[np.ndarray]:
    """Coerce a collection of (possibly ragged) series to a list of 1-d arrays.

    Accepts a 2-d array (one series per row), a single 1-d array (treated as
    one series) or any iterable of 1-d array-likes.
    """
    if isinstance(X, np.ndarray):
        if X.ndim == 1:
            return [check_finite_series(X)]
        if X.ndim == 2:
            return [check_finite_series(row) for row in X]
        raise ValueError(f"expected 1-d or 2-d input, got ndim={X.ndim}")
    series = [check_finite_series(x, name=f"series[{i}]") for i, x in enumerate(X)]
    if not series:
        raise ValueError("empty collection of series")
    return series

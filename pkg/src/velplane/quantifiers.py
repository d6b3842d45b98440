"""Entropy and statistical-complexity quantifiers over probability vectors.

The workhorse pair is the normalized Shannon entropy and the product-form
statistical complexity built on the Jensen-Shannon distance between a
distribution and the uniform one. Complexity vanishes both for one-hot and
uniform distributions, so together with entropy it spans a two-dimensional
plane whose attainable region is bounded by two curves depending only on the
number of cells; :func:`boundary_curves` traces those bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .ordinal import OrdinalDistribution
from .validation import check_probabilities

__all__ = [
    "PlanePoint",
    "BoundaryCurve",
    "shannon_entropy",
    "normalized_entropy",
    "jensen_shannon_disequilibrium",
    "statistical_complexity",
    "plane_point",
    "boundary_curves",
]


@dataclass(frozen=True)
class PlanePoint:
    """A series' location on the complexity-entropy plane."""

    entropy: float
    complexity: float
    label: str = ""
    dimension: int | None = None
    delay: int | None = None
    kind: str = "vehicle"
    n_samples: int | None = None


@dataclass(frozen=True, eq=False)
class BoundaryCurve:
    """Samples of one edge of the attainable complexity range.

    ``entropies`` is strictly increasing over [0, 1] with both endpoints at
    zero complexity; ``kind`` is ``"minimum"`` or ``"maximum"``.
    """

    entropies: np.ndarray
    complexities: np.ndarray
    kind: str
    n_cells: int

    def __post_init__(self):
        if self.kind not in ("minimum", "maximum"):
            raise ValueError(f"kind must be 'minimum' or 'maximum', got {self.kind!r}")
        h = self.entropies
        if h.shape != self.complexities.shape or h.ndim != 1 or h.size < 2:
            raise ValueError("curve samples must be two equal-length 1-d arrays")
        if np.any(np.diff(h) <= 0):
            raise ValueError("entropy samples must be strictly increasing")
        if h[0] != 0.0 or h[-1] != 1.0:
            raise ValueError("curve must span entropy 0 to 1")
        if self.complexities[0] != 0.0 or self.complexities[-1] != 0.0:
            raise ValueError("curve endpoints must sit at zero complexity")

    def complexity_at(self, entropy) -> np.ndarray | float:
        """Linear interpolation of the curve at the given entropy value(s)."""
        return np.interp(entropy, self.entropies, self.complexities)


def _neg_xlnx_sum(values: np.ndarray, multiplicities) -> np.ndarray:
    """-sum(m_i * v_i * ln v_i) with the 0 * ln 0 = 0 convention, elementwise."""
    v = np.asarray(values, dtype=np.float64)
    contrib = np.zeros_like(v)
    nz = v > 0.0
    contrib[nz] = v[nz] * np.log(v[nz])
    return -(np.asarray(multiplicities) * contrib).sum(axis=0)


def shannon_entropy(p) -> float:
    """Shannon entropy in nats; zero cells contribute nothing.

    Maximal (``ln N``) for the uniform distribution; zero when a single cell
    carries all the mass.
    """
    arr = check_probabilities(p)
    nz = arr[arr > 0.0]
    return float(-(nz * np.log(nz)).sum()) + 0.0


def normalized_entropy(p) -> float:
    """Shannon entropy divided by its maximum ``ln N``; in [0, 1]."""
    arr = check_probabilities(p)
    n = arr.size
    if n < 2:
        raise ValueError("normalized entropy requires at least 2 cells")
    return float(np.clip(shannon_entropy(arr) / math.log(n), 0.0, 1.0)) + 0.0


@lru_cache(maxsize=None)
def _max_divergence_to_uniform(n_cells: int) -> float:
    """Jensen-Shannon divergence between a one-hot and the uniform distribution.

    This is the largest divergence any distribution can reach, so its inverse
    normalizes the disequilibrium to [0, 1]. Evaluated from the defining
    distributions rather than a closed form; cached per cell count.
    """
    delta = np.zeros(n_cells)
    delta[0] = 1.0
    uniform = np.full(n_cells, 1.0 / n_cells)
    mix = 0.5 * (delta + uniform)
    return shannon_entropy(mix) - 0.5 * shannon_entropy(delta) - 0.5 * shannon_entropy(uniform)


def jensen_shannon_disequilibrium(p) -> float:
    """Normalized Jensen-Shannon divergence to the uniform distribution.

    Zero when ``p`` is uniform, one when it is one-hot.
    """
    arr = check_probabilities(p)
    n = arr.size
    if n < 2:
        raise ValueError("disequilibrium requires at least 2 cells")
    uniform = np.full(n, 1.0 / n)
    mix = 0.5 * (arr + uniform)
    divergence = (
        shannon_entropy(mix) - 0.5 * shannon_entropy(arr) - 0.5 * shannon_entropy(uniform)
    )
    return float(np.clip(divergence / _max_divergence_to_uniform(n), 0.0, 1.0))


def statistical_complexity(p) -> float:
    """Product of normalized entropy and disequilibrium; in [0, 1].

    Vanishes for both fully ordered (one-hot) and fully random (uniform)
    distributions; positive in between.
    """
    arr = check_probabilities(p)
    return normalized_entropy(arr) * jensen_shannon_disequilibrium(arr)


def plane_point(dist: OrdinalDistribution, label: str = "", kind: str = "vehicle") -> PlanePoint:
    """Locate an ordinal-pattern distribution on the complexity-entropy plane."""
    probs = dist.probabilities
    return PlanePoint(
        entropy=normalized_entropy(probs),
        complexity=statistical_complexity(probs),
        label=label,
        dimension=dist.dimension,
        delay=dist.delay,
        kind=kind,
        n_samples=dist.total_windows + (dist.dimension - 1) * dist.delay,
    )


def _two_level_plane(p_grid: np.ndarray, n_nonzero: int, n_cells: int):
    """(entropy, complexity) for distributions with one cell at ``p``, the
    other ``n_nonzero - 1`` nonzero cells sharing the rest equally, and
    ``n_cells - n_nonzero`` empty cells. Vectorized over ``p_grid``."""
    n = n_cells
    rest = (1.0 - p_grid) / (n_nonzero - 1)
    log_n = math.log(n)

    entropy_nats = _neg_xlnx_sum(
        np.stack([p_grid, rest]), np.array([[1.0], [n_nonzero - 1.0]])
    )
    mix_special = 0.5 * (p_grid + 1.0 / n)
    mix_rest = 0.5 * (rest + 1.0 / n)
    mix_empty = np.full_like(p_grid, 0.5 / n)
    mix_entropy = _neg_xlnx_sum(
        np.stack([mix_special, mix_rest, mix_empty]),
        np.array([[1.0], [n_nonzero - 1.0], [float(n - n_nonzero)]]),
    )
    divergence = mix_entropy - 0.5 * entropy_nats - 0.5 * log_n
    diseq = divergence / _max_divergence_to_uniform(n)
    h = entropy_nats / log_n
    return h, h * diseq


def _strictly_increasing(h: np.ndarray, c: np.ndarray, prefer_high: bool):
    """Sort by entropy and drop stalls so the samples strictly increase.

    The 1e-9 spacing keeps the samples strictly ordered even after a round
    trip through 12-significant-digit text serialization.
    """
    order = np.argsort(h, kind="stable")
    h, c = h[order], c[order]
    kept = [0]
    for i in range(1, h.size):
        if h[i] > h[kept[-1]] + 1e-9:
            kept.append(i)
        elif (c[i] > c[kept[-1]]) == prefer_high and c[i] != c[kept[-1]]:
            kept[-1] = i
    return h[kept], c[kept]


@lru_cache(maxsize=32)
def _cached_boundary_curves(n_cells: int, resolution: int):
    n = n_cells

    # Minimum: one cell at p in [1/n, 1], the rest equal. Entropy falls from
    # 1 to 0 as p grows, tracing the lower edge.
    p = np.linspace(1.0, 1.0 / n, resolution)
    h_min, c_min = _two_level_plane(p, n, n)
    h_min, c_min = _strictly_increasing(h_min, c_min, prefer_high=False)
    h_min[0], c_min[0] = 0.0, 0.0
    h_min[-1], c_min[-1] = 1.0, 0.0
    minimum = BoundaryCurve(h_min, c_min, kind="minimum", n_cells=n)

    # Maximum: upper envelope of the families with m empty cells, one cell at
    # p in [0, 1/(n - m)] and the rest equal. Consecutive families join where
    # both reduce to a uniform distribution over n - m - 1 cells, so entropy
    # advances continuously from 0 (one-hot) to 1 (uniform).
    per_family = max(resolution // (n - 1), 8)
    h_parts, c_parts = [], []
    for n_nonzero in range(2, n + 1):
        p = np.linspace(0.0, 1.0 / n_nonzero, per_family)
        if n_nonzero > 2:
            p = p[1:]  # joint point already emitted by the previous family
        h, c = _two_level_plane(p, n_nonzero, n)
        h_parts.append(h)
        c_parts.append(c)
    h_max = np.concatenate(h_parts)
    c_max = np.concatenate(c_parts)
    h_max, c_max = _strictly_increasing(h_max, c_max, prefer_high=True)
    h_max[0], c_max[0] = 0.0, 0.0
    h_max[-1], c_max[-1] = 1.0, 0.0
    maximum = BoundaryCurve(h_max, c_max, kind="maximum", n_cells=n)

    return minimum, maximum


def boundary_curves(n_cells: int, resolution: int = 1024) -> tuple[BoundaryCurve, BoundaryCurve]:
    """Trace the minimum- and maximum-complexity curves for ``n_cells`` cells.

    Parameters
    ----------
    n_cells : int
        Number of distribution cells (``dimension!`` for ordinal patterns).
    resolution : int, optional
        Approximate number of samples per curve, at least 64.

    Returns
    -------
    (BoundaryCurve, BoundaryCurve)
        The minimum and maximum curves, in that order.
    """
    if n_cells < 2:
        raise ValueError("boundary curves require at least 2 cells")
    if resolution < 64:
        raise ValueError("resolution must be at least 64")
    return _cached_boundary_curves(int(n_cells), int(resolution))

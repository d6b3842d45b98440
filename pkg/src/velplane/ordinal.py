"""Rank-order symbolization of time series.

Each window of ``dimension`` samples (spaced ``delay`` apart) is reduced to
the permutation describing the rank order of its values in chronological
order: the window ``[5, 10, 15, 20]`` becomes the pattern ``0123`` (each
sample higher than the last), ``[20, 15, 10, 5]`` becomes ``3210``. Equal
values are ranked stably, the earlier sample receiving the lower rank.
Counting patterns over all sliding windows yields a probability distribution
over the ``dimension!`` possible permutations, which is invariant under any
strictly increasing transform of the data.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .validation import check_delay, check_dimension, check_finite_series

__all__ = [
    "OrdinalPattern",
    "OrdinalDistribution",
    "ShortSeriesWarning",
    "pattern_of_window",
    "ordinal_distribution",
]

_FACTORIAL = tuple(math.factorial(i) for i in range(11))

# Fewer than this many windows per possible pattern triggers a warning.
_WINDOWS_PER_CELL_WARN = 100


class ShortSeriesWarning(UserWarning):
    """Series is short relative to the number of possible patterns."""


@dataclass(frozen=True)
class OrdinalPattern:
    """A permutation of ``0..dimension-1`` giving each sample's rank.

    ``ranks[i]`` is the rank of the window's i-th (chronological) sample,
    0 for the smallest value. The canonical ``index`` is the Lehmer code of
    the rank vector, a bijection onto ``[0, dimension! - 1]``.
    """

    ranks: tuple[int, ...]

    def __post_init__(self):
        d = len(self.ranks)
        if d < 2 or sorted(self.ranks) != list(range(d)):
            raise ValueError(f"ranks must be a permutation of 0..{d - 1}, got {self.ranks!r}")

    @property
    def dimension(self) -> int:
        return len(self.ranks)

    @property
    def index(self) -> int:
        """Lehmer code of the rank vector."""
        code = 0
        d = len(self.ranks)
        for i, r in enumerate(self.ranks):
            smaller_later = sum(1 for s in self.ranks[i + 1 :] if s < r)
            code += smaller_later * _FACTORIAL[d - 1 - i]
        return code

    @classmethod
    def from_index(cls, index: int, dimension: int) -> "OrdinalPattern":
        """Inverse of :attr:`index`; decodes a Lehmer code."""
        d = check_dimension(dimension)
        if not 0 <= index < _FACTORIAL[d]:
            raise ValueError(f"index {index} out of range for dimension {d}")
        remaining = list(range(d))
        ranks = []
        rest = index
        for i in range(d):
            digit, rest = divmod(rest, _FACTORIAL[d - 1 - i])
            ranks.append(remaining.pop(digit))
        return cls(tuple(ranks))

    def __str__(self) -> str:
        return "".join(str(r) for r in self.ranks)


@dataclass(frozen=True, eq=False)
class OrdinalDistribution:
    """Pattern counts over all sliding windows of a series.

    ``counts[i]`` is the number of windows whose pattern has canonical index
    ``i``; there are ``dimension!`` cells and ``total_windows`` windows in
    total (series length minus ``(dimension - 1) * delay``).
    """

    dimension: int
    delay: int
    counts: np.ndarray
    total_windows: int

    def __post_init__(self):
        if self.counts.shape != (_FACTORIAL[self.dimension],):
            raise ValueError("counts length must equal dimension!")
        if int(self.counts.sum()) != self.total_windows:
            raise ValueError("counts must sum to the number of windows")

    @property
    def n_cells(self) -> int:
        return _FACTORIAL[self.dimension]

    @property
    def probabilities(self) -> np.ndarray:
        """Relative pattern frequencies (sums to one)."""
        return self.counts / float(self.total_windows)

    def pattern_probability(self, pattern: OrdinalPattern) -> float:
        return float(self.counts[pattern.index]) / self.total_windows


def pattern_of_window(window) -> OrdinalPattern:
    """Rank the samples of one window, ties broken by order of occurrence.

    Parameters
    ----------
    window : array-like
        Exactly ``dimension`` finite values in chronological order.

    Returns
    -------
    OrdinalPattern
    """
    w = np.asarray(window, dtype=np.float64)
    if w.ndim != 1 or not 2 <= w.size <= 9:
        raise ValueError("window length mismatch")
    if not np.all(np.isfinite(w)):
        raise ValueError("non-finite sample")
    order = np.argsort(w, kind="stable")
    ranks = np.empty(w.size, dtype=np.int64)
    ranks[order] = np.arange(w.size)
    return OrdinalPattern(tuple(int(r) for r in ranks))


def ordinal_distribution(series, dimension: int, delay: int = 1) -> OrdinalDistribution:
    """Count ordinal patterns over all sliding windows of a series.

    Windows start at every sample (stride one); a window at position ``s``
    holds samples ``s, s + delay, ..., s + (dimension - 1) * delay``. Emits
    :class:`ShortSeriesWarning` when there are fewer than 100 windows per
    possible pattern, since the counts are then statistically thin.

    Parameters
    ----------
    series : array-like
        Finite values; length must be at least ``(dimension - 1) * delay + 1``.
    dimension : int
        Pattern length, between 2 and 9.
    delay : int, optional
        Spacing between window samples, default 1.

    Returns
    -------
    OrdinalDistribution
    """
    d = check_dimension(dimension)
    tau = check_delay(delay)
    x = check_finite_series(series)
    m = x.size
    n_windows = m - (d - 1) * tau
    if n_windows < 1:
        raise ValueError(
            f"series of length {m} is too short for dimension {d} and delay {tau}"
        )
    n_cells = _FACTORIAL[d]
    if m < _WINDOWS_PER_CELL_WARN * n_cells:
        warnings.warn(
            f"series length {m} is small for {n_cells} possible patterns; "
            "pattern frequencies may be unreliable",
            ShortSeriesWarning,
            stacklevel=2,
        )

    idx = np.arange(n_windows)[:, None] + tau * np.arange(d)[None, :]
    windows = x[idx]
    order = np.argsort(windows, axis=1, kind="stable")
    ranks = np.empty_like(order)
    np.put_along_axis(ranks, order, np.arange(d)[None, :], axis=1)

    codes = np.zeros(n_windows, dtype=np.int64)
    for i in range(d - 1):
        smaller_later = (ranks[:, i + 1 :] < ranks[:, i : i + 1]).sum(axis=1)
        codes += smaller_later * _FACTORIAL[d - 1 - i]

    counts = np.bincount(codes, minlength=n_cells).astype(np.int64)
    return OrdinalDistribution(dimension=d, delay=tau, counts=counts, total_windows=n_windows)

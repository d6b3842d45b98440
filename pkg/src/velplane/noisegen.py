"""Synthesis of stochastic series with a power-law (``f^-k``) spectrum.

The generator draws uniform white noise on [-0.5, 0.5], shapes its discrete
spectrum by ``f^(-k/2)`` with the DC bin zeroed (so the output has zero mean
and no divide-by-zero at f = 0), and inverse-transforms back to a real
series. Frequency is the FFT bin index under unit sampling; only the slope
of the spectrum is meaningful, not absolute units. The Nyquist bin, present
for even lengths, is kept real so the spectrum stays conjugate-symmetric.

Randomness comes from ``numpy.random.default_rng`` (PCG64, 128-bit state):
the same ``NoiseSpec`` always reproduces the same series bit for bit, which
is this module's reproducibility contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ordinal import ordinal_distribution
from .quantifiers import PlanePoint, plane_point
from .validation import check_finite_series

__all__ = [
    "NoiseSpec",
    "SlopeFit",
    "generate_fk_noise",
    "spectral_slope",
    "spectral_slope_fit",
    "ladder_specs",
    "reference_ladder",
]

MIN_LENGTH = 1024
MAX_EXPONENT = 4.0


@dataclass(frozen=True)
class NoiseSpec:
    """Recipe for one noise series: spectral exponent, length and seed."""

    exponent: float
    length: int
    seed: int = 0

    def __post_init__(self):
        if not (math.isfinite(self.exponent) and 0.0 <= self.exponent <= MAX_EXPONENT):
            raise ValueError(f"exponent must be in [0, {MAX_EXPONENT}], got {self.exponent!r}")
        if self.length < MIN_LENGTH:
            raise ValueError(f"length must be at least {MIN_LENGTH}, got {self.length!r}")


def generate_fk_noise(spec: NoiseSpec) -> np.ndarray:
    """Generate a real series whose power spectrum decays as ``f^-exponent``.

    Deterministic in ``spec.seed``; the output has zero mean (the DC bin is
    zeroed) and length ``spec.length``.
    """
    rng = np.random.default_rng(spec.seed)
    white = rng.uniform(-0.5, 0.5, spec.length)
    spectrum = np.fft.fft(white)

    n = spec.length
    bins = np.arange(n)
    freq = np.minimum(bins, n - bins)  # symmetric bin-index frequency
    shaping = np.zeros(n)
    shaping[1:] = freq[1:] ** (-spec.exponent / 2.0)
    spectrum *= shaping
    if n % 2 == 0:
        spectrum[n // 2] = spectrum[n // 2].real  # Nyquist stays real

    # The shaped spectrum of a real input is already conjugate-symmetric, so
    # the inverse transform is real up to rounding noise, which we drop.
    return np.fft.ifft(spectrum).real


@dataclass(frozen=True)
class SlopeFit:
    """Least-squares fit of log power against log frequency."""

    slope: float
    intercept: float
    r_squared: float
    n_bins: int
    band: tuple[float, float]


def _fit_band(n: int, band: tuple[float, float] | None) -> tuple[float, float]:
    """Default band: two decades centred on the usable bins' geometric mean,
    excluding DC and the top 10% of bins."""
    top = 0.9 * (n // 2)
    if band is not None:
        lo, hi = band
        if not 1 <= lo < hi:
            raise ValueError(f"invalid fit band {band!r}")
        return float(lo), float(min(hi, n // 2))
    mid = 0.5 * math.log10(top)  # log-midpoint of [1, top]
    lo = max(1.0, 10.0 ** (mid - 1.0))
    hi = min(top, 10.0 ** (mid + 1.0))
    return lo, hi


def spectral_slope_fit(series, band: tuple[float, float] | None = None) -> SlopeFit:
    """Fit the spectral decay exponent of a series from its periodogram.

    Parameters
    ----------
    series : array-like
        At least 1024 samples.
    band : (low, high), optional
        Frequency band (in bin-index units) for the fit. Defaults to the
        middle two decades of the positive-frequency bins, excluding DC and
        the top 10% where the raw periodogram is least reliable.

    Returns
    -------
    SlopeFit
        ``slope`` estimates ``-exponent``; ``r_squared`` close to zero marks
        series that do not follow a power law (a pure tone, for instance).
    """
    x = check_finite_series(series)
    n = x.size
    if n < MIN_LENGTH:
        raise ValueError(f"need at least {MIN_LENGTH} samples, got {n}")
    if np.ptp(x) == 0.0:
        raise ValueError("zero variance")

    power = np.abs(np.fft.rfft(x)) ** 2
    freq = np.arange(power.size, dtype=np.float64)
    lo, hi = _fit_band(n, band)
    mask = (freq >= lo) & (freq <= hi) & (power > 0.0)
    if mask.sum() < 8:
        raise ValueError("too few periodogram bins in the fit band")

    log_f = np.log10(freq[mask])
    log_p = np.log10(power[mask])
    slope, intercept = np.polyfit(log_f, log_p, 1)
    residual = log_p - (slope * log_f + intercept)
    total = log_p - log_p.mean()
    ss_tot = float(total @ total)
    r_squared = 1.0 - float(residual @ residual) / ss_tot if ss_tot > 0 else 0.0
    return SlopeFit(
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r_squared,
        n_bins=int(mask.sum()),
        band=(lo, hi),
    )


def spectral_slope(series, band: tuple[float, float] | None = None) -> float:
    """Fitted log-log spectral slope; approximately ``-k`` for ``f^-k`` noise."""
    return spectral_slope_fit(series, band).slope


def ladder_specs(exponents, length: int = 2**16, seed: int = 0) -> list[NoiseSpec]:
    """One :class:`NoiseSpec` per exponent, with independent child seeds.

    Child seeds are spawned deterministically from ``seed``, so the same
    ladder arguments always produce the same specs (and thus series).
    """
    exponents = list(exponents)
    children = np.random.SeedSequence(seed).spawn(len(exponents))
    return [
        NoiseSpec(
            exponent=float(k),
            length=length,
            seed=int(child.generate_state(1, dtype=np.uint64)[0]),
        )
        for k, child in zip(exponents, children)
    ]


def reference_ladder(
    exponents,
    length: int = 2**16,
    seed: int = 0,
    dimension: int = 4,
    delay: int = 1,
) -> list[PlanePoint]:
    """Plane points for a ladder of noise exponents, one per value.

    Each rung gets an independent child stream spawned from ``seed``, so the
    full ladder is reproducible and insensitive to the order of ``exponents``
    evaluation.
    """
    points = []
    for spec in ladder_specs(exponents, length=length, seed=seed):
        series = generate_fk_noise(spec)
        dist = ordinal_distribution(series, dimension=dimension, delay=delay)
        points.append(plane_point(dist, label=f"noise k={spec.exponent:g}", kind="noise"))
    return points

"""Colored-noise synthesis and spectral verification."""

import numpy as np
import pytest

from velplane.noisegen import (
    NoiseSpec,
    generate_fk_noise,
    ladder_specs,
    reference_ladder,
    spectral_slope,
    spectral_slope_fit,
)


class TestNoiseSpec:
    def test_rejects_short_length(self):
        with pytest.raises(ValueError, match="length"):
            NoiseSpec(exponent=1.0, length=512)

    @pytest.mark.parametrize("k", [-0.5, 4.5, float("nan")])
    def test_rejects_bad_exponent(self, k):
        with pytest.raises(ValueError, match="exponent"):
            NoiseSpec(exponent=k, length=4096)


class TestGenerator:
    def test_deterministic_bit_for_bit(self):
        spec = NoiseSpec(exponent=1.5, length=4096, seed=77)
        a = generate_fk_noise(spec)
        b = generate_fk_noise(NoiseSpec(exponent=1.5, length=4096, seed=77))
        assert np.array_equal(a, b)

    def test_different_seeds_differ(self):
        a = generate_fk_noise(NoiseSpec(1.0, 4096, seed=1))
        b = generate_fk_noise(NoiseSpec(1.0, 4096, seed=2))
        assert not np.array_equal(a, b)

    @pytest.mark.parametrize("k", [0.0, 1.0, 2.5, 4.0])
    def test_zero_mean(self, k):
        x = generate_fk_noise(NoiseSpec(k, 2**14, seed=3))
        assert abs(x.mean()) <= 1e-6 * x.std()

    def test_real_output_and_length(self):
        x = generate_fk_noise(NoiseSpec(2.0, 5000, seed=5))  # odd-ish length, no Nyquist bin
        assert x.dtype == np.float64
        assert x.shape == (5000,)

    def test_white_noise_slope_flat(self):
        x = generate_fk_noise(NoiseSpec(0.0, 2**16, seed=11))
        assert abs(spectral_slope(x)) <= 0.1

    def test_brown_noise_slope(self):
        x = generate_fk_noise(NoiseSpec(2.0, 2**16, seed=11))
        assert spectral_slope(x) == pytest.approx(-2.0, abs=0.15)


class TestSpectralSlope:
    def test_pink_and_black_noise(self):
        assert spectral_slope(generate_fk_noise(NoiseSpec(1.0, 2**16, 4))) == pytest.approx(
            -1.0, abs=0.15
        )
        assert spectral_slope(generate_fk_noise(NoiseSpec(3.0, 2**16, 4))) == pytest.approx(
            -3.0, abs=0.2
        )

    def test_average_error_over_seeds(self):
        for k in (0.0, 1.0, 2.0, 3.0):
            errors = [
                abs(spectral_slope(generate_fk_noise(NoiseSpec(k, 2**16, seed))) + k)
                for seed in range(10)
            ]
            assert np.mean(errors) <= 0.2

    def test_constant_series_rejected(self):
        with pytest.raises(ValueError, match="zero variance"):
            spectral_slope(np.full(4096, 1.23))

    def test_short_series_rejected(self):
        with pytest.raises(ValueError, match="at least"):
            spectral_slope(np.random.default_rng(0).normal(size=512))

    def test_sinusoid_flagged_unreliable(self):
        t = np.arange(8192)
        fit = spectral_slope_fit(np.sin(2 * np.pi * 0.0321 * t))
        assert fit.r_squared < 0.5  # line spectrum: power-law fit explains little

    def test_power_law_fit_is_trusted(self):
        fit = spectral_slope_fit(generate_fk_noise(NoiseSpec(3.0, 2**16, 2)))
        assert fit.r_squared > 0.6
        assert fit.n_bins >= 8

    def test_custom_band(self):
        x = generate_fk_noise(NoiseSpec(2.0, 2**16, 8))
        fit = spectral_slope_fit(x, band=(10, 1000))
        assert fit.band == (10.0, 1000.0)
        assert fit.slope == pytest.approx(-2.0, abs=0.2)

    def test_invalid_band(self):
        x = generate_fk_noise(NoiseSpec(1.0, 4096, 0))
        with pytest.raises(ValueError, match="band"):
            spectral_slope_fit(x, band=(100, 10))


class TestReferenceLadder:
    def test_empty_ladder(self):
        assert reference_ladder([]) == []

    def test_single_white_rung_near_corner(self):
        (point,) = reference_ladder([0.0], length=2**16, seed=0)
        assert point.entropy > 0.97
        assert point.complexity < 0.03
        assert point.kind == "noise"
        assert point.label == "noise k=0"

    def test_entropy_strictly_decreasing_in_exponent(self):
        ks = [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0]
        points = reference_ladder(ks, length=2**16, seed=1, dimension=4)
        entropies = [p.entropy for p in points]
        assert all(a > b for a, b in zip(entropies, entropies[1:]))

    def test_reproducible_specs(self):
        a = ladder_specs([0.0, 2.0], length=2048, seed=9)
        b = ladder_specs([0.0, 2.0], length=2048, seed=9)
        assert a == b
        assert a[0].seed != a[1].seed

    def test_labels_carry_exponent(self):
        points = reference_ladder([0.5, 2.0], length=2048, seed=0)
        assert [p.label for p in points] == ["noise k=0.5", "noise k=2"]

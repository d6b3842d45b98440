"""Entropy, disequilibrium, complexity and the plane boundary curves."""

import math

import numpy as np
import pytest

from velplane.noisegen import NoiseSpec, generate_fk_noise
from velplane.ordinal import ordinal_distribution
from velplane.quantifiers import (
    BoundaryCurve,
    boundary_curves,
    jensen_shannon_disequilibrium,
    normalized_entropy,
    plane_point,
    shannon_entropy,
    statistical_complexity,
)

# Term-by-term oracle values for P = {1/2, 1/2, 0, 0, 0, 0} over 6 cells,
# frozen from a direct math.log evaluation of each sum.
P6 = np.array([0.5, 0.5, 0.0, 0.0, 0.0, 0.0])
P6_DISEQUILIBRIUM = 0.7011416757020305
P6_COMPLEXITY = 0.27123862551446104


def one_hot(n, hot=0):
    p = np.zeros(n)
    p[hot] = 1.0
    return p


class TestShannonEntropy:
    def test_uniform_is_log_n(self):
        assert shannon_entropy(np.full(24, 1 / 24)) == pytest.approx(math.log(24), abs=1e-12)

    def test_delta_is_zero(self):
        assert shannon_entropy(one_hot(10)) == 0.0

    def test_two_level_example(self):
        assert shannon_entropy(P6) == pytest.approx(math.log(2), abs=1e-12)

    def test_negative_probability_rejected(self):
        with pytest.raises(ValueError, match="negative"):
            shannon_entropy(np.array([0.6, 0.5, -0.1]))

    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError, match="sums to"):
            shannon_entropy(np.array([0.5, 0.4]))


class TestNormalizedEntropy:
    @pytest.mark.parametrize("n", [2, 6, 24, 120])
    def test_uniform_is_one(self, n):
        assert normalized_entropy(np.full(n, 1 / n)) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("n", [2, 6, 24, 120])
    def test_delta_is_zero(self, n):
        assert normalized_entropy(one_hot(n)) == 0.0

    def test_two_level_example(self):
        assert normalized_entropy(P6) == pytest.approx(math.log(2) / math.log(6), abs=1e-12)

    def test_single_cell_rejected(self):
        with pytest.raises(ValueError):
            normalized_entropy(np.array([1.0]))


class TestDisequilibrium:
    @pytest.mark.parametrize("n", [2, 6, 24, 120, 720])
    def test_one_hot_is_one(self, n):
        assert jensen_shannon_disequilibrium(one_hot(n, hot=n // 2)) == pytest.approx(
            1.0, abs=1e-12
        )

    @pytest.mark.parametrize("n", [2, 6, 24])
    def test_uniform_is_zero(self, n):
        assert jensen_shannon_disequilibrium(np.full(n, 1 / n)) == pytest.approx(0.0, abs=1e-12)

    def test_against_term_by_term_oracle(self):
        assert jensen_shannon_disequilibrium(P6) == pytest.approx(
            P6_DISEQUILIBRIUM, abs=1e-12
        )


class TestStatisticalComplexity:
    def test_uniform_is_zero(self):
        assert statistical_complexity(np.full(24, 1 / 24)) == pytest.approx(0.0, abs=1e-12)

    def test_one_hot_is_zero(self):
        assert statistical_complexity(one_hot(24)) == 0.0

    def test_oracle_composition(self):
        assert statistical_complexity(P6) == pytest.approx(P6_COMPLEXITY, abs=1e-12)

    def test_bounds_and_permutation_symmetry(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            p = rng.dirichlet(np.ones(12))
            h = normalized_entropy(p)
            q = jensen_shannon_disequilibrium(p)
            c = statistical_complexity(p)
            assert 0.0 <= h <= 1.0 and 0.0 <= q <= 1.0 and 0.0 <= c <= 1.0
            shuffled = rng.permutation(p)
            assert normalized_entropy(shuffled) == pytest.approx(h, abs=1e-12)
            assert jensen_shannon_disequilibrium(shuffled) == pytest.approx(q, abs=1e-12)
            assert statistical_complexity(shuffled) == pytest.approx(c, abs=1e-12)


class TestBoundaryCurves:
    def test_endpoints(self):
        minimum, maximum = boundary_curves(24)
        for curve in (minimum, maximum):
            assert (curve.entropies[0], curve.complexities[0]) == (0.0, 0.0)
            assert (curve.entropies[-1], curve.complexities[-1]) == (1.0, 0.0)

    def test_dirichlet_containment(self):
        minimum, maximum = boundary_curves(24)
        rng = np.random.default_rng(123)
        sample = rng.dirichlet(np.ones(24), size=10_000)
        for p in sample:
            h = normalized_entropy(p)
            c = statistical_complexity(p)
            assert minimum.complexity_at(h) - 1e-9 <= c <= maximum.complexity_at(h) + 1e-9

    @pytest.mark.parametrize("n", [6, 24])
    def test_containment_other_cell_counts(self, n):
        minimum, maximum = boundary_curves(n)
        rng = np.random.default_rng(n)
        for p in rng.dirichlet(np.ones(n), size=1000):
            h = normalized_entropy(p)
            c = statistical_complexity(p)
            assert minimum.complexity_at(h) - 1e-9 <= c <= maximum.complexity_at(h) + 1e-9

    def test_max_strictly_above_min_in_interior(self):
        minimum, maximum = boundary_curves(24)
        grid = np.linspace(0.05, 0.95, 181)
        assert np.all(maximum.complexity_at(grid) > minimum.complexity_at(grid))

    def test_two_level_families_lie_on_curves(self):
        # Members of the generating families, evaluated through the generic
        # full-vector quantifiers, must land on the interpolated curves.
        n = 24
        minimum, maximum = boundary_curves(n, resolution=4096)
        for frac in (0.2, 0.5, 0.9):
            p = np.full(n, (1 - frac) / (n - 1))
            p[0] = frac
            h, c = normalized_entropy(p), statistical_complexity(p)
            assert c == pytest.approx(float(minimum.complexity_at(h)), abs=1e-7)
        for n_nonzero in (2, 9, 17):
            p = np.zeros(n)
            p[0] = 0.5 / n_nonzero
            p[1:n_nonzero] = (1 - p[0]) / (n_nonzero - 1)
            h, c = normalized_entropy(p), statistical_complexity(p)
            assert c == pytest.approx(float(maximum.complexity_at(h)), abs=1e-6)

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            boundary_curves(1)
        with pytest.raises(ValueError):
            boundary_curves(24, resolution=10)

    def test_curve_invariants_enforced(self):
        with pytest.raises(ValueError):
            BoundaryCurve(np.array([0.0, 0.5]), np.array([0.0, 0.1]), "minimum", 6)
        with pytest.raises(ValueError):
            BoundaryCurve(np.array([0.0, 0.0, 1.0]), np.zeros(3), "minimum", 6)


class TestPlanePoint:
    def test_monotone_series_maps_to_origin(self):
        point = plane_point(ordinal_distribution(np.arange(500.0), 4), label="ramp")
        assert point.entropy == 0.0
        assert point.complexity == 0.0
        assert point.label == "ramp"
        assert point.dimension == 4 and point.delay == 1
        assert point.n_samples == 500

    def test_long_random_series_near_max_entropy(self):
        series = np.random.default_rng(21).uniform(size=2**15)
        point = plane_point(ordinal_distribution(series, 4))
        assert point.entropy > 0.95
        assert point.complexity < 0.05

    def test_colored_noise_lands_between_curves(self):
        series = generate_fk_noise(NoiseSpec(exponent=2.5, length=2**16, seed=9))
        point = plane_point(ordinal_distribution(series, 4))
        minimum, maximum = boundary_curves(24)
        assert 0.1 < point.entropy < 0.95
        assert minimum.complexity_at(point.entropy) < point.complexity
        assert point.complexity < maximum.complexity_at(point.entropy)

"""Complexity-entropy plane analysis of velocity time series.

The package turns raw vehicle GPS logs into equally sampled velocity
series, reduces each series to its ordinal-pattern distribution, and
places it on the complexity-entropy plane next to colored-noise
references. The sklearn-style transformers in :mod:`velplane.estimators`
expose the series-to-features step to ML pipelines; the ``velplane`` CLI
drives the full dataset workflow.
"""

from .ordinal import (
    OrdinalDistribution,
    OrdinalPattern,
    ShortSeriesWarning,
    ordinal_distribution,
    pattern_of_window,
)
from .quantifiers import (
    BoundaryCurve,
    PlanePoint,
    boundary_curves,
    jensen_shannon_disequilibrium,
    normalized_entropy,
    plane_point,
    shannon_entropy,
    statistical_complexity,
)
from .noisegen import (
    NoiseSpec,
    SlopeFit,
    generate_fk_noise,
    ladder_specs,
    reference_ladder,
    spectral_slope,
    spectral_slope_fit,
)
from .ingest import (
    CleaningReport,
    GpsFix,
    ParseError,
    Trip,
    clean_pipeline,
    geodesic_distance,
    interval_velocity,
    parse_beijing,
    parse_borlange,
    parse_mobile_century,
)
from .resample import VelocitySeries, assemble_series, pchip_interpolate, resample_trip
from .estimators import ComplexityEntropyTransformer, OrdinalPatternTransformer

__version__ = "0.1.0"

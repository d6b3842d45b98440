"""Scikit-learn compatible transformers over collections of time series.

These wrap the functional API so the quantifiers drop into sklearn
pipelines: input is a 2-d array (one series per row) or any iterable of
1-d series, which may have different lengths; output is one feature row
per series.

>>> from velplane.estimators import ComplexityEntropyTransformer
>>> ComplexityEntropyTransformer(dimension=3).fit_transform([[1, 2, 3, 2, 1, 0]])
array([[...]])
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .ordinal import OrdinalPattern, ordinal_distribution
from .quantifiers import normalized_entropy, statistical_complexity
from .validation import check_delay, check_dimension, check_series_collection

__all__ = ["OrdinalPatternTransformer", "ComplexityEntropyTransformer"]


class OrdinalPatternTransformer(BaseEstimator, TransformerMixin):
    """Map each series to its ordinal-pattern probability vector.

    Parameters
    ----------
    dimension : int, default=4
        Pattern length; output has ``dimension!`` columns.
    delay : int, default=1
        Spacing between window samples.
    """

    def __init__(self, dimension: int = 4, delay: int = 1):
        self.dimension = dimension
        self.delay = delay

    def fit(self, X, y=None):
        """Validate parameters; the transform is stateless."""
        d = check_dimension(self.dimension)
        check_delay(self.delay)
        self.n_patterns_ = math.factorial(d)
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "n_patterns_")
        series = check_series_collection(X)
        return np.vstack(
            [
                ordinal_distribution(s, self.dimension, self.delay).probabilities
                for s in series
            ]
        )

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        check_is_fitted(self, "n_patterns_")
        return np.array(
            [
                f"pattern_{OrdinalPattern.from_index(i, self.dimension)}"
                for i in range(self.n_patterns_)
            ],
            dtype=object,
        )


class ComplexityEntropyTransformer(BaseEstimator, TransformerMixin):
    """Map each series to its complexity-entropy plane coordinates.

    Output columns are ``(entropy, complexity)``: the normalized entropy and
    statistical complexity of the series' ordinal-pattern distribution.

    Parameters
    ----------
    dimension : int, default=4
        Pattern length.
    delay : int, default=1
        Spacing between window samples.
    """

    def __init__(self, dimension: int = 4, delay: int = 1):
        self.dimension = dimension
        self.delay = delay

    def fit(self, X, y=None):
        """Validate parameters; the transform is stateless."""
        check_dimension(self.dimension)
        check_delay(self.delay)
        self.n_features_out_ = 2
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "n_features_out_")
        series = check_series_collection(X)
        rows = []
        for s in series:
            probs = ordinal_distribution(s, self.dimension, self.delay).probabilities
            rows.append((normalized_entropy(probs), statistical_complexity(probs)))
        return np.array(rows)

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        return np.array(["entropy", "complexity"], dtype=object)

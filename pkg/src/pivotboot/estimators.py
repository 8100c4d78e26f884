"""Point estimators: sample moments, resampled mean/variance, ECDFs.

Sample variance uses divisor ``n`` and the resampled variance divisor ``m``;
every downstream pivot and interval formula assumes these conventions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateWeightsError, DimensionMismatchError
from .weights import CenteredWeights, WeightVector

__all__ = [
    "Sample",
    "bootstrap_mean",
    "bootstrap_variance",
    "weighted_mean_estimator",
    "ecdf",
    "bootstrap_ecdf",
]


@dataclass(frozen=True)
class Sample:
    """Immutable observation vector with cached mean and variance (divisor n)."""

    values: np.ndarray
    mean: float
    variance: float

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.size < 1:
            raise ValueError("a sample needs at least one observation")
        mean = float(values.mean())
        centered = values - mean
        variance = float(centered @ centered / values.size)
        scale = max(1.0, abs(mean), abs(variance))
        if abs(self.mean - mean) > 1e-12 * scale or abs(self.variance - variance) > 1e-12 * scale:
            raise ValueError("cached moments disagree with the observations")

    @classmethod
    def from_values(cls, values) -> "Sample":
        arr = np.asarray(values, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("a sample needs at least one observation")
        mean = float(arr.mean())
        centered = arr - mean
        return cls(values=arr, mean=mean, variance=float(centered @ centered / arr.size))

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def std(self) -> float:
        return float(np.sqrt(self.variance))


def _check_lengths(s: Sample, w: WeightVector) -> None:
    if s.n != w.n:
        raise DimensionMismatchError(f"sample length {s.n} != weight length {w.n}")


def bootstrap_mean(s: Sample, w: WeightVector) -> float:
    """Resampled mean: sum_i w_i x_i / m."""
    _check_lengths(s, w)
    return float(w.counts @ s.values / w.m)


def bootstrap_variance(s: Sample, w: WeightVector) -> float:
    """Resampled variance about the resampled mean, divisor m."""
    _check_lengths(s, w)
    resampled_mean = w.counts @ s.values / w.m
    deviations = s.values - resampled_mean
    return float(w.counts @ (deviations * deviations) / w.m)


def weighted_mean_estimator(s: Sample, cw: CenteredWeights) -> float:
    """Absolute-centered-weight average: sum |c_i| x_i / sum |c_i|."""
    if s.n != cw.values.size:
        raise DimensionMismatchError(f"sample length {s.n} != weight length {cw.values.size}")
    if cw.sum_abs <= 0.0:
        raise DegenerateWeightsError("absolute centered weights sum to zero")
    return float(np.abs(cw.values) @ s.values / cw.sum_abs)


def ecdf(s: Sample, x: float) -> float:
    """Empirical distribution function #{x_i <= x}/n (ties use <=)."""
    return float(np.count_nonzero(s.values <= x)) / s.n


def bootstrap_ecdf(s: Sample, w: WeightVector, x: float) -> float:
    """Resampled empirical distribution function: sum_i (w_i/m) 1(x_i <= x)."""
    _check_lengths(s, w)
    return float(w.counts @ (s.values <= x) / w.m)

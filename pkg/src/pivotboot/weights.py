"""Resampling weight vectors and their centered functionals.

A weight vector records how many times each of ``n`` sample indices is
selected when resampling ``m`` times with replacement (multinomial counts),
or, for the generalized scheme, ``n`` i.i.d. positive random weights.  The
centered values ``w_i/m - 1/n`` and their squared/absolute sums drive every
pivot statistic in this package.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DegenerateWeightsError, DimensionMismatchError

__all__ = [
    "WeightScheme",
    "WeightVector",
    "CenteredWeights",
    "draw_multinomial_weights",
    "draw_multinomial_batch",
    "draw_generalized_weights",
    "unit_exponential",
    "center",
    "max_ratio",
    "expected_sum_squares",
    "sixth_moment_expression",
]


class WeightScheme(enum.Enum):
    MULTINOMIAL = "multinomial"
    IID_POSITIVE = "iid_positive"


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative resampling counts summing to the resample size ``m``."""

    counts: np.ndarray
    m: float
    scheme: WeightScheme

    def __post_init__(self) -> None:
        counts = np.asarray(self.counts, dtype=float)
        object.__setattr__(self, "counts", counts)
        if counts.ndim != 1 or counts.size < 1:
            raise ValueError("counts must be a non-empty 1-D sequence")
        if np.any(counts < 0) or not np.all(np.isfinite(counts)):
            raise ValueError("counts must be finite and nonnegative")
        if self.scheme is WeightScheme.MULTINOMIAL:
            if not np.array_equal(counts, np.round(counts)):
                raise ValueError("multinomial counts must be integers")
            if int(round(self.m)) != int(counts.sum()):
                raise ValueError("resample size m must equal the count total")
        elif not np.isclose(self.m, counts.sum(), rtol=1e-12, atol=0.0):
            raise ValueError("resample size m must equal the count total")
        if self.m <= 0:
            raise ValueError("resample size m must be positive")

    @property
    def n(self) -> int:
        return self.counts.size


@dataclass(frozen=True)
class CenteredWeights:
    """Centered weight values ``w_i/m - 1/n`` with cached norms.

    ``sum_squares`` is the squared Euclidean norm of the centered values and
    ``sum_abs`` their absolute sum; both scales appear in the pivot and
    interval formulas.
    """

    values: np.ndarray
    sum_squares: float
    sum_abs: float

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if abs(values.sum()) > 1e-12:
            raise ValueError("centered weights must sum to zero")
        if self.sum_squares < 0:
            raise ValueError("sum of squares cannot be negative")


def draw_multinomial_weights(n: int, m: int, stream: np.random.Generator) -> WeightVector:
    """Draw counts ~ multinomial(m; 1/n, ..., 1/n) from the given stream.

    The generator's multinomial sampler is the sequential conditional
    binomial method, exact and O(n) regardless of ``m``.
    """
    _validate_sizes(n, m)
    counts = stream.multinomial(m, np.full(n, 1.0 / n))
    return WeightVector(counts=counts.astype(float), m=float(m), scheme=WeightScheme.MULTINOMIAL)


def draw_multinomial_batch(n: int, m: int, size: int, stream: np.random.Generator) -> np.ndarray:
    """Draw ``size`` independent multinomial(m; 1/n, ...) count rows at once."""
    _validate_sizes(n, m)
    return stream.multinomial(m, np.full(n, 1.0 / n), size=size).astype(float)


def draw_generalized_weights(
    n: int,
    generator: Callable[[np.random.Generator, int], np.ndarray],
    stream: np.random.Generator,
) -> WeightVector:
    """Draw ``n`` i.i.d. positive weights from ``generator`` and sum them to ``m``.

    ``generator(stream, size)`` must return ``size`` draws from a positive
    law.  Draws that come out nonpositive (or non-finite) are rejected and
    redrawn, so the returned vector is always strictly positive.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    values = np.asarray(generator(stream, n), dtype=float)
    if values.shape != (n,):
        raise ValueError("generator must return exactly n draws")
    bad = ~(values > 0) | ~np.isfinite(values)
    while np.any(bad):
        redraw = np.asarray(generator(stream, int(bad.sum())), dtype=float)
        values = values.copy()
        values[bad] = redraw
        bad = ~(values > 0) | ~np.isfinite(values)
    return WeightVector(counts=values, m=float(values.sum()), scheme=WeightScheme.IID_POSITIVE)


def unit_exponential(stream: np.random.Generator, size: int) -> np.ndarray:
    """Built-in positive law for the generalized scheme: Exp(1) draws."""
    return stream.standard_exponential(size)


def center(w: WeightVector, n: int) -> CenteredWeights:
    """Center the weights to ``w_i/m - 1/n`` and record both norms."""
    if w.n != n:
        raise DimensionMismatchError(f"weight vector has length {w.n}, expected {n}")
    values = w.counts / w.m - 1.0 / n
    return CenteredWeights(
        values=values,
        sum_squares=float(values @ values),
        sum_abs=float(np.abs(values).sum()),
    )


def max_ratio(cw: CenteredWeights) -> float:
    """Largest squared centered weight as a fraction of their total: the
    negligibility diagnostic for the weight pattern.  Lies in (0, 1]."""
    if cw.sum_squares <= 0.0:
        raise DegenerateWeightsError("all centered weights are zero")
    squares = cw.values * cw.values
    return float(squares.max() / cw.sum_squares)


def expected_sum_squares(n: int, m: int) -> float:
    """Expected squared norm of centered multinomial weights: (1 - 1/n)/m."""
    _validate_sizes(n, m)
    return (1.0 - 1.0 / n) / m


def sixth_moment_expression(n: int, m: int) -> float:
    """Sixth central moment bound for a single multinomial count:
    15 m^3/n^3 + 25 m^2/n^2 + m/n."""
    _validate_sizes(n, m)
    return 15.0 * m**3 / n**3 + 25.0 * m**2 / n**2 + m / n


def _validate_sizes(n: int, m: int) -> None:
    if n < 1 or m < 1:
        raise ValueError("n and m must be at least 1")

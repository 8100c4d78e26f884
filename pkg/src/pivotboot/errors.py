"""Typed errors raised by the statistics layer.

Zero-denominator and invalid-configuration cases raise instead of
propagating NaN so that simulation harnesses can count degenerate draws
explicitly.
"""


class PivotbootError(Exception):
    """Base class for all library errors."""


class DimensionMismatchError(PivotbootError):
    """Sample and weight vectors have different lengths."""


class DegenerateWeightsError(PivotbootError):
    """All centered weights vanish (or their absolute sum does)."""


class ZeroVarianceError(PivotbootError):
    """Sample variance is zero; a Studentized statistic is undefined."""


class ZeroBootstrapVarianceError(PivotbootError):
    """Resampled variance is zero; a double-star statistic is undefined."""


class DegenerateScaleError(PivotbootError):
    """An empirical-distribution scale F(1-F) is zero at the evaluation point."""


class MuArityError(PivotbootError):
    """A centering value was supplied where forbidden, or omitted where required."""


class DomainError(PivotbootError):
    """Argument outside the mathematical domain of the operation."""


class InadmissibleParamsError(PivotbootError):
    """Bound parameters violate the admissibility inequality."""


class NonIntegerRankError(PivotbootError):
    """(B+1)*(1-alpha) is not an integer, so the classical cutoff rank is undefined."""

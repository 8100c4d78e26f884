"""Monte Carlo harnesses for coverage comparison experiments.

Two table experiments are provided.  The conditional design
(:func:`run_table1`) fixes one weight realization per outer cell and draws
fresh data for every inner replicate, scoring how often the conditional
empirical law of the absolute-weight pivot at a one-sided cutoff lands
within a band of its nominal level, against the same score for the
Studentized mean computed on the same data draws.  The joint design
(:func:`run_table2`) draws weights and data together in every inner
replicate and scores three one-sided methods side by side: the
absolute-weight pivot, the Studentized mean, and the Studentized mean
compared against the maximum of B replicate pivots.

Every (outer, inner) replicate owns a counter-based substream derived from
(seed, purpose, s, t), so reports are byte-identical for any worker-thread
count and any execution order.  Inner computations are vectorized per outer
cell; the vectorized kernels agree with the scalar pivot functions (tested).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import PivotbootError
from .estimators import Sample, ecdf
from .gaussian import normal_cdf
from .intervals import (
    IntervalTarget,
    ci_ecdf,
    ci_finite_pop_mean,
    ci_population_mean,
    ci_sample_mean,
    ci_superpop_mean,
)
from .multi_bootstrap import GENZ_LEVEL_B9, draw_replicates, refined_contains
from .pivots import PivotKind, empirical_pivot, g_star, starred_variant, student_t, t_star
from .rng import substream
from .weights import WeightVector, WeightScheme, center, draw_multinomial_batch

__all__ = [
    "Model",
    "MODELS",
    "resolve_model",
    "SimConfig",
    "CellResult",
    "CoverageReport",
    "TABLE1_THRESHOLD",
    "TABLE1_NOMINAL",
    "TABLE2_THRESHOLD",
    "TABLE2_NOMINAL",
    "TABLE1_CELLS",
    "TABLE2_CELLS",
    "sample_model",
    "run_table1",
    "run_table2",
    "run_coverage",
    "pivot_clt_frequencies",
    "refined_ci_coverage",
]

TABLE1_THRESHOLD = 1.644854
TABLE1_NOMINAL = 0.95
TABLE2_THRESHOLD = 1.281648
TABLE2_NOMINAL = GENZ_LEVEL_B9

# (model, n) design points of the two printed comparison grids.  The
# conditional table's exponential row ends at n = 50, the joint table's at
# n = 40.
TABLE1_CELLS: tuple[tuple[str, int], ...] = (
    ("poisson1", 20), ("poisson1", 30), ("poisson1", 40),
    ("lognormal01", 20), ("lognormal01", 30), ("lognormal01", 40),
    ("exponential1", 20), ("exponential1", 30), ("exponential1", 50),
)
TABLE2_CELLS: tuple[tuple[str, int], ...] = (
    ("poisson1", 20), ("poisson1", 30), ("poisson1", 40),
    ("lognormal01", 20), ("lognormal01", 30), ("lognormal01", 40),
    ("exponential1", 20), ("exponential1", 30), ("exponential1", 40),
)


# ---------------------------------------------------------------------------
# Data models
# ---------------------------------------------------------------------------

def _poisson1_from_uniform(u: np.ndarray) -> np.ndarray:
    """Poisson(1) by inversion with sequential search (exact, vectorized)."""
    k = np.zeros_like(u)
    term = np.full_like(u, math.exp(-1.0))
    cum = term.copy()
    active = u > cum
    while np.any(active):
        k[active] += 1.0
        term[active] /= k[active]
        cum[active] += term[active]
        active = u > cum
    return k


def _poisson1_cdf(x: float) -> float:
    if x < 0.0:
        return 0.0
    total, term = 0.0, math.exp(-1.0)
    for j in range(int(math.floor(x)) + 1):
        if j > 0:
            term /= j
        total += term
    return min(total, 1.0)


@dataclass(frozen=True)
class Model:
    """A simulation law with its exact mean, variance, and CDF.

    Sampling is split into a base draw (uniform or standard normal, one
    generator call) and a vectorized transform, so harnesses can draw each
    replicate's base variates from its own substream and transform whole
    cells at once; ``sample`` composes the two.
    """

    name: str
    mean: float
    variance: float
    base: str  # "uniform" | "normal"
    transform: Callable[[np.ndarray], np.ndarray]
    cdf: Callable[[float], float]

    def draw_base(self, rng: np.random.Generator, size: int) -> np.ndarray:
        if self.base == "uniform":
            return rng.random(size)
        return rng.standard_normal(size)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return self.transform(self.draw_base(rng, size))


MODELS: dict[str, Model] = {
    "poisson1": Model(
        "poisson1", 1.0, 1.0, "uniform",
        _poisson1_from_uniform,
        _poisson1_cdf,
    ),
    "lognormal01": Model(
        "lognormal01", math.exp(0.5), math.e * (math.e - 1.0), "normal",
        np.exp,
        lambda x: normal_cdf(math.log(x)) if x > 0.0 else 0.0,
    ),
    "exponential1": Model(
        "exponential1", 1.0, 1.0, "uniform",
        lambda u: -np.log1p(-u),
        lambda x: 1.0 - math.exp(-x) if x > 0.0 else 0.0,
    ),
    "normal01": Model(
        "normal01", 0.0, 1.0, "normal",
        lambda z: z,
        normal_cdf,
    ),
}


def resolve_model(name: str) -> Model:
    model = MODELS.get(name.lower())
    if model is None:
        raise ValueError(f"unknown model {name!r}; choose from {sorted(MODELS)}")
    return model


def sample_model(model: str | Model, n: int, stream: np.random.Generator) -> Sample:
    """Draw an i.i.d. sample of size n from a named model."""
    if isinstance(model, str):
        model = resolve_model(model)
    return Sample.from_values(model.sample(stream, n))


# ---------------------------------------------------------------------------
# Configuration and reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimConfig:
    """Design of one table cell: law, sizes, repetition counts, cutoffs.

    ``studentize_ddof`` selects the divisor of the Studentizing standard
    deviation inside the table harnesses: 1 (divisor n-1) reproduces the
    published comparison tables, 0 gives the divisor-n convention used by
    the library's pivot functions.  The two differ only by the scale factor
    sqrt(n/(n-1)), but the scored band frequencies are sensitive enough to
    resolve it.
    """

    model: str
    n: int
    m: int | None = None
    outer_reps: int = 500
    inner_reps: int = 500
    threshold: float | None = None
    nominal: float | None = None
    tolerance_band: float = 0.01
    B: int = 9
    seed: int = 0
    studentize_ddof: int = 1

    def __post_init__(self) -> None:
        resolve_model(self.model)
        if self.n < 1 or (self.m is not None and self.m < 1):
            raise ValueError("sample and resample sizes must be positive")
        if self.outer_reps < 1 or self.inner_reps < 1:
            raise ValueError("repetition counts must be positive")
        if self.tolerance_band <= 0.0:
            raise ValueError("tolerance_band must be positive")
        if self.nominal is not None and not 0.0 < self.nominal < 1.0:
            raise ValueError("nominal level must lie in (0, 1)")
        if self.B < 2:
            raise ValueError("B must be at least 2")
        if self.studentize_ddof not in (0, 1):
            raise ValueError("studentize_ddof must be 0 or 1")
        if self.n <= self.studentize_ddof:
            raise ValueError("n must exceed studentize_ddof")

    def resolved(self, default_threshold: float, default_nominal: float) -> dict:
        cfg = {
            "model": self.model.lower(),
            "n": self.n,
            "m": self.m if self.m is not None else self.n,
            "outer_reps": self.outer_reps,
            "inner_reps": self.inner_reps,
            "threshold": self.threshold if self.threshold is not None else default_threshold,
            "nominal": self.nominal if self.nominal is not None else default_nominal,
            "tolerance_band": self.tolerance_band,
            "B": self.B,
            "seed": self.seed,
            "studentize_ddof": self.studentize_ddof,
        }
        return cfg


@dataclass(frozen=True)
class CellResult:
    """One scored statistic of one design point."""

    distribution: str
    n: int
    statistic: str
    frequency: float
    degenerate_count: int


@dataclass(frozen=True)
class CoverageReport:
    """Frequencies plus full provenance for one experiment run."""

    kind: str
    seed: int
    config: Mapping[str, object]
    cells: tuple[CellResult, ...]

    def frequency(self, statistic: str) -> float:
        for cell in self.cells:
            if cell.statistic == statistic:
                return cell.frequency
        raise KeyError(statistic)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "seed": self.seed,
            "config": dict(self.config),
            "cells": [
                {
                    "distribution": c.distribution,
                    "n": c.n,
                    "statistic": c.statistic,
                    "frequency": c.frequency,
                    "degenerate_count": c.degenerate_count,
                }
                for c in self.cells
            ],
            "results": {c.statistic: c.frequency for c in self.cells},
        }


def _run_outer_cells(worker: Callable[[int], tuple], count: int, threads: int) -> list[tuple]:
    if threads <= 1:
        return [worker(s) for s in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, range(count)))


def _within_band(inner_hits: int, inner_valid: int, nominal: float, band: float) -> bool:
    if inner_valid == 0:
        return False
    return abs(inner_hits / inner_valid - nominal) <= band


# ---------------------------------------------------------------------------
# Conditional-on-weights design
# ---------------------------------------------------------------------------

def run_table1(cfg: SimConfig, threads: int = 1) -> CoverageReport:
    """Score the absolute-weight pivot conditionally on the weights.

    Outer loop: one multinomial weight realization per cell (degenerate
    realizations redrawn and counted).  Inner loop: fresh data; the same
    data feed both the conditional pivot and the Studentized mean.  A cell
    scores for a statistic when its inner frequency of staying below the
    threshold is within ``tolerance_band`` of ``nominal``.
    """
    resolved = cfg.resolved(TABLE1_THRESHOLD, TABLE1_NOMINAL)
    model = resolve_model(resolved["model"])
    n, m = resolved["n"], resolved["m"]
    S, T = resolved["outer_reps"], resolved["inner_reps"]
    threshold, nominal, band = resolved["threshold"], resolved["nominal"], resolved["tolerance_band"]
    seed, ddof = resolved["seed"], resolved["studentize_ddof"]
    sqrt_n = math.sqrt(n)

    def cell(s: int) -> tuple[bool, bool, int, int]:
        weight_rng = substream(seed, "table1.weights", s)
        redraws = 0
        while True:
            counts = draw_multinomial_batch(n, m, 1, weight_rng)[0]
            centered = counts / m - 1.0 / n
            weight_norm_sq = float(centered @ centered)
            if weight_norm_sq > 0.0:
                break
            redraws += 1
        abs_centered = np.abs(centered)
        weight_norm = math.sqrt(weight_norm_sq)

        base = np.empty((T, n))
        for t in range(T):
            base[t] = model.draw_base(substream(seed, "table1.data", s, t), n)
        data = model.transform(base)
        means = data.mean(axis=1)
        variances = data.var(axis=1, ddof=ddof)
        valid = variances > 0.0
        stds = np.sqrt(variances, where=valid, out=np.ones_like(variances))

        pivot_g = ((data - model.mean) @ abs_centered) / (stds * weight_norm)
        pivot_t = (means - model.mean) * sqrt_n / stds
        hits_g = int(np.count_nonzero(pivot_g[valid] <= threshold))
        hits_t = int(np.count_nonzero(pivot_t[valid] <= threshold))
        n_valid = int(np.count_nonzero(valid))
        return (
            _within_band(hits_g, n_valid, nominal, band),
            _within_band(hits_t, n_valid, nominal, band),
            T - n_valid,
            redraws,
        )

    rows = _run_outer_cells(cell, S, threads)
    within_g = sum(r[0] for r in rows)
    within_t = sum(r[1] for r in rows)
    data_degenerate = sum(r[2] for r in rows)
    weight_redraws = sum(r[3] for r in rows)

    cells = (
        CellResult(model.name, n, "emp_G_star", within_g / S, data_degenerate + weight_redraws),
        CellResult(model.name, n, "emp_T", within_t / S, data_degenerate),
    )
    return CoverageReport("table1", seed, resolved, cells)


# ---------------------------------------------------------------------------
# Joint design with replicate cutoffs
# ---------------------------------------------------------------------------

def run_table2(cfg: SimConfig, threads: int = 1) -> CoverageReport:
    """Score three one-sided methods under jointly drawn data and weights.

    Every inner replicate draws data, one weight vector for the
    absolute-weight pivot, and B further weight vectors for the replicate
    pivots; the replicate criterion compares the Studentized mean against
    the maximum of the B replicate pivots.
    """
    resolved = cfg.resolved(TABLE2_THRESHOLD, TABLE2_NOMINAL)
    model = resolve_model(resolved["model"])
    n, m, B = resolved["n"], resolved["m"], resolved["B"]
    S, T = resolved["outer_reps"], resolved["inner_reps"]
    threshold, nominal, band = resolved["threshold"], resolved["nominal"], resolved["tolerance_band"]
    seed, ddof = resolved["seed"], resolved["studentize_ddof"]
    sqrt_n = math.sqrt(n)

    def cell(s: int) -> tuple[bool, bool, bool, int, int, int]:
        base = np.empty((T, n))
        counts = np.empty((T, B + 1, n))
        for t in range(T):
            rng = substream(seed, "table2.joint", s, t)
            base[t] = model.draw_base(rng, n)
            counts[t] = draw_multinomial_batch(n, m, B + 1, rng)
        data = model.transform(base)

        centered = counts / m - 1.0 / n
        norm_sq = np.einsum("tbi,tbi->tb", centered, centered)
        means = data.mean(axis=1)
        variances = data.var(axis=1, ddof=ddof)
        data_ok = variances > 0.0
        stds = np.sqrt(variances, where=data_ok, out=np.ones_like(variances))

        g_ok = norm_sq[:, 0] > 0.0
        boot_ok = np.all(norm_sq[:, 1:] > 0.0, axis=1)
        norms = np.sqrt(norm_sq, where=norm_sq > 0.0, out=np.ones_like(norm_sq))

        pivot_g = (
            np.einsum("ti,ti->t", np.abs(centered[:, 0, :]), data - model.mean)
            / (stds * norms[:, 0])
        )
        pivot_t = (means - model.mean) * sqrt_n / stds
        replicate_pivots = (
            np.einsum("tbi,ti->tb", centered[:, 1:, :], data)
            / (stds[:, None] * norms[:, 1:])
        )

        valid_t = data_ok
        valid_g = data_ok & g_ok
        valid_boot = data_ok & boot_ok
        hits_t = int(np.count_nonzero(pivot_t[valid_t] <= threshold))
        hits_g = int(np.count_nonzero(pivot_g[valid_g] <= threshold))
        hits_boot = int(
            np.count_nonzero(pivot_t[valid_boot] <= replicate_pivots[valid_boot].max(axis=1))
        )
        return (
            _within_band(hits_g, int(valid_g.sum()), nominal, band),
            _within_band(hits_t, int(valid_t.sum()), nominal, band),
            _within_band(hits_boot, int(valid_boot.sum()), nominal, band),
            int((~valid_g).sum()),
            int((~valid_t).sum()),
            int((~valid_boot).sum()),
        )

    rows = _run_outer_cells(cell, S, threads)
    cells = (
        CellResult(model.name, n, "emp_G_star", sum(r[0] for r in rows) / S,
                   sum(r[3] for r in rows)),
        CellResult(model.name, n, "emp_T", sum(r[1] for r in rows) / S,
                   sum(r[4] for r in rows)),
        CellResult(model.name, n, "emp_boot", sum(r[2] for r in rows) / S,
                   sum(r[5] for r in rows)),
    )
    return CoverageReport("table2", seed, resolved, cells)


# ---------------------------------------------------------------------------
# Generic interval-coverage and pivot-law harnesses
# ---------------------------------------------------------------------------

_RECIPES = ("population", "sample", "finitepop", "superpop", "ecdf", "cdf")


def run_coverage(
    interval_recipe: str,
    model: str | Model,
    n: int,
    m: int,
    alpha: float,
    reps: int,
    seed: int,
    x: float | None = None,
    threads: int = 1,
) -> CoverageReport:
    """Empirical coverage of one interval recipe over joint replicates.

    The covered target is the model mean (population/superpop recipes), the
    replicate's own sample mean (sample/finitepop recipes, where the sample
    plays the finite population), the replicate ECDF at ``x`` (ecdf), or the
    model CDF at ``x`` (cdf).  Degenerate replicates are counted and
    excluded from the denominator.
    """
    if interval_recipe not in _RECIPES:
        raise ValueError(f"unknown recipe {interval_recipe!r}; choose from {_RECIPES}")
    if interval_recipe in ("ecdf", "cdf") and x is None:
        raise ValueError(f"recipe {interval_recipe!r} needs an evaluation point x")
    if isinstance(model, str):
        model = resolve_model(model)
    purpose = f"coverage.{interval_recipe}"

    def replicate(r: int) -> tuple[bool, bool]:
        rng = substream(seed, purpose, r)
        sample = sample_model(model, n, rng)
        counts = draw_multinomial_batch(n, m, 1, rng)[0]
        w = WeightVector(counts=counts, m=float(m), scheme=WeightScheme.MULTINOMIAL)
        cw = center(w, n)
        try:
            if interval_recipe == "population":
                interval, target = ci_population_mean(sample, cw, alpha), model.mean
            elif interval_recipe == "sample":
                interval, target = ci_sample_mean(sample, w, cw, alpha), sample.mean
            elif interval_recipe == "finitepop":
                interval, target = ci_finite_pop_mean(sample, w, cw, alpha), sample.mean
            elif interval_recipe == "superpop":
                interval, target = ci_superpop_mean(sample, w, cw, alpha), model.mean
            elif interval_recipe == "ecdf":
                interval = ci_ecdf(sample, w, cw, x, alpha, IntervalTarget.ECDF_VALUE)
                target = ecdf(sample, x)
            else:
                interval = ci_ecdf(sample, w, cw, x, alpha, IntervalTarget.CDF_VALUE)
                target = model.cdf(x)
        except PivotbootError:
            return False, True
        return target in interval, False

    rows = _run_outer_cells(replicate, reps, threads)
    degenerate = sum(r[1] for r in rows)
    covered = sum(r[0] for r in rows)
    valid = reps - degenerate
    frequency = covered / valid if valid else 0.0
    config = {
        "recipe": interval_recipe, "model": model.name, "n": n, "m": m,
        "alpha": alpha, "reps": reps, "seed": seed,
    }
    if x is not None:
        config["x"] = x
    cells = (CellResult(model.name, n, interval_recipe, frequency, degenerate),)
    return CoverageReport("coverage", seed, config, cells)


def _evaluate_pivot(
    kind: PivotKind,
    sample: Sample,
    w: WeightVector,
    cw,
    mu: float,
    x: float | None,
    f_true: float | None,
) -> float:
    if kind is PivotKind.STUDENT_T:
        return student_t(sample, mu)
    if kind is PivotKind.T_STAR:
        return t_star(sample, cw)
    if kind is PivotKind.G_STAR:
        return g_star(sample, cw, mu)
    if kind in (PivotKind.T_DOUBLE_STAR, PivotKind.T_TILDE):
        return starred_variant(kind, sample, w, cw)
    if kind in (PivotKind.G_DOUBLE_STAR, PivotKind.G_TILDE):
        return starred_variant(kind, sample, w, cw, mu=mu)
    if kind in (PivotKind.ALPHA1_HAT, PivotKind.ALPHA1_HAT_HAT):
        return empirical_pivot(kind, sample, w, cw, x)
    return empirical_pivot(kind, sample, w, cw, x, f_true=f_true)


def pivot_clt_frequencies(
    kinds: Sequence[PivotKind],
    model: str | Model,
    n: int,
    m: int,
    threshold: float,
    reps: int,
    seed: int,
    x: float | None = None,
    threads: int = 1,
) -> CoverageReport:
    """Empirical frequency of each pivot staying below ``threshold`` under
    joint replication; the distribution-function kinds are evaluated at
    ``x`` with the model CDF as the true value."""
    if isinstance(model, str):
        model = resolve_model(model)
    kinds = list(kinds)
    needs_x = {
        PivotKind.ALPHA1_HAT, PivotKind.ALPHA1_HAT_HAT,
        PivotKind.ALPHA2_HAT, PivotKind.ALPHA2_HAT_HAT,
    }
    if any(k in needs_x for k in kinds) and x is None:
        raise ValueError("an evaluation point x is required for distribution pivots")
    f_true = model.cdf(x) if x is not None else None

    def replicate(r: int) -> tuple:
        rng = substream(seed, "pivot_clt", r)
        sample = sample_model(model, n, rng)
        counts = draw_multinomial_batch(n, m, 1, rng)[0]
        w = WeightVector(counts=counts, m=float(m), scheme=WeightScheme.MULTINOMIAL)
        cw = center(w, n)
        out = []
        for kind in kinds:
            try:
                out.append(_evaluate_pivot(kind, sample, w, cw, model.mean, x, f_true) <= threshold)
            except PivotbootError:
                out.append(None)
        return tuple(out)

    rows = _run_outer_cells(replicate, reps, threads)
    cells = []
    for j, kind in enumerate(kinds):
        col = [row[j] for row in rows]
        degenerate = sum(1 for v in col if v is None)
        valid = reps - degenerate
        hits = sum(1 for v in col if v)
        cells.append(
            CellResult(model.name, n, kind.value, hits / valid if valid else 0.0, degenerate)
        )
    config = {
        "model": model.name, "n": n, "m": m, "threshold": threshold,
        "reps": reps, "seed": seed,
    }
    if x is not None:
        config["x"] = x
    return CoverageReport("pivot_clt", seed, config, tuple(cells))


def refined_ci_coverage(
    model: str | Model,
    n: int,
    m: int,
    B: int,
    alpha: float,
    reps: int,
    seed: int,
    threads: int = 1,
) -> CoverageReport:
    """Coverage of the replicate-cutoff bound: frequency with which the
    Studentized mean stays below the refined order statistic of B replicate
    pivots."""
    if isinstance(model, str):
        model = resolve_model(model)

    def replicate(r: int) -> tuple[bool, bool]:
        rng = substream(seed, "refined_ci", r)
        sample = sample_model(model, n, rng)
        try:
            t_value = student_t(sample, model.mean)
            replicates = draw_replicates(sample, B, m, rng)
        except PivotbootError:
            return False, True
        return refined_contains(t_value, replicates, alpha), False

    rows = _run_outer_cells(replicate, reps, threads)
    degenerate = sum(r[1] for r in rows)
    valid = reps - degenerate
    covered = sum(r[0] for r in rows)
    config = {
        "model": model.name, "n": n, "m": m, "B": B,
        "alpha": alpha, "reps": reps, "seed": seed,
    }
    cells = (
        CellResult(model.name, n, "refined_boot", covered / valid if valid else 0.0, degenerate),
    )
    return CoverageReport("refined_ci", seed, config, cells)

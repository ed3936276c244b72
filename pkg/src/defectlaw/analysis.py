"""Top-level analyses: the defect regression, the maturity verdict, and the
power-law sanity check on alphabet-size distributions.

The maturity verdict asks whether a system's defect counts have settled
onto a straight line against binned mean information content. A long-used,
well-tested system should be highly linear over the defect levels covering
most components; departures suggest defects remain to be found.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .defects import JoinedComponent, bin_by_defects, coverage_cutoff
from .metrics import ComponentMetrics
from .stats import InsufficientDataError, RegressionSummary, ols_fit

EQUILIBRATED = "equilibrated"
NOT_EQUILIBRATED = "not-equilibrated"
INSUFFICIENT_DATA = "insufficient-data"

DEFAULT_FRACTION = 0.95
DEFAULT_R2_THRESHOLD = 0.9
DEFAULT_ALPHA = 0.01
DEFAULT_CAP_COVERAGE = 0.99

_MIN_BINS = 3


@dataclass(frozen=True)
class MaturityReport:
    """Outcome of the equilibration assessment.

    adj_r2_all covers every occupied bin up to the global cap; adj_r2_cut
    and p_value (the slope's two-sided p) come from the bins at or below
    the coverage cutoff, which is what the verdict is based on.
    excluded_fraction is the share of components above the cutoff. Fields
    are NaN when the corresponding regression had too few bins.
    """

    cutoff_d: int
    bins_used: int
    adj_r2_all: float
    adj_r2_cut: float
    p_value: float
    verdict: str
    excluded_fraction: float

    def to_dict(self) -> dict:
        return {
            "cutoff_d": self.cutoff_d,
            "bins_used": self.bins_used,
            "adj_r2_all": self.adj_r2_all,
            "adj_r2_cut": self.adj_r2_cut,
            "p_value": self.p_value,
            "verdict": self.verdict,
            "excluded_fraction": self.excluded_fraction,
        }

    def to_text(self) -> str:
        lines = [
            f"coverage cutoff:         d <= {self.cutoff_d}",
            f"bins used (cut fit):     {self.bins_used}",
            f"adjusted R^2 (all bins): {self.adj_r2_all:.4f}",
            f"adjusted R^2 (cut bins): {self.adj_r2_cut:.4f}",
            f"slope p-value (cut):     {self.p_value:.4g}",
            f"excluded components:     {self.excluded_fraction:.2%}",
            f"verdict:                 {self.verdict}",
        ]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PowerLawFit:
    """Estimated exponent of the alphabet-size distribution."""

    beta_hat: float
    fit_r2: float
    n_points: int


def defect_law_regression(
    joined: list[JoinedComponent],
    d_max: int,
    normalize: float = 1.0,
) -> RegressionSummary:
    """Bin by defect count, then regress d on mean information content."""
    bins = bin_by_defects(joined, d_max, normalize)
    if len(bins) < _MIN_BINS:
        raise InsufficientDataError(
            f"only {len(bins)} occupied defect bins at d_max={d_max}; need {_MIN_BINS}"
        )
    return ols_fit([(b.mean_info, float(b.d)) for b in bins])


def maturity_assess(
    joined: list[JoinedComponent],
    fraction: float = DEFAULT_FRACTION,
    r2_threshold: float = DEFAULT_R2_THRESHOLD,
    alpha: float = DEFAULT_ALPHA,
    normalize: float = 1.0,
    d_max: int | None = None,
) -> MaturityReport:
    """Assess equilibration from the joined component/defect table.

    The cutoff defect count is the smallest covering ``fraction`` of
    components. The verdict is ``equilibrated`` when the fit over bins at
    or below the cutoff reaches adjusted R^2 >= r2_threshold with slope
    p-value <= alpha, ``insufficient-data`` when fewer than 3 bins are
    occupied, and ``not-equilibrated`` otherwise. ``d_max`` caps the
    all-bins fit; None means the smallest cap covering 99% of components.

    Normalization of the x axis provably cannot change the verdict.
    """
    if not joined:
        raise ValueError("cannot assess an empty join")
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    if not 0.0 < r2_threshold < 1.0:
        raise ValueError(f"r2_threshold must be in (0, 1), got {r2_threshold}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")

    cutoff_d = coverage_cutoff(joined, fraction)
    if d_max is None:
        d_max = max(coverage_cutoff(joined, DEFAULT_CAP_COVERAGE), cutoff_d)
    excluded = sum(1 for jc in joined if jc.d > cutoff_d)
    excluded_fraction = excluded / len(joined)

    try:
        all_fit = defect_law_regression(joined, d_max, normalize)
        adj_r2_all = all_fit.adj_r2
    except (InsufficientDataError, ValueError):
        adj_r2_all = math.nan

    cut_bins = bin_by_defects(joined, cutoff_d, normalize)
    if len(cut_bins) < _MIN_BINS:
        return MaturityReport(
            cutoff_d=cutoff_d,
            bins_used=len(cut_bins),
            adj_r2_all=adj_r2_all,
            adj_r2_cut=math.nan,
            p_value=math.nan,
            verdict=INSUFFICIENT_DATA,
            excluded_fraction=excluded_fraction,
        )
    cut_fit = ols_fit([(b.mean_info, float(b.d)) for b in cut_bins])
    equilibrated = cut_fit.adj_r2 >= r2_threshold and cut_fit.p_slope <= alpha
    return MaturityReport(
        cutoff_d=cutoff_d,
        bins_used=len(cut_bins),
        adj_r2_all=adj_r2_all,
        adj_r2_cut=cut_fit.adj_r2,
        p_value=cut_fit.p_slope,
        verdict=EQUILIBRATED if equilibrated else NOT_EQUILIBRATED,
        excluded_fraction=excluded_fraction,
    )


def powerlaw_check(
    metrics: list[ComponentMetrics], n_bins: int = 24
) -> PowerLawFit:
    """Estimate the exponent of the alphabet-size distribution.

    Alphabet sizes are counted into geometrically spaced bins with edges
    snapped to integers (so each bin's width equals the number of integer
    sizes it covers, and single-integer bins sit exactly on the frequency
    density curve). The fit is ordinary least squares of ln(density)
    against ln(bin center); beta_hat is the negated slope.
    """
    if n_bins < 2:
        raise ValueError(f"n_bins must be >= 2, got {n_bins}")
    a_values = np.array([m.a for m in metrics])
    distinct = np.unique(a_values)
    if distinct.size < 3:
        raise InsufficientDataError(
            f"need >= 3 distinct alphabet sizes, got {distinct.size}"
        )
    lo, hi = int(distinct[0]), int(distinct[-1])
    raw_edges = np.geomspace(lo, hi + 1, n_bins + 1)
    edges = np.unique(np.ceil(raw_edges).astype(np.int64))
    edges[0] = lo
    edges[-1] = hi + 1

    counts, _ = np.histogram(a_values, bins=edges)
    widths = np.diff(edges)
    occupied = counts > 0
    if occupied.sum() < _MIN_BINS:
        raise InsufficientDataError(
            f"only {int(occupied.sum())} occupied log bins; need {_MIN_BINS}"
        )
    density = counts[occupied] / (a_values.size * widths[occupied])
    # geometric mean of the first and last integer size in each bin
    centers = np.sqrt(edges[:-1][occupied] * (edges[1:][occupied] - 1).astype(float))
    fit = ols_fit(list(zip(np.log(centers), np.log(density))))
    return PowerLawFit(beta_hat=-fit.slope, fit_r2=fit.r2, n_points=int(occupied.sum()))

"""Simple linear regression with the full diagnostic summary R's lm() prints.

Everything is computed from first principles: coefficients and standard
errors from the normal equations, t and F tail probabilities through a
regularized incomplete beta function evaluated by a Lentz-style continued
fraction. Residual quartiles use linear interpolation (R's default type-7
convention).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class InsufficientDataError(ValueError):
    """Too few points to fit."""


class DegenerateDesignError(ValueError):
    """All x values identical; the slope is not identifiable."""


@dataclass(frozen=True)
class RegressionSummary:
    """All fields of an intercept-plus-slope least-squares fit.

    residual_quartiles is (min, q1, median, q3, max); f_df is (1, n-2);
    p-values are two-sided for t statistics and upper-tail for F.
    """

    intercept: float
    slope: float
    se_intercept: float
    se_slope: float
    t_intercept: float
    t_slope: float
    p_intercept: float
    p_slope: float
    residual_quartiles: tuple[float, float, float, float, float]
    rse: float
    df: int
    r2: float
    adj_r2: float
    f_stat: float
    f_df: tuple[int, int]
    f_pvalue: float
    n: int


# Continued-fraction evaluation: convergence threshold and iteration cap.
# Failure to converge is raised, never silently returned.
_BETA_CF_TOL = 1e-12
_BETA_CF_MAX_ITER = 300
_FPMIN = 1e-300


def reg_inc_beta(x: float, a: float, b: float) -> float:
    """Regularized incomplete beta function I_x(a, b).

    Evaluated via the continued fraction of the incomplete beta integral
    (modified Lentz iteration). For x beyond the central cut the symmetry
    I_x(a,b) = 1 - I_{1-x}(b,a) is applied so the fraction always converges
    quickly. Absolute error is held below 1e-12.

    Raises:
        ValueError: if x is outside [0, 1] or a, b are not positive.
        ArithmeticError: if the continued fraction fails to converge.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")
    if a <= 0.0 or b <= 0.0:
        raise ValueError(f"a and b must be > 0, got a={a}, b={b}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def _beta_cf(a: float, b: float, x: float) -> float:
    """Lentz evaluation of the continued fraction for the incomplete beta."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _BETA_CF_MAX_ITER + 1):
        m2 = 2 * m
        # even step
        coeff = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + coeff * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + coeff / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        # odd step
        coeff = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + coeff * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + coeff / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETA_CF_TOL:
            return h
    raise ArithmeticError(
        f"incomplete beta continued fraction did not converge within "
        f"{_BETA_CF_MAX_ITER} iterations (a={a}, b={b}, x={x})"
    )


def t_pvalue_two_sided(t: float, df: int) -> float:
    """Two-sided tail probability 2*P(T_df > |t|) of Student's t."""
    if df < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {df}")
    if math.isinf(t):
        return 0.0
    return reg_inc_beta(df / (df + t * t), df / 2.0, 0.5)


def f_pvalue(f: float, d1: int, d2: int) -> float:
    """Upper-tail probability P(F_{d1,d2} > f)."""
    if f < 0:
        raise ValueError(f"F statistic must be >= 0, got {f}")
    if d1 < 1 or d2 < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got ({d1}, {d2})")
    if math.isinf(f):
        return 0.0
    return reg_inc_beta(d2 / (d2 + d1 * f), d2 / 2.0, d1 / 2.0)


def adjusted_r2(r2: float, n: int, k: int) -> float:
    """R-squared penalized for model size: 1 - (1-r2)(n-1)/(n-k-1)."""
    if n <= k + 1:
        raise ValueError(f"need n > k + 1, got n={n}, k={k}")
    if not 0.0 <= r2 <= 1.0:
        raise ValueError(f"r2 must be in [0, 1], got {r2}")
    return 1.0 - (1.0 - r2) * (n - 1) / (n - k - 1)


def quantile_type7(sorted_values: list[float], p: float) -> float:
    """Linear-interpolation quantile (R type 7) of pre-sorted values."""
    if not sorted_values:
        raise ValueError("quantile of an empty list")
    h = (len(sorted_values) - 1) * p
    lo = math.floor(h)
    hi = min(lo + 1, len(sorted_values) - 1)
    return sorted_values[lo] + (h - lo) * (sorted_values[hi] - sorted_values[lo])


def _ratio(numerator: float, denominator: float) -> float:
    if denominator > 0.0:
        return numerator / denominator
    if numerator > 0.0:
        return math.inf
    if numerator < 0.0:
        return -math.inf
    return 0.0


def ols_fit(points: list[tuple[float, float]]) -> RegressionSummary:
    """Least-squares line through (x, y) points, with the full summary.

    Needs at least 3 points and non-constant x. A perfect fit is legal:
    standard errors collapse to 0, t statistics to +/-inf, p-values to 0.
    """
    n = len(points)
    if n < 3:
        raise InsufficientDataError(f"need at least 3 points, got {n}")
    xs = [float(p[0]) for p in points]
    ys = [float(p[1]) for p in points]
    x_mean = sum(xs) / n
    y_mean = sum(ys) / n
    sxx = sum((x - x_mean) ** 2 for x in xs)
    sxy = sum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    syy = sum((y - y_mean) ** 2 for y in ys)
    if sxx == 0.0:
        raise DegenerateDesignError("all x values are identical")

    slope = sxy / sxx
    intercept = y_mean - slope * x_mean
    residuals = [y - (intercept + slope * x) for x, y in zip(xs, ys)]
    sse = sum(r * r for r in residuals)
    df = n - 2
    sigma2 = sse / df
    rse = math.sqrt(sigma2)
    se_slope = math.sqrt(sigma2 / sxx)
    se_intercept = math.sqrt(sigma2 * (1.0 / n + x_mean * x_mean / sxx))
    t_slope = _ratio(slope, se_slope)
    t_intercept = _ratio(intercept, se_intercept)

    # syy == 0 means y was constant and perfectly reproduced by slope 0
    r2 = 1.0 - sse / syy if syy > 0.0 else 1.0
    r2 = min(max(r2, 0.0), 1.0)
    f_stat = _ratio(syy - sse, sigma2)

    sorted_res = sorted(residuals)
    quartiles = (
        sorted_res[0],
        quantile_type7(sorted_res, 0.25),
        quantile_type7(sorted_res, 0.50),
        quantile_type7(sorted_res, 0.75),
        sorted_res[-1],
    )
    return RegressionSummary(
        intercept=intercept,
        slope=slope,
        se_intercept=se_intercept,
        se_slope=se_slope,
        t_intercept=t_intercept,
        t_slope=t_slope,
        p_intercept=t_pvalue_two_sided(t_intercept, df),
        p_slope=t_pvalue_two_sided(t_slope, df),
        residual_quartiles=quartiles,
        rse=rse,
        df=df,
        r2=r2,
        adj_r2=adjusted_r2(r2, n, 1),
        f_stat=f_stat,
        f_df=(1, df),
        f_pvalue=f_pvalue(f_stat, 1, df),
        n=n,
    )


def _p_text(p: float) -> str:
    return f"{p:.6f}" if p >= 1e-4 else f"{p:.3g}"


def format_r_style(summary: RegressionSummary, x_name: str = "x") -> str:
    """Render the summary as a text block laid out like R's lm() print."""
    q = summary.residual_quartiles
    lines = [
        "Residuals:",
        f"{'Min':>9}{'1Q':>9}{'Median':>9}{'3Q':>9}{'Max':>9}",
        "".join(f"{v:>9.4f}" for v in q),
        "",
        "Coefficients:",
        f"{'':12s}{'Estimate':>10}{'Std. Error':>11}{'t value':>9}{'Pr(>|t|)':>10}",
        f"{'(Intercept)':12s}{summary.intercept:>10.4f}{summary.se_intercept:>11.4f}"
        f"{summary.t_intercept:>9.3f}{_p_text(summary.p_intercept):>10}",
        f"{x_name:12s}{summary.slope:>10.4f}{summary.se_slope:>11.4f}"
        f"{summary.t_slope:>9.3f}{_p_text(summary.p_slope):>10}",
        "",
        f"Residual standard error: {summary.rse:.4g} on {summary.df} degrees of freedom",
        f"Multiple R-squared: {summary.r2:.4f},\tAdjusted R-squared: {summary.adj_r2:.4f}",
        f"F-statistic: {summary.f_stat:.4g} on {summary.f_df[0]} and {summary.f_df[1]} DF,"
        f"  p-value: {summary.f_pvalue:.4g}",
    ]
    return "\n".join(lines) + "\n"


def summary_as_dict(summary: RegressionSummary) -> dict:
    """Flat key-value view of the summary, suitable for JSON."""
    return {
        "n": summary.n,
        "intercept": summary.intercept,
        "slope": summary.slope,
        "se_intercept": summary.se_intercept,
        "se_slope": summary.se_slope,
        "t_intercept": summary.t_intercept,
        "t_slope": summary.t_slope,
        "p_intercept": summary.p_intercept,
        "p_slope": summary.p_slope,
        "residual_min": summary.residual_quartiles[0],
        "residual_q1": summary.residual_quartiles[1],
        "residual_median": summary.residual_quartiles[2],
        "residual_q3": summary.residual_quartiles[3],
        "residual_max": summary.residual_quartiles[4],
        "rse": summary.rse,
        "df": summary.df,
        "r2": summary.r2,
        "adj_r2": summary.adj_r2,
        "f_stat": summary.f_stat,
        "f_df1": summary.f_df[0],
        "f_df2": summary.f_df[1],
        "f_pvalue": summary.f_pvalue,
    }

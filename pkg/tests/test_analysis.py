"""Analysis pipeline tests: defect regression, maturity verdict, power-law fit."""

import math

import numpy as np
import pytest

from defectlaw.analysis import (
    EQUILIBRATED,
    INSUFFICIENT_DATA,
    NOT_EQUILIBRATED,
    defect_law_regression,
    maturity_assess,
    powerlaw_check,
)
from defectlaw.defects import DefectRecord, JoinedComponent, coverage_cutoff, join
from defectlaw.metrics import ComponentMetrics, information_content
from defectlaw.simulator import EnsembleSpec, inject_defects, sample_powerlaw
from defectlaw.stats import InsufficientDataError


def _lawful_join(M=10_000, beta=2.0, seed=0, mean_d=2.0):
    """Components following the generating law in the mean."""
    sample = sample_powerlaw(EnsembleSpec(M=M, beta=beta, seed=seed))
    rate = mean_d / np.mean([m.info for m in sample.components])
    records = inject_defects(sample, rate, seed=seed + 1)
    joined, orphans = join(sample.components, records)
    assert not orphans
    return joined


def _null_join(M=10_000, seed=0, per_component=2):
    """Defects thrown uniformly at random, blind to component size."""
    sample = sample_powerlaw(EnsembleSpec(M=M, beta=2.0, seed=123))
    rng = np.random.Generator(np.random.PCG64(seed))
    hits = rng.integers(0, M, size=per_component * M)
    counts = np.bincount(hits, minlength=M)
    records = [
        DefectRecord(m.id, int(c)) for m, c in zip(sample.components, counts)
    ]
    joined, _ = join(sample.components, records)
    return joined


# --- defect_law_regression -------------------------------------------------


def test_lawful_ensemble_high_adjusted_r2():
    joined = _lawful_join(M=10_000, seed=1)
    d_max = coverage_cutoff(joined, 0.95)
    fit = defect_law_regression(joined, d_max)
    assert fit.adj_r2 >= 0.95
    assert fit.slope > 0


def test_null_ensemble_slope_rarely_significant():
    # near-constant information content (one alphabet, mild size spread) and
    # defect counts drawn independently of it: the slope should be noise
    a0 = 10
    comps = [
        ComponentMetrics(f"c{i}", 50 + i % 51, a0,
                         information_content(50 + i % 51, a0))
        for i in range(4_000)
    ]
    insignificant = 0
    runs = 20
    for seed in range(runs):
        rng = np.random.Generator(np.random.PCG64(seed))
        ds = rng.integers(0, 8, size=len(comps))
        joined = [JoinedComponent(m, int(d)) for m, d in zip(comps, ds)]
        fit = defect_law_regression(joined, d_max=7)
        if fit.p_slope > 0.05:
            insignificant += 1
    assert insignificant >= 0.9 * runs


def test_regression_insufficient_bins():
    joined = [
        JoinedComponent(ComponentMetrics(f"c{i}", 10 + i, 5, 100.0 + i), d)
        for i, d in enumerate([0, 0, 3, 3])
    ]
    with pytest.raises(InsufficientDataError):
        defect_law_regression(joined, d_max=0)


# --- maturity_assess -------------------------------------------------------


def test_lawful_ensemble_equilibrated():
    report = maturity_assess(_lawful_join(M=20_000, seed=2))
    assert report.verdict == EQUILIBRATED
    assert report.adj_r2_cut >= 0.9
    assert report.p_value <= 0.01
    assert 0.0 <= report.excluded_fraction <= 1.0


def test_null_ensemble_not_equilibrated_mostly():
    rejected = 0
    runs = 20
    for seed in range(runs):
        report = maturity_assess(_null_join(M=5_000, seed=100 + seed))
        if report.verdict == NOT_EQUILIBRATED:
            rejected += 1
    assert rejected >= 0.9 * runs


def test_insufficient_bins_verdict():
    joined = [
        JoinedComponent(ComponentMetrics(f"c{i}", 10, 5, 50.0 + i), d)
        for i, d in enumerate([0, 0, 0, 1])
    ]
    report = maturity_assess(joined)
    assert report.verdict == INSUFFICIENT_DATA
    assert math.isnan(report.adj_r2_cut)
    assert report.bins_used == 2


def test_verdict_invariant_under_normalization():
    joined = _lawful_join(M=10_000, seed=3)
    plain = maturity_assess(joined, normalize=1.0)
    scaled = maturity_assess(joined, normalize=5000.0)
    assert plain.verdict == scaled.verdict
    assert plain.cutoff_d == scaled.cutoff_d
    assert scaled.adj_r2_cut == pytest.approx(plain.adj_r2_cut, rel=1e-9)
    assert scaled.p_value == pytest.approx(plain.p_value, rel=1e-9)


def test_components_above_cutoff_do_not_change_cut_fit():
    base = _lawful_join(M=10_000, seed=4)
    report = maturity_assess(base)
    # graft on extra components strictly above the cutoff, few enough that the
    # 95% coverage level stays put; the cut fit must not move at all
    covered = sum(1 for jc in base if jc.d <= report.cutoff_d)
    n_extra = max(1, int(covered / 0.95) - len(base) - 1)
    extras = [
        JoinedComponent(
            ComponentMetrics(f"x{i}", 5000, 500, information_content(5000, 500)),
            report.cutoff_d + 5 + i,
        )
        for i in range(n_extra)
    ]
    grown = maturity_assess(base + extras, d_max=report.cutoff_d + 5 + n_extra)
    assert grown.cutoff_d == report.cutoff_d
    assert grown.adj_r2_cut == pytest.approx(report.adj_r2_cut, rel=1e-12)
    assert grown.p_value == pytest.approx(report.p_value, rel=1e-12)


def test_maturity_domain():
    with pytest.raises(ValueError):
        maturity_assess([])
    joined = _null_join(M=100, seed=0)
    with pytest.raises(ValueError):
        maturity_assess(joined, fraction=1.5)
    with pytest.raises(ValueError):
        maturity_assess(joined, r2_threshold=1.0)
    with pytest.raises(ValueError):
        maturity_assess(joined, alpha=0.0)


def test_report_serialization():
    report = maturity_assess(_lawful_join(M=5_000, seed=5))
    d = report.to_dict()
    assert d["verdict"] == report.verdict
    text = report.to_text()
    assert "verdict" in text and report.verdict in text


# --- powerlaw_check --------------------------------------------------------


@pytest.mark.parametrize("beta", [1.0, 2.0])
def test_powerlaw_recovery(beta):
    sample = sample_powerlaw(EnsembleSpec(M=100_000, beta=beta, seed=42))
    fit = powerlaw_check(sample.components, n_bins=24)
    assert fit.beta_hat == pytest.approx(beta, abs=0.05)
    assert fit.n_points >= 3


def test_powerlaw_requires_spread():
    ms = [ComponentMetrics(f"c{i}", 40, 4, information_content(40, 4)) for i in range(50)]
    with pytest.raises(InsufficientDataError):
        powerlaw_check(ms)


def test_powerlaw_fixed_alphabet_mode_is_plain_linear():
    # constant alphabet: information content is proportional to t, so the
    # binned defect fit degenerates to d against mean t, no special casing
    a0 = 16
    rng = np.random.Generator(np.random.PCG64(8))
    ts = np.exp(rng.uniform(np.log(a0), np.log(5000), size=20_000)).astype(int)
    comps = [
        ComponentMetrics(f"k{i}", int(t), a0, information_content(int(t), a0))
        for i, t in enumerate(ts)
    ]
    rate = 2.0 / np.mean([m.info for m in comps])
    from defectlaw.simulator import make_sample

    records = inject_defects(make_sample(comps), rate, seed=9)
    joined, _ = join(comps, records)
    fit = defect_law_regression(joined, coverage_cutoff(joined, 0.95))
    assert fit.adj_r2 >= 0.95

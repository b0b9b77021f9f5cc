import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from unitdist import DistributionSpec, gof_report
from unitdist.errors import DegenerateDataError, DomainError, TailOverflowError
from unitdist.families import cdf, quantile
from unitdist.gof import (
    PAPER_K,
    ad_statistic,
    cvm_statistic,
    descriptive,
    information_criteria,
    ks_pvalue,
    ks_statistic,
    parameter_count,
)

UNIFORM = DistributionSpec.of("unit-power", 1.0)
identity = lambda y: np.asarray(y, dtype=float)  # noqa: E731


# -- information criteria ---------------------------------------------------


def test_criteria_fatima5_column():
    ic = information_criteria(40.4976, 1, 41)
    assert ic.aic == pytest.approx(-78.9952, abs=1e-4)
    assert ic.caic == pytest.approx(-78.8926, abs=1e-4)
    assert ic.bic == pytest.approx(-77.2816, abs=1e-4)
    assert ic.hqic == pytest.approx(-78.3712, abs=1e-4)


def test_criteria_beta_column():
    ic = information_criteria(40.6698, 2, 41)
    assert ic.aic == pytest.approx(-77.3396, abs=1e-4)
    assert ic.bic == pytest.approx(-73.9125, abs=1e-4)


def test_criteria_zero_likelihood():
    ic = information_criteria(0.0, 1, 41)
    assert ic.aic == 2.0
    assert ic.bic == pytest.approx(math.log(41), abs=1e-12)
    assert ic.bic == pytest.approx(3.7136, abs=1e-4)


@settings(max_examples=100, deadline=None)
@given(st.floats(-1e3, 1e3), st.integers(1, 5), st.integers(8, 500))
def test_criteria_identities(ll, k, n):
    ic = information_criteria(ll, k, n)
    assert ic.aic == pytest.approx(2 * k - 2 * ll, abs=1e-9)
    assert ic.caic - ic.aic == pytest.approx(2 * k * (k + 1) / (n - k - 1), abs=1e-9)
    assert ic.bic == pytest.approx(k * math.log(n) - 2 * ll, abs=1e-9)
    assert ic.hqic == pytest.approx(2 * k * math.log(math.log(n)) - 2 * ll, abs=1e-9)


def test_criteria_domain():
    with pytest.raises(DomainError):
        information_criteria(1.0, 3, 4)


# -- KS ---------------------------------------------------------------------


def test_ks_small_example():
    assert ks_statistic([0.25, 0.5, 0.75], identity) == pytest.approx(0.25, abs=1e-15)
    assert ks_statistic([0.25, 0.5, 0.75], UNIFORM) == pytest.approx(0.25, abs=1e-15)


def test_ks_at_midpoint_quantiles():
    spec = DistributionSpec.of("fatima5", 0.6)
    n = 17
    data = quantile(spec, (np.arange(1, n + 1) - 0.5) / n)
    assert ks_statistic(data, spec) == pytest.approx(0.5 / n, abs=1e-10)


def test_ks_matches_scipy(rng):
    spec = DistributionSpec.of("kumaraswamy", 2.0, 3.0)
    data = rng.uniform(0.05, 0.95, 30)
    ref = stats.kstest(data, lambda y: cdf(spec, y)).statistic
    assert ks_statistic(data, spec) == pytest.approx(ref, abs=1e-14)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0.01, 0.99), min_size=3, max_size=30), st.floats(0.3, 1.5))
def test_ks_probability_integral_invariance(values, alpha):
    spec = DistributionSpec.of("fatima5", alpha)
    u = np.asarray(cdf(spec, np.array(values)))
    if np.any(u <= 0) or np.any(u >= 1):
        return
    assert ks_statistic(values, spec) == pytest.approx(ks_statistic(u, identity), abs=1e-12)


def test_ks_pvalue_limits():
    assert ks_pvalue(0.0, 41) == 1.0
    assert ks_pvalue(1e-6, 41) == pytest.approx(1.0)
    assert ks_pvalue(1.0, 41) == pytest.approx(0.0, abs=1e-12)


def test_ks_pvalue_table_value():
    assert ks_pvalue(0.0991, 41) == pytest.approx(0.7789, abs=0.05)


def test_ks_pvalue_stephens_formula():
    d, n = 0.2, 25
    lam = (5 + 0.12 + 0.11 / 5) * d
    expected = 2 * sum((-1) ** (j - 1) * math.exp(-2 * j * j * lam * lam) for j in range(1, 200))
    assert ks_pvalue(d, n) == pytest.approx(expected, abs=1e-12)
    assert ks_pvalue(d, n) == pytest.approx(stats.kstwobign.sf(lam), abs=1e-12)


def test_ks_pvalue_domain():
    with pytest.raises(DomainError):
        ks_pvalue(1.5, 10)


# -- CvM and AD -------------------------------------------------------------


def test_cvm_small_example():
    expected = 1 / 36 + (0.25 - 1 / 6) ** 2 + 0.0 + (0.75 - 5 / 6) ** 2
    assert cvm_statistic([0.25, 0.5, 0.75], identity) == pytest.approx(expected, abs=1e-15)
    assert expected == pytest.approx(1 / 24, abs=1e-15)


def test_cvm_at_midpoint_quantiles():
    n = 9
    data = (2 * np.arange(1, n + 1) - 1) / (2 * n)
    assert cvm_statistic(data, identity) == pytest.approx(1 / (12 * n), abs=1e-15)


def test_ad_single_datum_at_median():
    spec = DistributionSpec.of("fatima5", 0.7)
    median = quantile(spec, 0.5)
    assert ad_statistic([median], spec) == pytest.approx(2 * math.log(2) - 1, abs=1e-9)


def test_cvm_matches_scipy_for_uniform(rng):
    data = rng.uniform(size=40)
    ref = stats.cramervonmises(data, "uniform").statistic
    assert cvm_statistic(data, identity) == pytest.approx(ref, rel=1e-12)


def test_ad_overflow_signal():
    with pytest.raises(TailOverflowError):
        ad_statistic([0.3, 0.6], lambda y: np.where(y > 0.5, 1.0, 0.5))


def _brute_force(u):
    """CvM and AD straight from the defining sums with ranks found by enumeration."""
    n = len(u)
    best = None
    for perm in itertools.permutations(range(n)):
        seq = [u[p] for p in perm]
        if all(seq[k] <= seq[k + 1] for k in range(n - 1)):
            best = seq
            break
    w2 = 1 / (12 * n) + sum((best[k - 1] - (2 * k - 1) / (2 * n)) ** 2 for k in range(1, n + 1))
    a2 = -n - sum((2 * k - 1) * (math.log(best[k - 1]) + math.log(1 - best[n - k])) for k in range(1, n + 1)) / n
    return w2, a2


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(0.01, 0.99), min_size=1, max_size=7))
def test_cvm_ad_match_brute_force(values):
    w2, a2 = _brute_force(values)
    assert cvm_statistic(values, identity) == pytest.approx(w2, abs=1e-12)
    assert ad_statistic(values, identity) == pytest.approx(a2, abs=1e-12)


# -- descriptive ------------------------------------------------------------


def test_descriptive_small():
    d = descriptive([0.1, 0.2, 0.3])
    assert d.mean == pytest.approx(0.2)
    assert d.median == pytest.approx(0.2)


def test_descriptive_symmetric():
    d = descriptive([0.2, 0.4, 0.5, 0.6, 0.8])
    assert d.skewness == pytest.approx(0.0, abs=1e-12)


def test_descriptive_ordering(rng):
    d = descriptive(rng.uniform(size=23))
    assert d.min <= d.q25 <= d.median <= d.q75 <= d.max


def test_descriptive_matches_scipy_estimators(rng):
    data = rng.beta(2.0, 5.0, 50)
    d = descriptive(data)
    assert d.skewness == pytest.approx(stats.skew(data, bias=False), rel=1e-12)
    assert d.kurtosis == pytest.approx(stats.kurtosis(data, fisher=False, bias=False), rel=1e-12)
    assert d.std_dev == pytest.approx(np.std(data, ddof=1), rel=1e-12)


def test_descriptive_degenerate():
    with pytest.raises(DegenerateDataError):
        descriptive([0.5, 0.5])
    with pytest.raises(DomainError):
        descriptive([0.5])


def test_descriptive_water(water):
    d = descriptive(water)
    assert (d.q25, d.median, d.q75) == (0.7775, 0.83, 0.91)
    assert d.min == 0.62 and d.max == 0.98
    assert len(d.as_dict()) == 10


# -- reports ----------------------------------------------------------------


def test_parameter_count():
    assert parameter_count("fatima2") == 3
    assert parameter_count("fatima2", paper_k=True) == PAPER_K["fatima2"] == 2
    assert parameter_count("fatima5", paper_k=True) == 1
    assert parameter_count("fatima5", k=4) == 4


def test_report_fatima5(water, water_fits):
    rep = gof_report(water_fits("fatima5"), water)
    assert rep.k == 1 and rep.n == 41
    assert rep.ks == pytest.approx(0.0991, abs=2e-3)
    assert rep.cvm == pytest.approx(0.0543, abs=2e-3)
    assert rep.ad == pytest.approx(0.3463, abs=2e-3)
    assert rep.decision == "Fail to reject" and not rep.reject_at_5pct


def test_report_kumaraswamy_ad(water, water_fits):
    assert gof_report(water_fits("kumaraswamy"), water).ad == pytest.approx(0.3499, abs=2e-3)


def test_report_fatima6(water, water_fits):
    rep = gof_report(water_fits("fatima6"), water)
    assert rep.log_lik == pytest.approx(40.6059, abs=1e-3)
    assert rep.ks == pytest.approx(0.0947, abs=2e-3)


def test_report_requires_convergence(water, water_fits):
    res = water_fits("fatima2")
    with pytest.raises(DomainError):
        gof_report(res, water)
    assert gof_report(res, water, require_converged=False).k == 3


def test_report_uniform_model_on_uniform_quantiles():
    from unitdist import fit

    n = 50
    data = (np.arange(1, n + 1) - 0.5) / n
    res = fit("unit-power", data)
    rep = gof_report(res, data)
    assert not rep.reject_at_5pct

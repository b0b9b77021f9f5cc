import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special, stats

from _params import ALL_FAMILIES, TYPICAL, random_spec, unit_quad
from unitdist import DistributionSpec, PowerBetaRep, to_power_beta
from unitdist.errors import DomainError, TailOverflowError
from unitdist.families import (
    CLOSED_QUANTILE,
    canonical_family,
    cdf,
    hazard,
    is_valid,
    log_pdf,
    pdf,
    quantile,
    raw_moment,
    sf,
)

D = DistributionSpec.of
GRID = np.linspace(0.005, 0.995, 100)


# -- construction -----------------------------------------------------------


def test_alias_resolves():
    assert D("mbur", 0.4776).family == "fatima5"
    assert canonical_family(" Fatima3 ") == "fatima3"


def test_unknown_family_lists_registered_names():
    with pytest.raises(DomainError, match="fatima7"):
        D("weibull", 1.0)


@pytest.mark.parametrize(
    "family, params, message",
    [
        ("fatima2", (2.0, 1.0, 5.0), "alpha > i - 1"),
        ("fatima2", (2.0, 0.0, 1.0), "beta > 0"),
        ("fatima2", (2.0, 1.0, 0.0), "i > 0"),
        ("fatima6", (1.0, -0.5), "n >= 0"),
        ("fatima7", (1.0, 0.5), "n >= 1"),
        ("kumaraswamy", (0.0, 1.0), "alpha > 0"),
        ("beta", (1.0, -1.0), "b > 0"),
        ("unit-power", (math.nan,), "finite"),
    ],
)
def test_constraints_enforced(family, params, message):
    with pytest.raises(DomainError, match=message):
        DistributionSpec(family, params)
    assert not is_valid(family, params)


def test_wrong_arity():
    with pytest.raises(DomainError, match="takes 2"):
        D("fatima3", 1.0)


def test_boundary_values_allowed():
    assert is_valid("fatima6", (1.0, 0.0))
    assert is_valid("fatima7", (1.0, 1.0))
    assert is_valid("fatima2", (4.0001, 1.0, 5.0))


def test_spec_is_immutable_and_hashable():
    s = D("fatima5", 0.5)
    with pytest.raises(AttributeError):
        s.family = "beta"
    assert hash(s) == hash(D("mbur", 0.5))
    assert s.as_dict() == {"alpha": 0.5}
    assert s.k == 1


# -- point values -----------------------------------------------------------


@pytest.mark.parametrize(
    "spec, y, expected",
    [
        (D("kumaraswamy", 1.0, 1.0), 0.5, 1.0),
        (D("fatima5", 1.0), 0.5, 1.5),
        (D("fatima1", 2.0, 3.0), 0.5, 0.1875),
    ],
)
def test_pdf_values(spec, y, expected):
    assert pdf(spec, y) == pytest.approx(expected, rel=1e-14)


def test_log_pdf_values():
    ys = np.array([0.1, 0.5, 0.9])
    np.testing.assert_allclose(log_pdf(D("fatima1", 1.0, 1.0), ys), 0.0, atol=1e-15)
    assert log_pdf(D("fatima4", 1.0, 2.0), 0.5) == pytest.approx(0.0, abs=1e-15)


def test_fatima2_with_unit_i_is_kumaraswamy():
    np.testing.assert_allclose(
        log_pdf(D("fatima2", 3.0, 2.0, 1.0), GRID), log_pdf(D("kumaraswamy", 3.0, 2.0), GRID), rtol=1e-13, atol=1e-13
    )


@pytest.mark.parametrize(
    "spec, y, expected",
    [
        (D("kumaraswamy", 1.0, 1.0), 0.3, 0.3),
        (D("fatima3", 1.0, 2.0), 0.25, 0.4375),
    ],
)
def test_cdf_values(spec, y, expected):
    assert cdf(spec, y) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize(
    "spec, u, expected",
    [
        (D("fatima3", 1.0, 1.0), 0.7, 0.7),
        (D("fatima1", 2.0, 3.0), 0.5, 0.5 ** (1.0 / 6.0)),
        (D("fatima4", 1.0, 1.0), 0.42, 0.42),
    ],
)
def test_quantile_values(spec, u, expected):
    assert quantile(spec, u) == pytest.approx(expected, rel=1e-14)
    assert quantile(spec, 0.0) == 0.0
    assert quantile(spec, 1.0) == 1.0


def test_quantile_fatima1_example():
    assert quantile(D("fatima1", 2.0, 3.0), 0.5) == pytest.approx(0.890899, abs=1e-6)


@pytest.mark.parametrize(
    "spec, r, expected",
    [
        (D("fatima1", 2.0, 3.0), 1.0, 6.0 / 7.0),
        (D("fatima3", 1.0, 1.0), 1.0, 0.5),
    ],
)
def test_moment_values(spec, r, expected):
    assert raw_moment(spec, r) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("family", ALL_FAMILIES)
def test_moment_order_zero(family):
    assert raw_moment(DistributionSpec(family, TYPICAL[family][0]), 0.0) == 1.0


def test_moment_domain():
    with pytest.raises(DomainError):
        raw_moment(D("fatima5", 0.5), -1.0)


@pytest.mark.parametrize(
    "spec, y, expected",
    [
        (D("kumaraswamy", 1.0, 1.0), 0.5, 2.0),
        (D("fatima5", 1.0), 0.5, 3.0),
    ],
)
def test_hazard_values(spec, y, expected):
    assert hazard(spec, y) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("family", ALL_FAMILIES)
def test_hazard_tends_to_pdf_near_zero(family):
    spec = DistributionSpec(family, TYPICAL[family][0])
    for y in (1e-3, 1e-6, 1e-9):
        # h = f / (1 - F), so the relative gap to f is F / (1 - F)
        gap = abs(hazard(spec, y) / pdf(spec, y) - 1.0)
        assert gap <= 1.01 * cdf(spec, y) / sf(spec, y) + 1e-15


def test_hazard_overflow_signal():
    spec = D("kumaraswamy", 200.0, 1.0)  # survival (1 - y)**200 underflows at y = 0.99
    with pytest.raises(TailOverflowError):
        hazard(spec, 0.99)


def test_domain_errors():
    spec = D("fatima5", 0.5)
    for y in (0.0, 1.0, -0.1, 1.2):
        with pytest.raises(DomainError):
            pdf(spec, y)
    with pytest.raises(DomainError):
        cdf(spec, 1.5)
    with pytest.raises(DomainError):
        quantile(spec, -0.01)


@pytest.mark.parametrize("family", ALL_FAMILIES)
def test_cdf_limits(family):
    spec = DistributionSpec(family, TYPICAL[family][0])
    assert cdf(spec, 0.0) == 0.0 and cdf(spec, 1.0) == 1.0
    assert cdf(spec, 1.0 - 1e-12) == pytest.approx(1.0, abs=1e-6)
    assert sf(spec, 0.0) == 1.0 and sf(spec, 1.0) == 0.0


def test_vectorized_shapes():
    spec = D("fatima7", 0.5, 3.0)
    y = np.array([[0.2, 0.4], [0.6, 0.8]])
    for func in (pdf, log_pdf, cdf, sf, hazard):
        assert func(spec, y).shape == (2, 2)
    assert isinstance(pdf(spec, 0.3), float)


# -- power-beta representation ---------------------------------------------


@pytest.mark.parametrize(
    "spec, expected",
    [
        (D("fatima5", 0.5), (2.0, 2.0, 0.25)),
        (D("kumaraswamy", 3.0, 2.0), (1.0, 3.0, 0.5)),
        (D("unit-power", 4.0), (1.0, 1.0, 0.25)),
        (D("unit-rayleigh", 2.0), (1.0, 1.0, 4.0)),
        (D("fatima1", 2.0, 3.0), (1.0, 1.0, 1.0 / 6.0)),
        (D("fatima2", 6.0, 2.0, 3.0), (3.0, 4.0, 0.5)),
        (D("fatima3", 0.5, 3.0), (1.0, 3.0, 0.25)),
        (D("fatima4", 2.0, 8.0), (1.0, 1.0, 0.5)),
        (D("fatima6", 0.5, 2.0), (3.0, 3.0, 0.25)),
        (D("fatima7", 0.5, 5.0), (3.0, 3.0, 0.25)),
        (D("beta", 2.0, 7.0), (2.0, 7.0, 1.0)),
    ],
)
def test_power_beta_mapping(spec, expected):
    rep = to_power_beta(spec)
    assert (rep.a, rep.b, rep.c) == pytest.approx(expected, rel=1e-15)


def test_power_beta_validation():
    with pytest.raises(DomainError):
        PowerBetaRep(1.0, 0.0, 1.0)


def _scipy_power_beta(rep, y):
    """Density and CDF of B**c through scipy's Beta and the change of variables."""
    w = y ** (1.0 / rep.c)
    dens = stats.beta.pdf(w, rep.a, rep.b) * w / (rep.c * y)
    return dens, stats.beta.cdf(w, rep.a, rep.b)


@pytest.mark.parametrize("family", ALL_FAMILIES)
def test_direct_forms_match_power_beta_oracle(family, rng):
    for _ in range(5):
        spec = random_spec(family, rng)
        dens, dist = _scipy_power_beta(to_power_beta(spec), GRID)
        np.testing.assert_allclose(pdf(spec, GRID), dens, rtol=1e-10, atol=1e-300)
        np.testing.assert_allclose(cdf(spec, GRID), dist, rtol=1e-10, atol=1e-14)


@pytest.mark.parametrize("family", ALL_FAMILIES)
def test_power_beta_class_matches_direct(family, rng):
    spec = random_spec(family, rng)
    rep = to_power_beta(spec)
    np.testing.assert_allclose(rep.log_pdf(GRID), log_pdf(spec, GRID), rtol=1e-10, atol=1e-10)
    np.testing.assert_allclose(rep.cdf(GRID), cdf(spec, GRID), rtol=1e-10, atol=1e-15)
    np.testing.assert_allclose(rep.sf(GRID), sf(spec, GRID), rtol=1e-10, atol=1e-15)


# -- reparametrization identities -------------------------------------------


def _same_density(s1, s2):
    np.testing.assert_allclose(log_pdf(s1, GRID), log_pdf(s2, GRID), rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(cdf(s1, GRID), cdf(s2, GRID), rtol=1e-12, atol=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 2.0), st.floats(0.2, 10.0))
def test_fatima3_is_kumaraswamy(alpha, beta):
    _same_density(D("fatima3", alpha, beta), D("kumaraswamy", beta, 1.0 / alpha**2))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 5.0), st.floats(0.2, 5.0))
def test_fatima1_is_unit_power(alpha, beta):
    _same_density(D("fatima1", alpha, beta), D("unit-power", alpha * beta))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 2.0), st.floats(0.2, 5.0))
def test_fatima4_is_unit_power(alpha, beta):
    _same_density(D("fatima4", alpha, beta), D("unit-power", beta / alpha**2))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 2.0))
def test_fatima5_6_7_coincide(alpha):
    _same_density(D("fatima5", alpha), D("fatima6", alpha, 1.0))
    _same_density(D("fatima5", alpha), D("fatima7", alpha, 3.0))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 2.0), st.floats(0.0, 10.0))
def test_fatima6_is_fatima7(alpha, n):
    _same_density(D("fatima6", alpha, n), D("fatima7", alpha, 2.0 * n + 1.0))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 10.0), st.floats(0.2, 5.0))
def test_fatima2_first_order_is_kumaraswamy(alpha, beta):
    _same_density(D("fatima2", alpha, beta, 1.0), D("kumaraswamy", alpha, beta))


@pytest.mark.parametrize("alpha", [1.0, 2.0, 3.0, 7.0])
@pytest.mark.parametrize("beta", [0.5, 2.0])
def test_fatima2_top_order_is_fatima1(alpha, beta):
    _same_density(D("fatima2", alpha, beta, alpha), D("fatima1", alpha, beta))


# -- calculus consistency ---------------------------------------------------


@pytest.mark.parametrize("family", ALL_FAMILIES)
def test_cdf_is_integral_of_pdf(family, rng):
    spec = random_spec(family, rng)
    from scipy import integrate

    for y in (0.2, 0.5, 0.8):
        val, _ = integrate.quad(lambda t: pdf(spec, t), 0.0, y, epsabs=1e-13, epsrel=1e-13, limit=300)
        assert cdf(spec, y) == pytest.approx(val, abs=1e-8)


@pytest.mark.parametrize("family", ALL_FAMILIES)
def test_moments_match_quadrature(family, rng):
    spec = random_spec(family, rng)
    for r in (0.5, 1.0, 2.0, 3.0):
        ref = unit_quad(lambda t: t**r * pdf(spec, t))
        assert raw_moment(spec, r) == pytest.approx(ref, rel=1e-8)


@pytest.mark.parametrize("family", ["fatima1", "fatima2", "fatima3", "fatima4"])
def test_dedicated_moments_match_power_beta(family, rng):
    for _ in range(10):
        spec = random_spec(family, rng)
        for r in (0.5, 1.0, 2.0, 3.0):
            assert raw_moment(spec, r) == pytest.approx(to_power_beta(spec).raw_moment(r), rel=1e-12)


def test_sf_avoids_cancellation():
    spec = D("kumaraswamy", 2.0, 8.0)
    y = 1.0 - 1e-9
    expected = (1.0 - y**8) ** 2  # (1 - y^beta)^alpha
    assert sf(spec, y) == pytest.approx(expected, rel=1e-6)
    assert sf(spec, y) > 0.0


def test_log_pdf_stable_near_one():
    spec = D("kumaraswamy", 8.4271, 2.2817)
    y = 1.0 - 1e-12
    assert np.isfinite(log_pdf(spec, y))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ALL_FAMILIES), st.integers(0, 2**32 - 1))
def test_cdf_monotone_and_bounded(family, seed):
    spec = random_spec(family, np.random.default_rng(seed))
    vals = cdf(spec, np.linspace(0.0, 1.0, 201))
    assert np.all(np.diff(vals) >= -1e-15)
    assert np.all((vals >= 0.0) & (vals <= 1.0))
    assert np.all(pdf(spec, GRID) >= 0.0)


@pytest.mark.parametrize("family", ALL_FAMILIES)
def test_quantile_roundtrip_grid(family, rng):
    u = np.arange(1, 100) / 100.0
    for params in TYPICAL[family]:
        spec = DistributionSpec(family, params)
        assert np.max(np.abs(cdf(spec, quantile(spec, u)) - u)) <= 1e-9
    spec = random_spec(family, rng)
    assert np.max(np.abs(cdf(spec, quantile(spec, u)) - u)) <= 1e-9


def test_closed_quantile_registry():
    assert CLOSED_QUANTILE == {"unit-power", "unit-rayleigh", "kumaraswamy", "fatima1", "fatima3", "fatima4"}


def test_beta_baseline_matches_scipy():
    spec = D("beta", 10.8716, 2.1667)
    np.testing.assert_allclose(pdf(spec, GRID), stats.beta.pdf(GRID, 10.8716, 2.1667), rtol=1e-11)
    np.testing.assert_allclose(
        quantile(spec, GRID), special.betaincinv(10.8716, 2.1667, GRID), rtol=1e-9
    )

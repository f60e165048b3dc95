import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from intervalmc.bayes import TruncatedGaussianPosterior, credible_bounds, credible_interval, posterior_cdf
from intervalmc.errors import InvalidProbabilityError, NumericError
from intervalmc.intervals import QuantileConstraint
from intervalmc.neyman import confidence_interval
from intervalmc.oracle import posterior_cdf_quadrature

DEFAULT = QuantileConstraint()

# Frozen from mpmath (40 digits) via t = x0 - sqrt2 erfinv(2 (1-q) Phi(x0) - 1).
CREDIBLE = {
    5.0: (4.000000996701870622953537, 6.000000187951589146279115),
    0.0: (0.2001736861668909258953366, 1.409608709293454553291976),
    -3.0: (0.05223271636948968814614507, 0.5219797691642534647761281),
}


def test_pdf_examples():
    assert TruncatedGaussianPosterior(1.0).pdf(-0.5) == 0.0
    assert TruncatedGaussianPosterior(0.0).pdf(0.0) == pytest.approx(2 / math.sqrt(2 * math.pi), rel=1e-15)


@pytest.mark.parametrize("x0", [-3.0, 0.0, 0.5, 3.0])
def test_pdf_normalised(x0):
    integrate = pytest.importorskip("scipy.integrate")
    p = TruncatedGaussianPosterior(x0)
    total = integrate.quad(p.pdf, 0, max(x0, 0) + 12, points=[max(x0, 0)], epsabs=1e-13)[0]
    assert total == pytest.approx(1.0, abs=1e-9)


def test_cdf_examples():
    for x0 in (-3.0, 0.0, 3.0):
        p = TruncatedGaussianPosterior(x0)
        assert p.cdf(0.0) == 0.0
        assert p.cdf(-1.0) == 0.0
        assert p.cdf(1e6) == pytest.approx(1.0, abs=1e-12)
    assert TruncatedGaussianPosterior(0.0).cdf(1.0) == pytest.approx(0.6826894921370858971704650912, abs=1e-15)


def test_cdf_matches_printed_erf_form():
    for x0 in np.linspace(-2, 4, 13):
        p = TruncatedGaussianPosterior(x0)
        phi = np.linspace(0, 8, 81)
        assert np.max(np.abs(p.cdf(phi) - p.cdf_erf_form(phi))) < 1e-13


def test_cdf_strictly_increasing():
    phi = np.linspace(0, 10, 2001)
    for x0 in (-2.0, 0.5, 4.0):
        cdf = TruncatedGaussianPosterior(x0).cdf(phi)
        assert np.all(np.diff(cdf) >= 0)
        # Strict until the CDF is within rounding of 1.
        body = cdf < 1 - 1e-12
        assert np.all(np.diff(cdf)[body[1:]] > 0)


def test_cdf_against_adaptive_quadrature_random_points():
    rng = np.random.default_rng(20240607)
    for x0, phi in zip(rng.uniform(-3, 5, 100), rng.uniform(0, 8, 100)):
        assert TruncatedGaussianPosterior(x0).cdf(phi) == pytest.approx(
            posterior_cdf_quadrature(x0, phi), abs=1e-9
        )


def test_cdf_against_scipy_quad():
    integrate = pytest.importorskip("scipy.integrate")
    rng = np.random.default_rng(5)
    for x0, phi in zip(rng.uniform(-3, 5, 20), rng.uniform(0, 8, 20)):
        p = TruncatedGaussianPosterior(x0)
        ref = integrate.quad(p.pdf, 0, phi, epsabs=1e-13, epsrel=1e-13)[0]
        assert p.cdf(phi) == pytest.approx(ref, abs=1e-11)


@pytest.mark.parametrize("x0", [-4.0, -1.0, 0.0, 2.0, 5.0])
@pytest.mark.parametrize("q", [0.01, 0.16, 0.5, 0.84, 0.99])
def test_quantile_round_trip(x0, q):
    p = TruncatedGaussianPosterior(x0)
    phi = p.quantile(q)
    assert phi >= 0
    assert p.cdf(phi) == pytest.approx(q, abs=1e-12)


def test_quantile_large_x0():
    assert TruncatedGaussianPosterior(5.0).quantile(0.8413447460685429) == pytest.approx(6.0, abs=1e-4)


def test_quantile_rejects_bad_probability():
    with pytest.raises(InvalidProbabilityError):
        TruncatedGaussianPosterior(0.0).quantile(1.0)


def test_extreme_negative_datum_is_reported():
    with pytest.raises(NumericError):
        TruncatedGaussianPosterior(-40.0)


@pytest.mark.parametrize("x0", sorted(CREDIBLE))
def test_credible_interval_frozen(x0):
    iv = credible_interval(x0)
    assert iv.isclose(CREDIBLE[x0], 1e-12)
    assert iv.lo > 0
    p = TruncatedGaussianPosterior(x0)
    assert p.cdf(iv.hi) - p.cdf(iv.lo) == pytest.approx(DEFAULT.alpha, abs=1e-12)


def test_credible_interval_with_scaled_u():
    iv = credible_interval(1.0, DEFAULT, u=0.5)  # x0/u = 2
    ref = credible_interval(2.0)
    assert iv.isclose((0.5 * ref.lo, 0.5 * ref.hi), 1e-12)


@given(st.floats(min_value=-5, max_value=8))
def test_mass_identity(x0):
    p = TruncatedGaussianPosterior(x0)
    iv = p.credible_interval()
    assert p.cdf(iv.hi) - p.cdf(iv.lo) == pytest.approx(DEFAULT.alpha, abs=1e-10)


def test_agreement_with_neyman_at_large_datum():
    assert credible_interval(5.0).isclose(confidence_interval(5.0), 1e-4)


def test_vectorised_bounds_match_scalar():
    xs = np.linspace(-3, 5, 33)
    lo, hi = credible_bounds(xs)
    for x, a, b in zip(xs, lo, hi):
        assert credible_interval(x).isclose((a, b), 1e-14)
    assert np.all(np.diff(lo) > 0) and np.all(np.diff(hi) > 0)


def test_vectorised_cdf_broadcasts():
    out = posterior_cdf(np.array([0.0, 1.0]), 1.0)
    assert out.shape == (2,)
    assert out[0] == pytest.approx(TruncatedGaussianPosterior(0.0).cdf(1.0))


def test_against_scipy_truncnorm():
    stats = pytest.importorskip("scipy.stats")
    for x0 in (-3.0, -0.5, 0.0, 1.2, 4.0):
        ref = stats.truncnorm.ppf([DEFAULT.q_lo, DEFAULT.q_hi], -x0, np.inf, loc=x0)
        assert credible_interval(x0).isclose(ref, 1e-9)

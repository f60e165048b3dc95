import math

import mpmath
import numpy as np
import pytest

from intervalmc.bayes import TruncatedGaussianPosterior, credible_interval
from intervalmc.errors import NumericError
from intervalmc.intervals import QuantileConstraint
from intervalmc.model import MeasurementModel
from intervalmc.neyman import ClipToZero, FlipFlop, confidence_bounds
from intervalmc.oracle import (
    QuadratureSpec,
    adaptive_simpson,
    credible_crossings,
    neyman_coverage_given_a,
    neyman_success_given_x0,
    neyman_success_given_x0_riemann,
    posterior_cdf_quadrature,
    posterior_cdf_riemann,
    rejection_inflated_confidence,
    rejection_inflated_confidence_quadrature,
    rejection_inflated_confidence_riemann,
    riemann,
    willink_success_given_a,
    willink_success_riemann,
)
from intervalmc.specfun import std_normal_cdf

DEFAULT = QuantileConstraint()
ALPHA = DEFAULT.alpha

# Frozen from a 40-digit mpmath bisection on the truncated-normal CDF,
# independent of this package; scipy.stats.truncnorm agrees to 1e-12.
WILLINK = {
    0.1: 0.0970740568242823,
    0.3: 0.589438470131065,
    0.5: 0.728854674660629,
    1.0: 0.787454801219732,
    2.0: 0.712300606826882,
    3.0: 0.686407985457657,
    4.0: 0.682904044650832,
}
REJECTION = {0.01: 0.809111213863555, 0.2: 0.771461288153752}
NEYMAN_GIVEN_X0 = {0.5: 0.770551168259899}

# Riemann sums over indicator integrands converge like 1/panels; 10^6 panels
# keep them inside 1e-5.
INDICATOR_PANELS = 10**6


def test_adaptive_simpson_polynomial_and_gaussian():
    assert adaptive_simpson(lambda x: x**3 - 2 * x, 0, 2) == pytest.approx(0.0, abs=1e-13)
    val = adaptive_simpson(lambda x: math.exp(-0.5 * x * x), -8, 8, 1e-12)
    assert val == pytest.approx(math.sqrt(2 * math.pi), abs=1e-11)
    assert adaptive_simpson(math.sin, math.pi, 0) == pytest.approx(-2.0, abs=1e-9)
    assert adaptive_simpson(math.sin, 1.0, 1.0) == 0.0


def test_adaptive_simpson_reports_depth_exhaustion():
    with pytest.raises(NumericError):
        adaptive_simpson(lambda x: 1.0 / math.sqrt(abs(x - 0.3)) if x != 0.3 else 1e300, 0, 1, 1e-14, max_depth=8)


def test_riemann_midpoint():
    assert riemann(lambda x: x * x, 0, 1, 1000) == pytest.approx(1 / 3, abs=1e-7)


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(abs_tol=0)
    with pytest.raises(ValueError):
        QuadratureSpec(range_half_width=-1)


# --- fixed-measurand Neyman coverage -------------------------------------


@pytest.mark.parametrize("a0", [0.2, 1.0, 3.0])
def test_neyman_coverage_is_alpha(a0):
    assert neyman_coverage_given_a(a0) == ALPHA
    assert neyman_coverage_given_a(a0, DEFAULT, ClipToZero()) == ALPHA


def test_flip_flop_coverage_against_brute_force():
    policy = FlipFlop()
    x = np.linspace(-12, 16, 2_000_001)
    blo, bhi = confidence_bounds(x, DEFAULT, policy)
    for a0 in (0.3, 0.9, 1.7, 3.0):
        dens = np.exp(-0.5 * (x - a0) ** 2) / math.sqrt(2 * math.pi)
        brute = np.sum(dens * ((blo <= a0) & (a0 <= bhi))) * (x[1] - x[0])
        assert neyman_coverage_given_a(a0, DEFAULT, policy) == pytest.approx(brute, abs=1e-5)


def test_flip_flop_undercovers_somewhere():
    rates = [neyman_coverage_given_a(a, DEFAULT, FlipFlop()) for a in np.arange(0.1, 4, 0.1)]
    assert min(rates) < ALPHA - 0.01


# --- rejection inflation ----------------------------------------------------


@pytest.mark.parametrize("a0", sorted(REJECTION))
def test_rejection_inflation_frozen(a0):
    assert rejection_inflated_confidence(a0) == pytest.approx(REJECTION[a0], abs=1e-12)


def test_rejection_inflation_closed_form_shape():
    # alpha / Phi(1 + a0) at the default constraint
    for a0 in (0.01, 0.5, 3.0):
        assert rejection_inflated_confidence(a0) == pytest.approx(ALPHA / std_normal_cdf(1 + a0), abs=1e-15)
    assert rejection_inflated_confidence(3.0) == pytest.approx(0.6827, abs=1e-4)
    with pytest.raises(ValueError):
        rejection_inflated_confidence(0.0)


@pytest.mark.parametrize("a0", [0.01, 0.2, 1.0, 3.0])
def test_rejection_inflation_three_ways(a0):
    closed = rejection_inflated_confidence(a0)
    assert rejection_inflated_confidence_quadrature(a0) == pytest.approx(closed, abs=1e-9)
    assert rejection_inflated_confidence_riemann(a0, panels=INDICATOR_PANELS) == pytest.approx(closed, abs=1e-5)


def test_rejection_inflation_general_constraint():
    c = QuantileConstraint(0.05, 0.9)
    for a0 in (0.1, 1.5):
        closed = rejection_inflated_confidence(a0, c)
        assert rejection_inflated_confidence_quadrature(a0, c) == pytest.approx(closed, abs=1e-9)


def test_rejection_inflation_decreasing():
    vals = [rejection_inflated_confidence(a) for a in np.arange(0.2, 4.01, 0.2)]
    assert np.all(np.diff(vals) < 0)


# --- Neyman interval on the fixed-datum space --------------------------------


def test_neyman_success_given_x0_examples():
    assert neyman_success_given_x0(-2.0) == 0.0
    assert neyman_success_given_x0(0.5) == pytest.approx(NEYMAN_GIVEN_X0[0.5], abs=1e-12)
    assert neyman_success_given_x0(6.0) == pytest.approx(ALPHA, abs=1e-8)


@pytest.mark.parametrize("x0", [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.5, 4.0])
def test_neyman_success_riemann_agreement(x0):
    assert neyman_success_given_x0_riemann(x0, panels=INDICATOR_PANELS) == pytest.approx(
        neyman_success_given_x0(x0), abs=1e-5
    )


def test_neyman_success_with_mpmath():
    mpmath.mp.dps = 30
    x0 = mpmath.mpf("0.5")
    mass = (mpmath.ncdf(1.5 - x0) - mpmath.ncdf(-x0)) / mpmath.ncdf(x0)
    assert neyman_success_given_x0(0.5) == pytest.approx(float(mass), abs=1e-14)


# --- credible intervals on the fixed-measurand space -----------------------


@pytest.mark.parametrize("a0", sorted(WILLINK))
def test_willink_frozen(a0):
    assert willink_success_given_a(a0) == pytest.approx(WILLINK[a0], abs=1e-9)


@pytest.mark.parametrize("a0", [0.1, 0.5, 1.0, 4.0])
def test_willink_quadrature_and_riemann(a0):
    roots = willink_success_given_a(a0)
    assert willink_success_given_a(a0, method="quadrature") == pytest.approx(roots, abs=1e-9)
    assert willink_success_riemann(a0, panels=INDICATOR_PANELS) == pytest.approx(roots, abs=1e-5)


def test_willink_crossings_are_consistent():
    x_lo, x_hi = credible_crossings(1.0)
    assert credible_interval(x_lo).hi == pytest.approx(1.0, abs=1e-9)
    assert credible_interval(x_hi).lo == pytest.approx(1.0, abs=1e-9)


def test_willink_shape():
    vals = {a: willink_success_given_a(a) for a in np.round(np.arange(0.1, 4.01, 0.2), 12)}
    assert abs(vals[3.9] - ALPHA) < 0.002
    assert willink_success_given_a(4.0) == pytest.approx(ALPHA, abs=0.002)
    # Rises above alpha for moderate a0 and only collapses close to zero.
    peak = max(vals, key=vals.get)
    assert 0.5 < peak < 1.5 and vals[peak] > ALPHA + 0.1
    assert vals[0.1] < 0.1


def test_willink_rejects_nonpositive():
    with pytest.raises(ValueError):
        willink_success_given_a(0.0)
    with pytest.raises(ValueError):
        willink_success_given_a(1.0, method="simpson")


def test_willink_scales_with_u():
    m = MeasurementModel(0.5)
    assert willink_success_given_a(0.5, model=m) == pytest.approx(WILLINK[1.0], abs=1e-9)


# --- posterior CDF ------------------------------------------------------------


@pytest.mark.parametrize(
    "x0, phi, expected",
    [(0.0, 1.0, 0.6826894921370859), (-3.0, 0.5, 0.8276691471617235), (3.0, 2.5, 0.3076028732074233)],
)
def test_posterior_cdf_three_ways(x0, phi, expected):
    assert posterior_cdf_quadrature(x0, phi) == pytest.approx(expected, abs=1e-10)
    assert posterior_cdf_riemann(x0, phi) == pytest.approx(expected, abs=1e-5)


def test_posterior_mass_of_neyman_interval():
    # Posterior mass of [2, 4] given x0 = 3.
    p = TruncatedGaussianPosterior(3.0)
    assert p.cdf(4.0) - p.cdf(2.0) == pytest.approx(0.68361229903395, abs=1e-12)

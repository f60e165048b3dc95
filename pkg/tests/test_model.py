import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from intervalmc.model import MeasurementModel, open_uniform
from intervalmc.montecarlo import ks_critical, ks_statistic
from intervalmc.streams import RandomStream

model = MeasurementModel()


def test_u_must_be_positive():
    with pytest.raises(ValueError):
        MeasurementModel(0.0)
    with pytest.raises(ValueError):
        MeasurementModel(-1.0)


@pytest.mark.parametrize("u", [1.0, 0.3, 2.5])
def test_pdf_mode_and_one_sigma_ratio(u):
    m = MeasurementModel(u)
    assert m.sampling_pdf(1.7, 1.7) == pytest.approx(1 / math.sqrt(2 * math.pi * u * u), rel=1e-15)
    assert m.sampling_pdf(1.7 + u, 1.7) / m.sampling_pdf(1.7, 1.7) == pytest.approx(math.exp(-0.5), rel=1e-14)


def test_pdf_direct_value():
    assert model.sampling_pdf(0.5, 0.5) == pytest.approx(0.3989422804014327, rel=1e-15)


def test_cdf_values():
    assert model.sampling_cdf(2.0, 2.0) == 0.5
    assert model.sampling_cdf(3.0, 2.0) == pytest.approx(0.8413447460685429, abs=1e-15)
    assert model.sampling_cdf(1.0, 2.0) == pytest.approx(0.15865525393145705, abs=1e-15)


@given(
    st.floats(min_value=-10, max_value=10),
    st.floats(min_value=-10, max_value=10),
    st.floats(min_value=-10, max_value=10),
)
def test_cdf_shift_invariance(x, a, shift):
    assert model.sampling_cdf(x + shift, a + shift) == pytest.approx(model.sampling_cdf(x, a), abs=1e-13)


def test_cdf_monotone_in_x_and_a():
    x = np.linspace(-5, 5, 2001)
    assert np.all(np.diff(model.sampling_cdf(x, 0.3)) > 0)
    a = np.linspace(-5, 5, 2001)
    assert np.all(np.diff(model.sampling_cdf(0.3, a)) < 0)


def test_open_uniform_never_hits_ends():
    gen = RandomStream(5).generator()
    v = open_uniform(gen, 10**5)
    assert v.min() > 0 and v.max() < 1


def test_draw_is_deterministic():
    a = model.draw(2.0, RandomStream(11), size=1000)
    b = model.draw(2.0, RandomStream(11), size=1000)
    assert np.array_equal(a, b)
    c = model.draw(2.0, RandomStream(11, stream_id=1), size=1000)
    assert not np.array_equal(a, c)


def test_draw_scalar():
    assert isinstance(model.draw(1.0, RandomStream(1)), float)


@pytest.mark.stochastic
def test_draw_moments():
    n = 10**6
    x = model.draw(2.0, RandomStream(2024), size=n)
    assert abs(x.mean() - 2.0) < 0.004
    assert x.var() == pytest.approx(1.0, rel=0.01)


@pytest.mark.stochastic
def test_draw_moments_scale_with_u():
    m = MeasurementModel(0.25)
    x = m.draw(-1.0, RandomStream(7), size=10**6)
    assert abs(x.mean() + 1.0) < 4 * 0.25 / 1000
    assert x.var() == pytest.approx(0.0625, rel=0.01)


@pytest.mark.stochastic
def test_draw_ks_against_cdf():
    n = 10**5
    x = model.draw(0.7, RandomStream(99), size=n)
    d = ks_statistic(x, lambda s: model.sampling_cdf(s, 0.7))
    assert d < ks_critical(n, 0.001)


def test_ks_helpers_match_scipy():
    stats = pytest.importorskip("scipy.stats")
    x = model.draw(0.0, RandomStream(3), size=5000)
    ours = ks_statistic(x, lambda s: model.sampling_cdf(s, 0.0))
    ref = stats.kstest(x, "norm").statistic
    assert ours == pytest.approx(ref, abs=1e-12)
    # Asymptotic 0.1% critical value: 1.94947.../sqrt(n)
    assert ks_critical(10**4) == pytest.approx(1.9494746 / 100, rel=1e-6)

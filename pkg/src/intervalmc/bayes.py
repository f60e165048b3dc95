"""Credible intervals from the truncated-Gaussian posterior.

With a uniform prior on a >= 0 and a Gaussian datum x0, the post-data
density of the measurand is N(phi; x0, u^2) restricted to phi >= 0 and
renormalised by Phi(x0/u) = erfc(-x0/(sqrt(2) u))/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidProbabilityError, NumericError
from .intervals import DEFAULT_CONSTRAINT, Interval, QuantileConstraint
from .specfun import SQRT2, SQRT2PI, erf, erfc, std_normal_cdf, std_normal_quantile


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def _normalizer(m):
    norm = std_normal_cdf(m)
    if np.any(np.asarray(norm) <= 0.0):
        raise NumericError(f"posterior normaliser underflows for x0/u = {np.min(m)}", 0.0)
    return norm


def _cdf(t, m, norm):
    """Posterior CDF in standardised coordinates (t = phi/u, m = x0/u).

    Both branches equal [erf(m/sqrt2) + erf((t-m)/sqrt2)] / erfc(-m/sqrt2);
    they differ only in which pair of normal tails gets subtracted, so
    the difference never cancels catastrophically.
    """
    t = np.maximum(t, 0.0)
    pos = m >= 0
    # m >= 0: Phi(t - m) - Phi(-m);  m < 0: Phi(m) - Phi(m - t)
    first = np.where(pos, t - m, m)
    second = np.where(pos, -m, m - t)
    num = std_normal_cdf(first) - std_normal_cdf(second)
    return np.clip(num / norm, 0.0, 1.0)


def _pdf(t, m, norm):
    d = t - m
    return np.where(t >= 0, np.exp(-0.5 * d * d) / (SQRT2PI * norm), 0.0)


def _quantile(q, m, norm):
    # Closed form t = m - z((1 - q) Phi(m)), then one Newton step on the CDF.
    t = m - std_normal_quantile((1.0 - q) * norm)
    dens = _pdf(t, m, norm)
    resid = _cdf(t, m, norm) - q
    t = np.where(dens > 0, t - resid / np.where(dens > 0, dens, 1.0), t)
    return np.maximum(t, 0.0)


@dataclass(frozen=True)
class TruncatedGaussianPosterior:
    """Posterior of a >= 0 given the datum ``x0`` under a flat prior on [0, inf)."""

    x0: float
    u: float = 1.0

    def __post_init__(self):
        if not (self.u > 0 and np.isfinite(self.u)):
            raise ValueError(f"standard uncertainty must be positive, got {self.u}")
        if not np.isfinite(self.x0):
            raise ValueError(f"x0 must be finite, got {self.x0}")
        _normalizer(self.x0 / self.u)

    @property
    def normalizer(self) -> float:
        """Posterior mass of the untruncated likelihood on phi >= 0."""
        return std_normal_cdf(self.x0 / self.u)

    def pdf(self, phi):
        m = self.x0 / self.u
        t = np.asarray(phi, dtype=float) / self.u
        return _out(_pdf(t, m, self.normalizer) / self.u)

    def cdf(self, phi):
        """Posterior CDF; 0 for phi < 0 and tends to 1 as phi grows."""
        m = self.x0 / self.u
        t = np.asarray(phi, dtype=float) / self.u
        return _out(_cdf(t, m, self.normalizer))

    def cdf_erf_form(self, phi):
        """The CDF written directly with erf/erfc, as it is usually printed.

        Loses relative accuracy for strongly negative x0; kept for
        cross-checking :meth:`cdf`.
        """
        m = self.x0 / self.u
        t = np.maximum(np.asarray(phi, dtype=float) / self.u, 0.0)
        val = (erf(m / SQRT2) + erf((t - m) / SQRT2)) / erfc(-m / SQRT2)
        return _out(np.where(np.asarray(phi) < 0, 0.0, val))

    def quantile(self, q):
        arr = np.asarray(q, dtype=float)
        if not np.all((arr > 0.0) & (arr < 1.0)):
            raise InvalidProbabilityError(f"posterior quantile needs 0 < q < 1, got {q!r}")
        m = self.x0 / self.u
        return _out(_quantile(arr, m, self.normalizer) * self.u)

    def credible_interval(self, c: QuantileConstraint = DEFAULT_CONSTRAINT) -> Interval:
        return Interval(self.quantile(c.q_lo), self.quantile(c.q_hi))


def credible_interval(x0: float, c: QuantileConstraint = DEFAULT_CONSTRAINT, u: float = 1.0) -> Interval:
    return TruncatedGaussianPosterior(x0, u).credible_interval(c)


def credible_bounds(x0, c: QuantileConstraint = DEFAULT_CONSTRAINT, u: float = 1.0):
    """Vectorised credible-interval endpoints for an array of data."""
    m = np.asarray(x0, dtype=float) / u
    norm = _normalizer(m)
    lo = _quantile(c.q_lo, m, norm) * u
    hi = _quantile(c.q_hi, m, norm) * u
    return lo, hi


def posterior_cdf(x0, phi, u: float = 1.0):
    """Vectorised posterior CDF over arrays of (x0, phi)."""
    m = np.asarray(x0, dtype=float) / u
    return _out(_cdf(np.asarray(phi, dtype=float) / u, m, _normalizer(m)))

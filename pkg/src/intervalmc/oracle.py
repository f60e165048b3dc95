"""Analytic and quadrature values for every success-rate curve.

These are the reference values the Monte Carlo engine is checked against.
Each one also has a crude fixed-step counterpart (``*_riemann``) so that
two unrelated computations back every number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bayes import TruncatedGaussianPosterior, credible_bounds, posterior_cdf
from .errors import NumericError
from .intervals import DEFAULT_CONSTRAINT, QuantileConstraint
from .model import DEFAULT_MODEL, MeasurementModel
from .neyman import (
    AllowNegative,
    BoundaryPolicy,
    ClipToZero,
    FlipFlop,
    confidence_bounds,
    confidence_interval,
    coverage_probability_given_x0,
)
from .specfun import std_normal_cdf, std_normal_quantile


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-9
    range_half_width: float = 8.0
    max_depth: int = 60

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if not self.range_half_width > 0:
            raise ValueError("range_half_width must be positive")


DEFAULT_QUADRATURE = QuadratureSpec()


def adaptive_simpson(f, a: float, b: float, abs_tol: float = 1e-9, initial_panels: int = 16, max_depth: int = 60) -> float:
    """Integrate a smooth scalar function on [a, b] by adaptive Simpson.

    The range is first cut into ``initial_panels`` pieces so narrow peaks
    are not missed.  Each panel's tolerance is proportional to its width,
    and accepted panels get the usual Richardson correction.
    """
    if b == a:
        return 0.0
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    length = b - a
    total = 0.0
    edges = np.linspace(a, b, initial_panels + 1)

    stack = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (lo + hi)
        flo, fmid, fhi = f(lo), f(mid), f(hi)
        whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
        stack.append((lo, hi, flo, fmid, fhi, whole, 0))

    while stack:
        lo, hi, flo, fmid, fhi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + mid), 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        h = hi - lo
        left = h / 12.0 * (flo + 4.0 * flm + fmid)
        right = h / 12.0 * (fmid + 4.0 * frm + fhi)
        delta = left + right - whole
        tol = abs_tol * h / length
        # Two forced refinements guard against a coarse panel passing by luck.
        if depth >= 2 and abs(delta) <= 15.0 * tol:
            total += left + right + delta / 15.0
        elif depth >= max_depth:
            raise NumericError(f"adaptive Simpson exceeded depth {max_depth} near x = {mid}", abs(delta) / 15.0)
        else:
            stack.append((lo, mid, flo, flm, fmid, left, depth + 1))
            stack.append((mid, hi, fmid, frm, fhi, right, depth + 1))
    return sign * total


def riemann(f, a: float, b: float, panels: int = 100_000) -> float:
    """Fixed-step midpoint sum; ``f`` must accept numpy arrays."""
    h = (b - a) / panels
    x = a + h * (np.arange(panels) + 0.5)
    return float(np.sum(f(x)) * h)


def _bisect_decreasing(g, lo: float, hi: float, tol: float = 1e-13) -> float:
    """Root of a decreasing function on [lo, hi], clamped to the ends when none lies inside."""
    if g(lo) <= 0.0:
        return lo
    if g(hi) >= 0.0:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# --- Neyman interval judged on the fixed-datum sample space -----------------


def neyman_success_given_x0(
    x0: float,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    policy: BoundaryPolicy = AllowNegative(),
    model: MeasurementModel = DEFAULT_MODEL,
) -> float:
    """Posterior mass of the confidence interval built from ``x0``."""
    return coverage_probability_given_x0(confidence_interval(x0, c, policy, model), x0, model)


def neyman_success_given_x0_riemann(
    x0: float,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    policy: BoundaryPolicy = AllowNegative(),
    model: MeasurementModel = DEFAULT_MODEL,
    panels: int = 100_000,
    half_width: float = 8.0,
) -> float:
    lo, hi = confidence_interval(x0, c, policy, model)
    post = TruncatedGaussianPosterior(x0, model.u)
    top = max(x0, 0.0) + half_width * model.u
    return riemann(lambda phi: post.pdf(phi) * ((phi >= lo) & (phi <= hi)), 0.0, top, panels)


# --- Neyman interval judged on the fixed-measurand sample space ------------


def neyman_coverage_given_a(
    a0: float,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    policy: BoundaryPolicy = AllowNegative(),
    model: MeasurementModel = DEFAULT_MODEL,
) -> float:
    """Probability over x ~ N(a0, u^2) that the confidence interval contains a0.

    Equals c.alpha for the allow-negative and clipping policies whenever
    a0 > 0; flip-flopping moves it away from alpha.
    """
    u = model.u
    inside_lo, inside_hi = a0 + u * c.z_lo, a0 + u * c.z_hi

    def mass(x_lo, x_hi):
        if x_hi <= x_lo:
            return 0.0
        return std_normal_cdf((x_hi - a0) / u) - std_normal_cdf((x_lo - a0) / u)

    if isinstance(policy, AllowNegative):
        return c.alpha
    if isinstance(policy, ClipToZero):
        if a0 > 0:
            return c.alpha
        # a0 == 0 is contained by every clipped interval with lo <= 0.
        return std_normal_cdf(c.z_hi) if a0 == 0 else 0.0
    if isinstance(policy, FlipFlop):
        cut = policy.threshold * u
        two_sided = mass(max(inside_lo, cut), inside_hi)
        # Upper limit [0, max(x - u z_t, 0)] holds a0 >= 0 once x >= a0 + u z_t.
        if a0 < 0:
            return two_sided
        z_t = std_normal_quantile(policy.upper_tail)
        start = a0 + u * z_t if a0 > 0 else -math.inf
        upper = mass(start, cut)
        return two_sided + upper
    raise TypeError(f"not a boundary policy: {policy!r}")


def rejection_inflated_confidence(
    a0: float, c: QuantileConstraint = DEFAULT_CONSTRAINT, model: MeasurementModel = DEFAULT_MODEL
) -> float:
    """Coverage when wholly negative intervals are discarded and the datum redrawn.

    The containment event a0 + u z_lo <= x <= a0 + u z_hi lies inside the
    acceptance event x > u z_lo whenever a0 > 0, so the rate is
    alpha / P(accept) = alpha / Phi(a0/u - z_lo); alpha / Phi(1 + a0/u) at
    the default constraint.
    """
    if not a0 > 0:
        raise ValueError(f"rejection inflation needs a0 > 0, got {a0}")
    return c.alpha / std_normal_cdf(a0 / model.u - c.z_lo)


def rejection_inflated_confidence_quadrature(
    a0: float,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    model: MeasurementModel = DEFAULT_MODEL,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Same quantity as :func:`rejection_inflated_confidence`, by integrating the sampling density."""
    u = model.u
    pdf = lambda x: model.sampling_pdf(x, a0)  # noqa: E731
    cut = u * c.z_lo
    lo_x, hi_x = a0 - spec.range_half_width * u, a0 + spec.range_half_width * u
    accept = adaptive_simpson(pdf, max(cut, lo_x), hi_x, spec.abs_tol)
    hit = adaptive_simpson(pdf, max(a0 + u * c.z_lo, cut), a0 + u * c.z_hi, spec.abs_tol)
    return hit / accept


def rejection_inflated_confidence_riemann(
    a0: float,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    model: MeasurementModel = DEFAULT_MODEL,
    panels: int = 100_000,
    half_width: float = 8.0,
) -> float:
    u = model.u

    def both(x):
        lo, hi = confidence_bounds(x, c, AllowNegative(), model)
        dens = model.sampling_pdf(x, a0)
        return dens * (hi > 0), dens * ((hi > 0) & (lo <= a0) & (a0 <= hi))

    h = 2 * half_width * u / panels
    x = a0 - half_width * u + h * (np.arange(panels) + 0.5)
    accept, hit = both(x)
    return float(hit.sum() / accept.sum())


# --- Credible interval judged on the fixed-measurand sample space ----------


def credible_crossings(
    a0: float,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    model: MeasurementModel = DEFAULT_MODEL,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> tuple[float, float]:
    """Data values where the credible interval's endpoints pass through ``a0``.

    Both endpoints increase with the datum, so a0 lies in the credible
    interval of x exactly when x_lo <= x <= x_hi, with a2(x_lo) = a0 and
    a1(x_hi) = a0.  Equivalently F(a0 | x_lo) = q_hi and F(a0 | x_hi) = q_lo.
    Crossings beyond a0 +- range_half_width u are clamped to that window.
    """
    u = model.u
    w = spec.range_half_width * u

    def g(q):
        return lambda x: float(posterior_cdf(x, a0, u)) - q

    x_lo = _bisect_decreasing(g(c.q_hi), a0 - w, a0 + w)
    x_hi = _bisect_decreasing(g(c.q_lo), a0 - w, a0 + w)
    return x_lo, x_hi


def willink_success_given_a(
    a0: float,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    model: MeasurementModel = DEFAULT_MODEL,
    method: str = "roots",
) -> float:
    """Probability over x ~ N(a0, u^2) that the credible interval of x contains a0.

    ``method="roots"`` takes the Gaussian measure between the two crossing
    points; ``method="quadrature"`` integrates the sampling density between
    them by adaptive Simpson instead, restricted to a0 +- range_half_width u.
    """
    if not a0 > 0:
        raise ValueError(f"need a0 > 0, got {a0}")
    u = model.u
    x_lo, x_hi = credible_crossings(a0, c, model, spec)
    if method == "roots":
        return std_normal_cdf((x_hi - a0) / u) - std_normal_cdf((x_lo - a0) / u)
    if method == "quadrature":
        if x_hi <= x_lo:
            return 0.0
        return adaptive_simpson(lambda x: model.sampling_pdf(x, a0), x_lo, x_hi, spec.abs_tol)
    raise ValueError(f"unknown method {method!r}")


def willink_success_riemann(
    a0: float,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    model: MeasurementModel = DEFAULT_MODEL,
    panels: int = 100_000,
    half_width: float = 8.0,
) -> float:
    """Midpoint sum of density times the containment indicator over a0 +- 8u."""
    u = model.u

    def integrand(x):
        lo, hi = credible_bounds(x, c, u)
        return model.sampling_pdf(x, a0) * ((lo <= a0) & (a0 <= hi))

    return riemann(integrand, a0 - half_width * u, a0 + half_width * u, panels)


# --- Posterior CDF by direct integration ------------------------------------


def posterior_cdf_quadrature(
    x0: float, phi: float, spec: QuadratureSpec = DEFAULT_QUADRATURE, u: float = 1.0
) -> float:
    """Integral of the posterior density from 0 to ``phi`` by adaptive Simpson.

    Mass beyond max(x0, 0) + range_half_width u is dropped; it is below
    1e-14 for any x0.
    """
    if phi < 0:
        raise ValueError(f"phi must be non-negative, got {phi}")
    post = TruncatedGaussianPosterior(x0, u)
    top = min(phi, max(x0, 0.0) + spec.range_half_width * u)
    if top <= 0:
        return 0.0
    panels = max(4, int(math.ceil(top / (0.5 * u))))
    return adaptive_simpson(post.pdf, 0.0, top, spec.abs_tol, initial_panels=panels, max_depth=spec.max_depth)


def posterior_cdf_riemann(x0: float, phi: float, u: float = 1.0, panels: int = 100_000, half_width: float = 8.0) -> float:
    post = TruncatedGaussianPosterior(x0, u)
    top = min(phi, max(x0, 0.0) + half_width * u)
    if top <= 0:
        return 0.0
    return riemann(post.pdf, 0.0, top, panels)

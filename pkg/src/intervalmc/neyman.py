"""Neyman confidence intervals by inverting the central confidence belt.

For the Gaussian model the belt lines are x1(a) = a + u z(q_lo) and
x2(a) = a + u z(q_hi); inverting them at the datum gives
[x0 - u z(q_hi), x0 - u z(q_lo)], i.e. [x0 - u, x0 + u] for the default
one-sigma constraint.  The boundary policy decides what happens when that
interval reaches into a < 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .bayes import posterior_cdf
from .errors import InvalidProbabilityError, NumericError
from .intervals import DEFAULT_CONSTRAINT, Interval, QuantileConstraint
from .model import DEFAULT_MODEL, MeasurementModel
from .specfun import std_normal_quantile


@dataclass(frozen=True)
class AllowNegative:
    """Report the belt inversion as is, negative or not."""

    name = "allow"


@dataclass(frozen=True)
class ClipToZero:
    """Intersect with [0, inf); a wholly negative interval collapses to [0, 0]."""

    name = "clip"


@dataclass(frozen=True)
class FlipFlop:
    """Switch to an upper limit [0, hi] with F(x0 | hi) = upper_tail when x0/u < threshold."""

    threshold: float = 1.0
    upper_tail: float = 0.32
    name = "flipflop"

    def __post_init__(self):
        if not math.isfinite(self.threshold):
            raise ValueError("flip-flop threshold must be finite")
        if not 0.0 < self.upper_tail < 1.0:
            raise InvalidProbabilityError(f"upper_tail must lie in (0, 1), got {self.upper_tail}")


BoundaryPolicy = Union[AllowNegative, ClipToZero, FlipFlop]

POLICIES = {"allow": AllowNegative, "clip": ClipToZero, "flipflop": FlipFlop}


def policy_from_name(name: str, **kwargs) -> BoundaryPolicy:
    try:
        return POLICIES[name](**kwargs)
    except KeyError:
        raise ValueError(f"unknown boundary policy {name!r}; pick one of {sorted(POLICIES)}") from None


def belt_bounds(
    a, c: QuantileConstraint = DEFAULT_CONSTRAINT, model: MeasurementModel = DEFAULT_MODEL
) -> Interval:
    """The acceptance region [x1(a), x2(a)] holding probability c.alpha of the datum."""
    return Interval(a + model.u * c.z_lo, a + model.u * c.z_hi)


def solve_measurand(
    x0: float,
    target: float,
    model: MeasurementModel = DEFAULT_MODEL,
    tol: float = 1e-12,
    max_iter: int = 400,
) -> float:
    """Solve F(x0 | a) = target for a by bisection.

    F(x0 | a) decreases in a, so the root is bracketed by stepping outward
    from x0 with doubling widths.  Used where no closed form applies and as
    an independent check on the closed forms.
    """
    if not 0.0 < target < 1.0:
        raise InvalidProbabilityError(f"target probability must lie in (0, 1), got {target}")

    def g(a):
        return model.sampling_cdf(x0, a) - target

    step = model.u
    lo, hi = x0 - step, x0 + step
    for _ in range(200):
        if g(lo) >= 0.0 >= g(hi):
            break
        step *= 2.0
        lo, hi = x0 - step, x0 + step
    else:
        raise NumericError("could not bracket the belt inversion", g(lo))

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        r = g(mid)
        if abs(r) <= tol or hi - lo <= 4 * np.finfo(float).eps * max(1.0, abs(mid)):
            return mid
        if r > 0:
            lo = mid
        else:
            hi = mid
    raise NumericError("bisection did not converge", g(0.5 * (lo + hi)))


def confidence_bounds(
    x0,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    policy: BoundaryPolicy = AllowNegative(),
    model: MeasurementModel = DEFAULT_MODEL,
):
    """Vectorised confidence-interval endpoints (lo, hi) for an array of data."""
    x = np.asarray(x0, dtype=float)
    u = model.u
    lo = x - u * c.z_hi
    hi = x - u * c.z_lo

    if isinstance(policy, AllowNegative):
        return lo, hi
    if isinstance(policy, ClipToZero):
        return np.where(hi < 0, 0.0, np.maximum(lo, 0.0)), np.maximum(hi, 0.0)
    if isinstance(policy, FlipFlop):
        # An upper limit that is itself negative collapses to [0, 0].
        limit = np.maximum(x - u * std_normal_quantile(policy.upper_tail), 0.0)
        switch = x / u < policy.threshold
        return np.where(switch, 0.0, lo), np.where(switch, limit, hi)
    raise TypeError(f"not a boundary policy: {policy!r}")


def confidence_interval(
    x0: float,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    policy: BoundaryPolicy = AllowNegative(),
    model: MeasurementModel = DEFAULT_MODEL,
    method: str = "closed",
) -> Interval:
    """Confidence interval for the datum ``x0``.

    ``method="bisect"`` solves the two belt-inversion equations numerically
    instead of using the Gaussian closed form.
    """
    if method == "closed":
        lo, hi = confidence_bounds(x0, c, policy, model)
        return Interval(float(lo), float(hi))
    if method != "bisect":
        raise ValueError(f"unknown method {method!r}")

    raw = Interval(solve_measurand(x0, c.q_hi, model), solve_measurand(x0, c.q_lo, model))
    if isinstance(policy, AllowNegative):
        return raw
    if isinstance(policy, ClipToZero):
        return raw.clip_nonnegative()
    if isinstance(policy, FlipFlop):
        if x0 / model.u < policy.threshold:
            return Interval(0.0, max(solve_measurand(x0, policy.upper_tail, model), 0.0))
        return raw
    raise TypeError(f"not a boundary policy: {policy!r}")


def coverage_probability_given_x0(iv: Interval, x0: float, model: MeasurementModel = DEFAULT_MODEL) -> float:
    """Posterior probability that the measurand lies in ``iv`` once ``x0`` is known.

    Endpoints below zero are clamped to zero, so a wholly negative interval
    scores exactly 0.
    """
    lo, hi = max(iv.lo, 0.0), max(iv.hi, 0.0)
    if hi <= lo:
        return 0.0
    return float(posterior_cdf(x0, hi, model.u) - posterior_cdf(x0, lo, model.u))

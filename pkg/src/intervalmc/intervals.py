"""Interval and quantile-constraint types shared by both procedures."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidConstraintError
from .specfun import std_normal_cdf, std_normal_quantile

PHI_MINUS_1 = std_normal_cdf(-1.0)
PHI_PLUS_1 = std_normal_cdf(1.0)


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] in units of u."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"interval needs lo <= hi, got [{self.lo}, {self.hi}]")

    def __contains__(self, a) -> bool:
        return self.lo <= a <= self.hi

    def __add__(self, shift: float) -> "Interval":
        return Interval(self.lo + shift, self.hi + shift)

    def __iter__(self):
        yield self.lo
        yield self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def clip_nonnegative(self) -> "Interval":
        """Intersection with [0, inf); a wholly negative interval becomes [0, 0]."""
        if self.hi < 0:
            return Interval(0.0, 0.0)
        return Interval(max(self.lo, 0.0), self.hi)

    def isclose(self, other, abs_tol: float = 1e-9) -> bool:
        lo, hi = other
        return math.isclose(self.lo, lo, rel_tol=0, abs_tol=abs_tol) and math.isclose(
            self.hi, hi, rel_tol=0, abs_tol=abs_tol
        )


@dataclass(frozen=True)
class QuantileConstraint:
    """Tail probabilities (q_lo, q_hi) fixing an interval of coverage q_hi - q_lo.

    For a credible interval the endpoints are the posterior q_lo and q_hi
    quantiles.  For a confidence interval the lower endpoint satisfies
    F(x0 | lo) = q_hi and the upper one F(x0 | hi) = q_lo.
    """

    q_lo: float = PHI_MINUS_1
    q_hi: float = PHI_PLUS_1

    def __post_init__(self):
        if not (0.0 < self.q_lo < self.q_hi < 1.0):
            raise InvalidConstraintError(
                f"need 0 < q_lo < q_hi < 1, got ({self.q_lo}, {self.q_hi})"
            )

    @property
    def alpha(self) -> float:
        return self.q_hi - self.q_lo

    @property
    def z_lo(self) -> float:
        return std_normal_quantile(self.q_lo)

    @property
    def z_hi(self) -> float:
        return std_normal_quantile(self.q_hi)

    @classmethod
    def rounded(cls) -> "QuantileConstraint":
        """The two-digit values (0.16, 0.84) quoted in print."""
        return cls(0.16, 0.84)

    @classmethod
    def from_coverage(cls, alpha: float, q_lo: float = PHI_MINUS_1) -> "QuantileConstraint":
        """Hold the lower tail at ``q_lo`` and widen the upper one to reach ``alpha``."""
        return cls(q_lo, q_lo + alpha)

    def is_central_one_sigma(self) -> bool:
        return self.q_lo == PHI_MINUS_1 and self.q_hi == PHI_PLUS_1


DEFAULT_CONSTRAINT = QuantileConstraint()

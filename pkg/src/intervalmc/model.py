"""Gaussian measurement model: the datum x is drawn from N(a, u^2)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .specfun import SQRT2, SQRT2PI, erfc, std_normal_quantile
from .streams import RandomStream


@dataclass(frozen=True)
class MeasurementModel:
    """Sampling distribution of the datum given the measurand.

    All inputs and outputs are in units of ``u``; the default ``u = 1``
    works directly in the normalised coordinates a/u and x/u.
    """

    u: float = 1.0

    def __post_init__(self):
        if not (self.u > 0 and np.isfinite(self.u)):
            raise ValueError(f"standard uncertainty must be positive, got {self.u}")

    def sampling_pdf(self, x, a):
        z = (np.asarray(x, dtype=float) - a) / self.u
        out = np.exp(-0.5 * z * z) / (SQRT2PI * self.u)
        return float(out) if out.ndim == 0 else out

    def sampling_cdf(self, x, a):
        """F(x | a) = erfc((a - x) / (sqrt(2) u)) / 2."""
        arg = (np.asarray(a, dtype=float) - np.asarray(x, dtype=float)) / (SQRT2 * self.u)
        out = 0.5 * erfc(arg)
        return float(out) if np.ndim(out) == 0 else out

    def draw(self, a, rng: RandomStream | np.random.Generator, size=None):
        """Gaussian variates by inverse-CDF transform of open-interval uniforms."""
        gen = rng.generator() if isinstance(rng, RandomStream) else rng
        uni = open_uniform(gen, 1 if size is None else size)
        x = a + self.u * std_normal_quantile(uni)
        return float(x[0]) if size is None else x


def open_uniform(gen: np.random.Generator, size) -> np.ndarray:
    """Uniforms on (0, 1) with 53-bit resolution; never exactly 0 or 1."""
    k = gen.integers(0, 2**53, size=size, dtype=np.uint64)
    return (k.astype(np.float64) + 0.5) * 2.0**-53


DEFAULT_MODEL = MeasurementModel()

"""Success-rate experiments under the two conditioning schemes.

Fixed measurand: hold a0, draw data, build a new interval per datum.
Fixed result: hold x0 and its single interval, and draw measurand values
consistent with it through the shift a_i = a_seed + x0 - x_i.

Trials are split into chunks of ``chunk_size``; chunk k always draws from
substream k of the caller's stream, and per-chunk counts are summed, so
reports are bit-identical for any number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Optional

import numpy as np

from .bayes import credible_bounds, credible_interval
from .errors import ResamplingCapError
from .intervals import DEFAULT_CONSTRAINT, Interval, QuantileConstraint
from .model import DEFAULT_MODEL, MeasurementModel, open_uniform
from .neyman import AllowNegative, BoundaryPolicy, confidence_bounds, confidence_interval
from .oracle import (
    neyman_coverage_given_a,
    neyman_success_given_x0,
    rejection_inflated_confidence,
    willink_success_given_a,
)
from .specfun import std_normal_quantile
from .streams import RandomStream

CHUNK_SIZE = 1 << 16
RESAMPLING_CAP = 10**6


@dataclass(frozen=True)
class ExperimentReport:
    n_trials: int
    n_success: int
    analytic: Optional[float] = None

    def __post_init__(self):
        if not 0 <= self.n_success <= self.n_trials or self.n_trials < 1:
            raise ValueError(f"need 0 <= n_success <= n_trials and n_trials >= 1, got {self.n_success}/{self.n_trials}")

    @property
    def rate(self) -> float:
        return self.n_success / self.n_trials

    @property
    def std_err(self) -> float:
        p = self.rate
        return math.sqrt(p * (1.0 - p) / self.n_trials)

    def deviation(self) -> float:
        """Distance from the analytic value in standard errors (inf if std_err is 0 and they differ)."""
        if self.analytic is None:
            raise ValueError("report carries no analytic value")
        diff = abs(self.rate - self.analytic)
        if self.std_err == 0:
            return 0.0 if diff == 0 else math.inf
        return diff / self.std_err

    def as_dict(self) -> dict:
        return {**asdict(self), "rate": self.rate, "std_err": self.std_err}

    def __add__(self, other: "ExperimentReport") -> "ExperimentReport":
        return ExperimentReport(self.n_trials + other.n_trials, self.n_success + other.n_success, self.analytic)


def _run_chunks(n: int, rng: RandomStream, chunk_fn: Callable, workers: int, chunk_size: int):
    """Apply ``chunk_fn(count, generator)`` to each chunk and sum the integer results."""
    if n < 1:
        raise ValueError(f"need at least one trial, got n={n}")
    counts = [min(chunk_size, n - start) for start in range(0, n, chunk_size)]

    def job(k):
        return chunk_fn(counts[k], rng.substream(k).generator())

    if workers <= 1 or len(counts) == 1:
        results = [job(k) for k in range(len(counts))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, range(len(counts))))
    return tuple(int(sum(col)) for col in zip(*results))


def _normals(gen: np.random.Generator, size: int) -> np.ndarray:
    return std_normal_quantile(open_uniform(gen, size))


def _resample_until(gen, count: int, propose: Callable, accept: Callable, cap: int) -> np.ndarray:
    """First ``count`` accepted values from a sequence of proposals.

    Proposals are drawn in blocks of ``count`` and scanned in order, so a
    rejected trial is simply followed by the next draw.  The raw sequence
    does not depend on the acceptance rule, which keeps runs that differ
    only in that rule on common random numbers.  ``cap`` bounds the number
    of consecutive rejections a single trial may suffer.
    """
    kept = []
    have = 0
    run = 0  # rejections since the last acceptance
    while have < count:
        values = propose(gen, count)
        ok = np.flatnonzero(accept(values))[: count - have]
        if ok.size == 0:
            run += count
            if run >= cap:
                raise ResamplingCapError(f"a trial was still rejected after {cap} draws")
            continue
        gaps = np.diff(ok, prepend=-1) - 1
        gaps[0] += run
        if gaps.max() >= cap:
            raise ResamplingCapError(f"a trial was still rejected after {cap} draws")
        kept.append(values[ok])
        have += ok.size
        run = count - 1 - ok[-1]
    return np.concatenate(kept)


def run_fixed_measurand(
    a0: float,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    policy: BoundaryPolicy = AllowNegative(),
    n: int = 10**6,
    rng: RandomStream | None = None,
    *,
    model: MeasurementModel = DEFAULT_MODEL,
    workers: int = 1,
    chunk_size: int = CHUNK_SIZE,
) -> ExperimentReport:
    """Coverage of the confidence interval over repeated data at fixed ``a0``."""
    rng = rng or RandomStream(0)
    u = model.u

    def chunk(count, gen):
        x = a0 + u * _normals(gen, count)
        lo, hi = confidence_bounds(x, c, policy, model)
        return count, int(np.count_nonzero((lo <= a0) & (a0 <= hi)))

    trials, hits = _run_chunks(n, rng, chunk, workers, chunk_size)
    return ExperimentReport(trials, hits, neyman_coverage_given_a(a0, c, policy, model))


def run_fixed_measurand_rejecting_negative(
    a0: float,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    n: int = 10**6,
    cap: int = RESAMPLING_CAP,
    rng: RandomStream | None = None,
    *,
    model: MeasurementModel = DEFAULT_MODEL,
    workers: int = 1,
    chunk_size: int = CHUNK_SIZE,
) -> ExperimentReport:
    """As :func:`run_fixed_measurand`, but a wholly negative interval sends the trial back for a new datum."""
    rng = rng or RandomStream(0)
    u = model.u
    policy = AllowNegative()

    def chunk(count, gen):
        x = _resample_until(
            gen,
            count,
            lambda g, k: a0 + u * _normals(g, k),
            lambda v: confidence_bounds(v, c, policy, model)[1] > 0,
            cap,
        )
        lo, hi = confidence_bounds(x, c, policy, model)
        return count, int(np.count_nonzero((lo <= a0) & (a0 <= hi)))

    trials, hits = _run_chunks(n, rng, chunk, workers, chunk_size)
    analytic = rejection_inflated_confidence(a0, c, model) if a0 > 0 else None
    return ExperimentReport(trials, hits, analytic)


def _shifted_measurands(gen, count, x0, a_seed, u, cap):
    def propose(g, k):
        x = a_seed + u * _normals(g, k)
        return a_seed + x0 - x

    # Negative shifted measurands are rejected and the trial repeated.
    return _resample_until(gen, count, propose, lambda a: a >= 0, cap)


def shift_sample(
    x0: float,
    n: int,
    a_seed: float = 1.0,
    rng: RandomStream | None = None,
    *,
    cap: int = RESAMPLING_CAP,
    model: MeasurementModel = DEFAULT_MODEL,
) -> np.ndarray:
    """``n`` accepted measurand values consistent with the datum ``x0``.

    Their distribution is the truncated-Gaussian posterior of x0, although
    no prior is ever sampled.
    """
    rng = rng or RandomStream(0)
    parts = []
    for k, start in enumerate(range(0, n, CHUNK_SIZE)):
        count = min(CHUNK_SIZE, n - start)
        parts.append(_shifted_measurands(rng.substream(k).generator(), count, x0, a_seed, model.u, cap))
    return np.concatenate(parts) if parts else np.empty(0)


def _fixed_result(x0, iv: Interval, a_seed, n, rng, cap, model, workers, chunk_size):
    def chunk(count, gen):
        a = _shifted_measurands(gen, count, x0, a_seed, model.u, cap)
        return count, int(np.count_nonzero((iv.lo <= a) & (a <= iv.hi)))

    return _run_chunks(n, rng, chunk, workers, chunk_size)


def run_fixed_result(
    x0: float,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    a_seed: float = 1.0,
    n: int = 10**6,
    rng: RandomStream | None = None,
    *,
    cap: int = RESAMPLING_CAP,
    model: MeasurementModel = DEFAULT_MODEL,
    workers: int = 1,
    chunk_size: int = CHUNK_SIZE,
) -> ExperimentReport:
    """Success rate of the one credible interval built from ``x0`` over shifted measurands."""
    rng = rng or RandomStream(0)
    iv = credible_interval(x0, c, model.u)
    trials, hits = _fixed_result(x0, iv, a_seed, n, rng, cap, model, workers, chunk_size)
    return ExperimentReport(trials, hits, c.alpha)


def run_fixed_result_neyman(
    x0: float,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    policy: BoundaryPolicy = AllowNegative(),
    a_seed: float = 1.0,
    n: int = 10**6,
    rng: RandomStream | None = None,
    *,
    cap: int = RESAMPLING_CAP,
    model: MeasurementModel = DEFAULT_MODEL,
    workers: int = 1,
    chunk_size: int = CHUNK_SIZE,
) -> ExperimentReport:
    """Success rate of the one confidence interval built from ``x0`` over shifted measurands."""
    rng = rng or RandomStream(0)
    iv = confidence_interval(x0, c, policy, model)
    trials, hits = _fixed_result(x0, iv, a_seed, n, rng, cap, model, workers, chunk_size)
    return ExperimentReport(trials, hits, neyman_success_given_x0(x0, c, policy, model))


def run_willink(
    a0: float,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    n: int = 10**6,
    rng: RandomStream | None = None,
    *,
    model: MeasurementModel = DEFAULT_MODEL,
    workers: int = 1,
    chunk_size: int = CHUNK_SIZE,
) -> ExperimentReport:
    """Credible intervals judged at fixed measurand: a new interval per datum."""
    rng = rng or RandomStream(0)
    u = model.u

    def chunk(count, gen):
        x = a0 + u * _normals(gen, count)
        lo, hi = credible_bounds(x, c, u)
        return count, int(np.count_nonzero((lo <= a0) & (a0 <= hi)))

    trials, hits = _run_chunks(n, rng, chunk, workers, chunk_size)
    return ExperimentReport(trials, hits, willink_success_given_a(a0, c, model=model))


def sample_joint(
    n: int, a_max: float, rng: RandomStream | None = None, *, model: MeasurementModel = DEFAULT_MODEL
) -> np.ndarray:
    """(a, x) pairs with a uniform on [0, a_max] and x ~ N(a, u^2); shape (n, 2)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not a_max > 0:
        raise ValueError(f"a_max must be positive, got {a_max}")
    gen = (rng or RandomStream(0)).generator()
    a = a_max * open_uniform(gen, n)
    x = a + model.u * _normals(gen, n)
    return np.column_stack([a, x])


def ks_statistic(sample, cdf: Callable) -> float:
    """Two-sided Kolmogorov-Smirnov distance between a sample and a continuous CDF."""
    s = np.sort(np.asarray(sample, dtype=float))
    n = s.size
    f = np.asarray(cdf(s), dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def ks_critical(n: int, level: float = 0.001) -> float:
    """Asymptotic critical KS distance at significance ``level``."""
    return math.sqrt(-0.5 * math.log(level / 2.0)) / math.sqrt(n)

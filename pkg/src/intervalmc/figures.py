"""Grid sweeps that produce the plot-ready success-rate tables.

Each named experiment maps a grid of a/u (or x0/u) values to rows of
``grid_value, rate, std_err, n_trials, analytic, seed``.  Every row draws
from ``RandomStream(seed)``, so any single row can be regenerated on its
own by calling the matching runner with that stream.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .intervals import DEFAULT_CONSTRAINT, QuantileConstraint
from .model import DEFAULT_MODEL, MeasurementModel
from .montecarlo import (
    RESAMPLING_CAP,
    ExperimentReport,
    run_fixed_measurand,
    run_fixed_measurand_rejecting_negative,
    run_fixed_result,
    run_fixed_result_neyman,
    run_willink,
    sample_joint,
)
from .neyman import AllowNegative, BoundaryPolicy
from .streams import RandomStream

COLUMNS = ("grid_value", "rate", "std_err", "n_trials", "analytic", "seed")
SCATTER_COLUMNS = ("a", "x")

# name -> (grid variable, default grid as (start, stop, step))
EXPERIMENTS = {
    "fig3": ("a", (0.2, 4.0, 0.2)),
    "fig3-reject": ("a", (0.2, 4.0, 0.2)),
    "fig4": ("x0", (-2.0, 4.0, 0.5)),
    "fig4-neyman": ("x0", (-2.0, 4.0, 0.5)),
    "fig5": ("a", (0.2, 4.0, 0.2)),
}


def grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive arithmetic grid, rounded to 12 decimals so printed values stay clean."""
    if not step > 0:
        raise ValueError(f"grid step must be positive, got {step}")
    if start > stop:
        raise ValueError(f"grid start {start} exceeds stop {stop}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 12)


@dataclass(frozen=True)
class Row:
    grid_value: float
    report: ExperimentReport
    seed: int

    def as_record(self, u: float = 1.0) -> dict:
        r = self.report
        return {
            "grid_value": self.grid_value * u,
            "rate": r.rate,
            "std_err": r.std_err,
            "n_trials": r.n_trials,
            "analytic": r.analytic,
            "seed": self.seed,
        }


def run_experiment(
    name: str,
    values: Iterable[float],
    *,
    n: int = 10**6,
    seed: int = 0,
    c: QuantileConstraint = DEFAULT_CONSTRAINT,
    policy: BoundaryPolicy = AllowNegative(),
    a_seed: float = 1.0,
    cap: int = RESAMPLING_CAP,
    model: MeasurementModel = DEFAULT_MODEL,
    workers: int = 1,
) -> list[Row]:
    """Run experiment ``name`` at every grid value."""
    if name not in EXPERIMENTS:
        raise ValueError(f"unknown experiment {name!r}; pick one of {sorted(EXPERIMENTS)}")
    common = dict(model=model, workers=workers)
    rows = []
    # Every grid point reuses one stream: common random numbers make the
    # curve smooth and keep comparisons between neighbouring points sharp.
    rng = RandomStream(seed)
    for v in values:
        v = float(v)
        if name == "fig3":
            rep = run_fixed_measurand(v, c, policy, n, rng, **common)
        elif name == "fig3-reject":
            rep = run_fixed_measurand_rejecting_negative(v, c, n, cap, rng, **common)
        elif name == "fig4":
            rep = run_fixed_result(v, c, a_seed, n, rng, cap=cap, **common)
        elif name == "fig4-neyman":
            rep = run_fixed_result_neyman(v, c, policy, a_seed, n, rng, cap=cap, **common)
        else:
            rep = run_willink(v, c, n, rng, **common)
        rows.append(Row(v, rep, seed))
    return rows


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def rows_to_csv(rows: Sequence[Row], u: float = 1.0) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        rec = row.as_record(u)
        writer.writerow([_fmt(rec[k]) for k in COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: Sequence[Row], u: float = 1.0) -> str:
    return json.dumps([row.as_record(u) for row in rows], indent=2) + "\n"


def scatter_to_csv(pairs: np.ndarray, u: float = 1.0) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SCATTER_COLUMNS)
    for a, x in pairs * u:
        writer.writerow([repr(float(a)), repr(float(x))])
    return buf.getvalue()


def scatter(n: int, a_max: float, seed: int = 0, model: MeasurementModel = DEFAULT_MODEL) -> np.ndarray:
    return sample_joint(n, a_max, RandomStream(seed, 0), model=model)


class SchemaError(ValueError):
    pass


def validate_csv(text: str) -> tuple[str, int]:
    """Check a CSV emitted by this package; returns (schema name, row count).

    Raises :class:`SchemaError` on any deviation.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = tuple(next(reader))
    except StopIteration:
        raise SchemaError("empty file") from None

    rows = list(reader)
    if header == SCATTER_COLUMNS:
        for i, rec in enumerate(rows, start=2):
            if len(rec) != 2:
                raise SchemaError(f"line {i}: expected 2 fields, got {len(rec)}")
            try:
                a, x = float(rec[0]), float(rec[1])
            except ValueError:
                raise SchemaError(f"line {i}: non-numeric field") from None
            if not (math.isfinite(a) and math.isfinite(x)):
                raise SchemaError(f"line {i}: non-finite value")
        return "scatter", len(rows)

    if header != COLUMNS:
        raise SchemaError(f"unexpected header {','.join(header)!r}")
    for i, rec in enumerate(rows, start=2):
        if len(rec) != len(COLUMNS):
            raise SchemaError(f"line {i}: expected {len(COLUMNS)} fields, got {len(rec)}")
        try:
            grid_value, rate, std_err = (float(v) for v in rec[:3])
            n_trials, seed = int(rec[3]), int(rec[5])
            analytic = float(rec[4]) if rec[4] else None
        except ValueError:
            raise SchemaError(f"line {i}: malformed field") from None
        if not math.isfinite(grid_value):
            raise SchemaError(f"line {i}: non-finite grid value")
        if not 0.0 <= rate <= 1.0:
            raise SchemaError(f"line {i}: rate {rate} outside [0, 1]")
        if n_trials < 1:
            raise SchemaError(f"line {i}: n_trials must be >= 1")
        if not math.isclose(std_err, math.sqrt(rate * (1 - rate) / n_trials), rel_tol=1e-9, abs_tol=1e-15):
            raise SchemaError(f"line {i}: std_err inconsistent with rate and n_trials")
        if analytic is not None and not 0.0 <= analytic <= 1.0:
            raise SchemaError(f"line {i}: analytic {analytic} outside [0, 1]")
        if seed < 0:
            raise SchemaError(f"line {i}: negative seed")
    return "experiment", len(rows)

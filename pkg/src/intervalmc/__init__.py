"""Neyman and Bayesian interval estimation for a positive Gaussian measurand.

The package builds confidence intervals (belt inversion with a choice of
boundary policy) and credible intervals (truncated-Gaussian posterior),
and measures how often each contains the measurand when either the
measurand or the datum is held fixed.
"""

from .bayes import TruncatedGaussianPosterior, credible_bounds, credible_interval, posterior_cdf
from .errors import (
    IntervalError,
    InvalidConstraintError,
    InvalidProbabilityError,
    NumericError,
    ResamplingCapError,
)
from .figures import EXPERIMENTS, grid, run_experiment
from .intervals import DEFAULT_CONSTRAINT, Interval, QuantileConstraint
from .model import MeasurementModel
from .montecarlo import (
    ExperimentReport,
    run_fixed_measurand,
    run_fixed_measurand_rejecting_negative,
    run_fixed_result,
    run_fixed_result_neyman,
    run_willink,
    sample_joint,
    shift_sample,
)
from .neyman import (
    AllowNegative,
    BoundaryPolicy,
    ClipToZero,
    FlipFlop,
    belt_bounds,
    confidence_bounds,
    confidence_interval,
    coverage_probability_given_x0,
)
from .oracle import (
    QuadratureSpec,
    neyman_success_given_x0,
    posterior_cdf_quadrature,
    rejection_inflated_confidence,
    willink_success_given_a,
)
from .streams import RandomStream

__version__ = "0.1.0"

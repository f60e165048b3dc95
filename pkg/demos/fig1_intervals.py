"""
Confidence and credible intervals from one datum
================================================

A positive measurand ``a`` is read through Gaussian noise of width u = 1.
For a handful of data x0 we build the Neyman interval under each
boundary policy, and the equal-tail credible interval.
"""

import numpy as np

from intervalmc import (
    AllowNegative,
    ClipToZero,
    FlipFlop,
    QuantileConstraint,
    confidence_interval,
    credible_interval,
)

c = QuantileConstraint()
print(f"quantile pair ({c.q_lo:.6f}, {c.q_hi:.6f}), coverage {c.alpha:.6f}\n")

# Far from the boundary all recipes agree on roughly x0 +- 1.
# Near it they part ways: the raw Neyman interval slides below zero, the
# clipped one collapses, and the credible interval stays inside a >= 0.
header = f"{'x0':>5} | {'allow':>17} | {'clip':>15} | {'flip-flop':>15} | {'credible':>15}"
print(header)
print("-" * len(header))
for x0 in (-2.0, -1.0, 0.0, 0.5, 1.0, 3.0, 5.0):
    cells = [confidence_interval(x0, c, p) for p in (AllowNegative(), ClipToZero(), FlipFlop())]
    cells.append(credible_interval(x0, c))
    print(f"{x0:5.1f} | " + " | ".join(f"[{iv.lo:6.3f}, {iv.hi:6.3f}]" for iv in cells))

# The clipped interval at x0 = 0 does not depend on the stated level as
# long as the upper endpoint keeps the same tail: it is [0, 1] throughout.
print()
for alpha in (0.5 - c.q_lo, 0.5, 0.68, 0.84):
    iv = confidence_interval(0.0, QuantileConstraint.from_coverage(alpha), ClipToZero())
    print(f"level {alpha:.4f}: clipped interval at x0 = 0 is [{iv.lo:.3g}, {iv.hi:.6f}]")

# Stepping x0 finely shows where flip-flopping switches recipe.
xs = np.linspace(0.9, 1.1, 5)
print()
for x0 in xs:
    iv = confidence_interval(x0, c, FlipFlop())
    print(f"flip-flop at x0 = {x0:.2f}: [{iv.lo:.3f}, {iv.hi:.3f}]")

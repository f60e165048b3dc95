"""
Credible intervals judged at a fixed measurand
==============================================

Judge the credible interval the way a confidence interval is judged:
fix ``a0``, draw data, build a fresh credible interval each time.  The
rate now depends on ``a0`` and settles to the stated level only once
``a0`` is a few u away from the boundary.
"""

from intervalmc import QuantileConstraint, grid, run_experiment

c = QuantileConstraint()
rows = run_experiment("fig5", grid(0.1, 4.0, 0.3), n=200_000, seed=5)

print(f"stated level {c.alpha:.4f}\n")
print(f"{'a0':>4} {'simulated':>10} {'+-':>7} {'exact':>8}")
for row in rows:
    r = row.report
    bar = "#" * int(round(40 * r.rate))
    print(f"{row.grid_value:4.1f} {r.rate:10.4f} {r.std_err:7.4f} {r.analytic:8.4f}  {bar}")

# The curve collapses only for a0 well below u.  From about a0 = 0.5 up to
# a few u it sits above the stated level, and it rejoins that level from
# above.

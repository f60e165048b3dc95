"""
The joint sample of measurands and data
=======================================

Draw ``a`` uniformly on [0, 4] and a datum ``x ~ N(a, 1)`` for each.
Slicing the cloud vertically (fixed ``a``) gives the sample space of a
confidence statement; slicing horizontally (fixed ``x``) gives that of a
credible statement.
"""

import numpy as np

from intervalmc import RandomStream, TruncatedGaussianPosterior, sample_joint

pairs = sample_joint(200_000, 4.0, RandomStream(2012))
a, x = pairs.T
print(f"{len(a)} pairs; x - a has mean {np.mean(x - a):+.4f} and sd {np.std(x - a):.4f}")

# Fixed measurand: the data scatter symmetrically about a.
band = np.abs(a - 2.0) < 0.02
print(f"\na close to 2: {band.sum()} points, x spans [{x[band].min():.2f}, {x[band].max():.2f}]")

# Fixed datum: the measurands are a Gaussian chopped at 0 (and at the
# sampling cutoff 4, which is irrelevant for x near 0).
x0 = 0.3
band = np.abs(x - x0) < 0.02
post = TruncatedGaussianPosterior(x0)
print(f"x close to {x0}: {band.sum()} points")
print(f"{'phi':>5} {'empirical':>10} {'posterior':>10}")
for phi in (0.25, 0.5, 1.0, 1.5, 2.0):
    print(f"{phi:5.2f} {np.mean(a[band] <= phi):10.4f} {post.cdf(phi):10.4f}")

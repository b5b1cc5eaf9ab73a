"""Robust line fitting on contaminated sweep data.

Least squares chases outliers; the consensus fit samples two-point
candidate lines and keeps the one most points agree with, then refits on
the agreeing set only.
"""

import numpy as np

from engagesim import ransac_fit

rng = np.random.default_rng(3)

# Ground truth y = 2x + 1 with tight noise, then 30% of the points replaced
# by junk anywhere in [0, 4].
x = rng.uniform(0.0, 1.0, size=200)
y = 2.0 * x + 1.0 + rng.normal(0.0, 0.05, size=200)
junk = rng.choice(200, size=60, replace=False)
y[junk] = rng.uniform(0.0, 4.0, size=60)

slope_ols, intercept_ols = np.polyfit(x, y, 1)
print(f"least squares:  y = {slope_ols:.3f} x + {intercept_ols:.3f}   (pulled by junk)")

fit = ransac_fit(np.column_stack([x, y]), residual_threshold=0.15, seed=3)
print(f"consensus fit:  y = {fit.slope:.3f} x + {fit.intercept:.3f}")
print(f"kept {fit.inlier_count} of {len(x)} points "
      f"({fit.iterations} candidate lines tried)")

# Every point the fit kept really does sit within the threshold band.
residuals = np.abs(y - (fit.slope * x + fit.intercept))
assert residuals[fit.inliers].max() <= 0.15
print(f"max kept residual {residuals[fit.inliers].max():.4f} <= 0.15")

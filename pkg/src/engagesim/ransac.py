"""Robust line fitting: 2-point RANSAC hypotheses with a least-squares refit.

The best hypothesis is the one with the largest consensus (ties go to the
lower total inlier residual). Its consensus set gets an ordinary
least-squares refit. The reported inlier mask is recomputed under the
reported line, so slope/intercept and mask are mutually consistent: every
reported inlier sits within the threshold of the reported line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RansacError


@dataclass(frozen=True)
class RansacFit:
    slope: float
    intercept: float
    inliers: np.ndarray  # boolean mask over the input points
    iterations: int

    @property
    def inlier_count(self) -> int:
        return int(np.count_nonzero(self.inliers))


def _ols(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    # least squares for y = a x + b
    a, b = np.polyfit(x, y, 1)
    return float(a), float(b)


def ransac_fit(points, *, iterations: int = 1000, residual_threshold: float | None = None,
               min_inliers: int | None = None, seed: int = 0) -> RansacFit:
    """Fit y = slope * x + intercept robustly.

    `points` is an (N, 2) array-like of (x, y). When residual_threshold is
    None it defaults to 1.5x the median absolute residual of a plain
    least-squares fit. min_inliers defaults to half the points (rounded up).
    Raises RansacError when no hypothesis reaches min_inliers and ValueError
    when every x coincides (vertical data has no slope).
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise ValueError("points must be an (N, 2) array with N >= 2")
    if not np.isfinite(pts).all():
        raise ValueError("points must be finite")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    x, y = pts[:, 0], pts[:, 1]
    n = pts.shape[0]
    if np.all(x == x[0]):
        raise ValueError("all points share one x value; slope is undefined")
    if residual_threshold is None:
        a0, b0 = _ols(x, y)
        residual_threshold = 1.5 * float(np.median(np.abs(y - (a0 * x + b0))))
    elif residual_threshold < 0:
        raise ValueError("residual_threshold cannot be negative")
    if min_inliers is None:
        min_inliers = max(2, math.ceil(0.5 * n))  # a line needs two points
    if not 2 <= min_inliers <= n:
        raise ValueError(f"min_inliers must lie in [2, {n}], got {min_inliers}")

    rng = np.random.default_rng(seed)
    best_count = -1
    best_total = np.inf
    best_line: tuple[float, float] | None = None
    best_mask: np.ndarray | None = None
    for _ in range(iterations):
        i, j = rng.choice(n, size=2, replace=False)
        if x[i] == x[j]:
            continue  # degenerate pair, contributes no hypothesis
        slope = (y[j] - y[i]) / (x[j] - x[i])
        intercept = y[i] - slope * x[i]
        residuals = np.abs(y - (slope * x + intercept))
        mask = residuals <= residual_threshold
        count = int(np.count_nonzero(mask))
        if count == 0:
            continue
        total = float(residuals[mask].sum())
        if count > best_count or (count == best_count and total < best_total):
            best_count, best_total = count, total
            best_line, best_mask = (slope, intercept), mask
    if best_mask is None or best_count < min_inliers:
        raise RansacError(f"no hypothesis reached min_inliers={min_inliers} "
                          f"(best consensus: {max(best_count, 0)} of {n})")
    slope, intercept = _ols(x[best_mask], y[best_mask])
    final_mask = np.abs(y - (slope * x + intercept)) <= residual_threshold
    # The refit normally widens the consensus. With a zero threshold (exactly
    # collinear input) its float jitter can shrink it instead; the hypothesis
    # line then already is the least-squares line on its consensus, so keep it.
    if int(np.count_nonzero(final_mask)) < best_count:
        slope, intercept = best_line
        final_mask = best_mask
    final_mask = np.array(final_mask, dtype=bool)
    final_mask.flags.writeable = False
    return RansacFit(slope=float(slope), intercept=float(intercept),
                     inliers=final_mask, iterations=iterations)

"""Degeneracy functionals d-tau / d-rho and plug-in asymptotic variances.

Definitions (empirical plug-in forms, F-hat right-continuous with "<="):

    d_tau(x, y) = F(x, y) - (F_X(x) + F_Y(y)) / 2
    d_rho(x, y) = F_X(x) F_Y(y) - f(x) - g(y)
        with f(x) = E[F_Y(Y) 1{X <= x}],  g(y) = E[F_X(X) 1{Y <= y}]

The variance functionals are the first-order projection variances of the two
U-statistics, expressed through the grade functions:

    sigma2_tau = 64  * Var(d_tau(X, Y))
    sigma2_rho = 144 * Var(d_rho(X, Y))

Sketch of the constants: the tau kernel h((x1,y1),(x2,y2)) =
sign((x1-x2)(y1-y2)) has first-order projection h1(x,y) = E[h | (x,y)] =
4 d_tau(x,y) + 1 for continuous marginals, so n Var(tau-hat) -> 4 Var(h1) =
64 Var(d_tau).  The rho projection carries a factor 12, giving 144 Var(d_rho).
Both constants are pinned by the independence checkpoints: for independent
uniforms, Var(UV - (U+V)/2) = 1/144 so sigma2_tau = 64/144 = 4/9, and
Var(UV - U/2 - V/2) = 1/144 so sigma2_rho = 1 exactly.

Variances are 1/n-normalized (ddof=0); the choice is immaterial at the
package's tolerances but pinned for reproducibility.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MalformedRectangle, SampleTooSmall
from .sample import PairedSample, joint_ecdf_at_points, kendall_tau, spearman_rho

__all__ = [
    "GradeValues",
    "DegeneracyReport",
    "grade_values",
    "d_tau_values",
    "d_rho_values",
    "sigma2_tau",
    "sigma2_rho",
    "rectangle_mass_identity",
    "degeneracy_report",
    "d_tau_grid",
    "DEFAULT_THRESHOLD",
]

DEFAULT_THRESHOLD = 0.02


@dataclass(frozen=True)
class GradeValues:
    """d-tau and d-rho evaluated at every sample point."""

    d_tau: np.ndarray
    d_rho: np.ndarray
    n: int


@dataclass(frozen=True)
class DegeneracyReport:
    tau_hat: float
    rho_hat: float
    sigma2_tau: float
    sigma2_rho: float
    d_tau_range: tuple[float, float]
    d_rho_range: tuple[float, float]
    classification: tuple[str, str]
    threshold_used: float

    @property
    def degenerate_tau(self) -> bool:
        return self.classification[0] == "degenerate_tau"

    @property
    def degenerate_rho(self) -> bool:
        return self.classification[1] == "degenerate_rho"


def _marginal_grades(sample: PairedSample) -> tuple[np.ndarray, np.ndarray]:
    """(F_X-hat(X_i), F_Y-hat(Y_i)) for all i; rank-based, O(n log n)."""
    n = sample.n
    sx = np.sort(sample.xs)
    sy = np.sort(sample.ys)
    u = np.searchsorted(sx, sample.xs, side="right") / n
    v = np.searchsorted(sy, sample.ys, side="right") / n
    return u, v


def grade_values(sample: PairedSample) -> GradeValues:
    """Evaluate both degeneracy functionals at every sample point."""
    n = sample.n
    if n < 2:
        raise SampleTooSmall("grade values need n >= 2")
    u, v = _marginal_grades(sample)
    joint = joint_ecdf_at_points(sample)
    d_tau = joint - 0.5 * (u + v)

    # f-hat(X_i) = (1/n) sum_j v_j 1{x_j <= x_i} via prefix sums in x order,
    # and symmetrically for g-hat.
    ox = np.argsort(sample.xs, kind="stable")
    cum_v = np.cumsum(v[ox])
    mx = np.searchsorted(sample.xs[ox], sample.xs, side="right")
    f = cum_v[mx - 1] / n

    oy = np.argsort(sample.ys, kind="stable")
    cum_u = np.cumsum(u[oy])
    my = np.searchsorted(sample.ys[oy], sample.ys, side="right")
    g = cum_u[my - 1] / n

    d_rho = u * v - f - g
    return GradeValues(d_tau=d_tau, d_rho=d_rho, n=n)


def d_tau_values(sample: PairedSample) -> np.ndarray:
    """F(X_i, Y_i) - (F_X(X_i) + F_Y(Y_i))/2 for every i."""
    return grade_values(sample).d_tau


def d_rho_values(sample: PairedSample) -> np.ndarray:
    """F_X(X_i) F_Y(Y_i) - f(X_i) - g(Y_i) for every i."""
    return grade_values(sample).d_rho


def sigma2_tau(sample: PairedSample) -> float:
    """64 * Var(d_tau values), the plug-in tau asymptotic variance."""
    return 64.0 * float(np.var(d_tau_values(sample)))


def sigma2_rho(sample: PairedSample) -> float:
    """144 * Var(d_rho values), the plug-in rho asymptotic variance."""
    return 144.0 * float(np.var(d_rho_values(sample)))


def rectangle_mass_identity(
    sample: PairedSample, rect: tuple[float, float, float, float]
) -> tuple[float, float]:
    """Empirical mass of (x1,x2] x (y1,y2] vs its inclusion-exclusion sum.

    Both sides are computed as exact integer counts divided by n once, so the
    returned pair is exactly equal (the marginal terms of d_tau cancel in the
    alternating corner sum, leaving the plain F identity).
    """
    x1, x2, y1, y2 = rect
    if not (x1 < x2 and y1 < y2):
        raise MalformedRectangle("need x1 < x2 and y1 < y2")
    xs, ys = sample.xs, sample.ys
    n = sample.n
    in_x = (xs > x1) & (xs <= x2)
    in_y = (ys > y1) & (ys <= y2)
    mass_count = int(np.count_nonzero(in_x & in_y))

    def corner(cx: float, cy: float) -> int:
        return int(np.count_nonzero((xs <= cx) & (ys <= cy)))

    ie_count = corner(x2, y2) - corner(x1, y2) - corner(x2, y1) + corner(x1, y1)
    return mass_count / n, ie_count / n


def d_tau_grid(
    sample: PairedSample, grid_size: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """d_tau-hat over a grid_size x grid_size grid spanning the data bbox.

    Returns (gx, gy, d) with d[i, j] = d_tau-hat(gx[i], gy[j]).  Intended for
    heatmap dumps; cost is O(grid_size * n log n).
    """
    if grid_size < 2:
        raise ValueError("grid_size must be >= 2")
    n = sample.n
    gx = np.linspace(float(sample.xs.min()), float(sample.xs.max()), grid_size)
    gy = np.linspace(float(sample.ys.min()), float(sample.ys.max()), grid_size)
    sx = np.sort(sample.xs)
    sy = np.sort(sample.ys)
    fx = np.searchsorted(sx, gx, side="right") / n
    fy = np.searchsorted(sy, gy, side="right") / n
    ys_by_x = sample.ys[np.argsort(sample.xs, kind="stable")]
    d = np.empty((grid_size, grid_size))
    for i, q in enumerate(gx):
        m = int(np.searchsorted(sx, q, side="right"))
        prefix = np.sort(ys_by_x[:m])
        joint = np.searchsorted(prefix, gy, side="right") / n
        d[i, :] = joint - 0.5 * (fx[i] + fy)
    return gx, gy, d


def degeneracy_report(
    sample: PairedSample, threshold: float = DEFAULT_THRESHOLD
) -> DegeneracyReport:
    """Aggregate estimates and classify each statistic by sigma2 <= threshold."""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    gv = grade_values(sample)
    s2t = 64.0 * float(np.var(gv.d_tau))
    s2r = 144.0 * float(np.var(gv.d_rho))
    tau = kendall_tau(sample)
    rho = spearman_rho(sample)
    cls_tau = "degenerate_tau" if s2t <= threshold else "nondegenerate_tau"
    cls_rho = "degenerate_rho" if s2r <= threshold else "nondegenerate_rho"
    return DegeneracyReport(
        tau_hat=tau,
        rho_hat=rho,
        sigma2_tau=s2t,
        sigma2_rho=s2r,
        d_tau_range=(float(gv.d_tau.min()), float(gv.d_tau.max())),
        d_rho_range=(float(gv.d_rho.min()), float(gv.d_rho.max())),
        classification=(cls_tau, cls_rho),
        threshold_used=threshold,
    )

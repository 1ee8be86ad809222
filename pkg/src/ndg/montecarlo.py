"""Replicated sampling: scaled variances n*Var(tau-hat), n*Var(rho-hat).

Replicate r draws with a seed derived from (base_seed, r) through a splitmix
style 64-bit mixer; the map r -> base_seed + (r+1)*GOLDEN (mod 2^64) is
injective and the finalizer is a bijection, so derived seeds never collide.
Replicates are independent units of work; `NDG_THREADS` (default 1) caps a
thread pool, and the report is always folded in replicate-index order, so the
output is bit-identical regardless of the worker count.

Across replicates the variance of the tau / rho sequences uses ddof=1 (these
are a small number of i.i.d. replicate statistics); the per-sample plug-in
sigma2 values keep the 1/n normalization pinned in :mod:`ndg.degeneracy`.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .degeneracy import DegeneracyReport, degeneracy_report
from .distributions import DistributionSpec, draw
from .errors import BadParams

__all__ = [
    "McConfig",
    "McReport",
    "CurvePoint",
    "CurveReport",
    "replicate_seed",
    "replicate_statistics",
    "degeneracy_curve",
]

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def replicate_seed(base_seed: int, r: int) -> int:
    """Derived seed for replicate r; distinct for distinct r."""
    return _mix64((base_seed + (r + 1) * _GOLDEN) & _MASK)


@dataclass(frozen=True)
class McConfig:
    spec: DistributionSpec
    n: int
    reps: int
    base_seed: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise BadParams("McConfig.n must be >= 2")
        if self.reps < 2:
            raise BadParams("McConfig.reps must be >= 2")


@dataclass(frozen=True)
class McReport:
    taus: np.ndarray
    rhos: np.ndarray
    n: int
    scaled_var_tau: float
    scaled_var_rho: float
    mean_sigma2_tau: float
    mean_sigma2_rho: float

    @property
    def reps(self) -> int:
        return int(self.taus.shape[0])


def _worker_count() -> int:
    raw = os.environ.get("NDG_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def replicate_statistics(config: McConfig) -> McReport:
    """Draw reps independent samples and aggregate their statistics."""

    def one(r: int) -> DegeneracyReport:
        sample = draw(config.spec, config.n, replicate_seed(config.base_seed, r))
        return degeneracy_report(sample)

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(one, range(config.reps)))
    else:
        reports = [one(r) for r in range(config.reps)]

    taus = np.array([rep.tau_hat for rep in reports])
    rhos = np.array([rep.rho_hat for rep in reports])
    s2t = np.array([rep.sigma2_tau for rep in reports])
    s2r = np.array([rep.sigma2_rho for rep in reports])
    taus.setflags(write=False)
    rhos.setflags(write=False)
    return McReport(
        taus=taus,
        rhos=rhos,
        n=config.n,
        scaled_var_tau=config.n * float(np.var(taus, ddof=1)),
        scaled_var_rho=config.n * float(np.var(rhos, ddof=1)),
        mean_sigma2_tau=float(s2t.mean()),
        mean_sigma2_rho=float(s2r.mean()),
    )


@dataclass(frozen=True)
class CurvePoint:
    n: int
    scaled_var_tau: float
    scaled_var_rho: float


@dataclass(frozen=True)
class CurveReport:
    points: tuple[CurvePoint, ...]
    slope_tau: float
    slope_rho: float
    reports: tuple[McReport, ...]


def degeneracy_curve(
    spec: DistributionSpec,
    n_list: tuple[int, ...] | list[int],
    reps: int,
    base_seed: int,
) -> CurveReport:
    """Scaled-variance trajectory over n_list plus log-log slopes.

    Each n runs its own replicate batch under a stage-specific base seed
    (mixed from base_seed and the stage index) so stages share no streams.
    A slope near -1 signals the 1/n collapse of a degenerate statistic; a
    slope near 0 signals stabilization at a positive asymptotic variance.
    """
    ns = [int(n) for n in n_list]
    if len(ns) < 3:
        raise BadParams("degeneracy_curve needs at least 3 sample sizes")
    if any(b <= a for a, b in zip(ns[:-1], ns[1:])):
        raise BadParams("n_list must be strictly increasing")
    reports = []
    for i, n in enumerate(ns):
        stage_seed = _mix64(base_seed ^ ((i + 1) * 0xD1B54A32D192ED03))
        reports.append(replicate_statistics(McConfig(spec, n, reps, stage_seed)))
    points = tuple(
        CurvePoint(n=rep.n, scaled_var_tau=rep.scaled_var_tau, scaled_var_rho=rep.scaled_var_rho)
        for rep in reports
    )
    log_n = np.log(np.array(ns, dtype=np.float64))
    tiny = 1e-300  # keeps log finite if a variance underflows to 0
    slope_tau = float(np.polyfit(log_n, np.log([max(p.scaled_var_tau, tiny) for p in points]), 1)[0])
    slope_rho = float(np.polyfit(log_n, np.log([max(p.scaled_var_rho, tiny) for p in points]), 1)[0])
    return CurveReport(points=points, slope_tau=slope_tau, slope_rho=slope_rho, reports=tuple(reports))

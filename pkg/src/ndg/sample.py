"""Paired samples, ranks, empirical c.d.f.s, and the tau / rho estimators.

Conventions
-----------
* Empirical c.d.f.s are right-continuous with "<=" in both coordinates:
  F-hat(q) = #{i : v_i <= q} / n and F-hat(x, y) = #{i : X_i <= x, Y_i <= y} / n.
* Kendall's statistic uses tau-a semantics:
  tau-hat = (C - D) / (n(n-1)/2), where C / D count strictly concordant /
  discordant pairs and tied pairs count as neither.
* Spearman's statistic is the Pearson correlation of the (mid)rank vectors,
  which reduces to 1 - 6*sum(d_i^2)/(n(n^2-1)) when there are no ties.

All pair counting is exact integer arithmetic (see :mod:`ndg.counting`);
statistics accumulate in double precision.  Every operation is a pure
function of immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .counting import le_before_counts, tied_pair_count
from .errors import (
    DegenerateRanks,
    EmptyInput,
    NonFiniteValue,
    SampleTooSmall,
    TiesInX,
    TiesInY,
)

__all__ = [
    "TiePolicy",
    "PairedSample",
    "RankVector",
    "EmpiricalCdf",
    "validate_sample",
    "rank_transform",
    "ecdf_eval",
    "joint_ecdf_eval",
    "joint_ecdf_at_points",
    "kendall_tau",
    "spearman_rho",
]

TiePolicy = Literal["strict", "midrank"]


def _has_ties(v: np.ndarray) -> bool:
    if v.size < 2:
        return False
    s = np.sort(v)
    return bool(np.any(s[1:] == s[:-1]))


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PairedSample:
    """n paired observations (X_i, Y_i) with tie metadata.

    ``tie_flags`` is (ties in xs, ties in ys).  Arrays are read-only.
    """

    xs: np.ndarray
    ys: np.ndarray
    tie_flags: tuple[bool, bool]

    def __post_init__(self) -> None:
        if self.xs.shape != self.ys.shape or self.xs.ndim != 1:
            raise ValueError("xs and ys must be 1-d arrays of equal length")

    @property
    def n(self) -> int:
        return int(self.xs.shape[0])

    @property
    def ties_in_x(self) -> bool:
        return self.tie_flags[0]

    @property
    def ties_in_y(self) -> bool:
        return self.tie_flags[1]


@dataclass(frozen=True)
class RankVector:
    """Rank vectors of xs and ys; rank 1 is the smallest value."""

    rx: np.ndarray
    ry: np.ndarray
    tie_policy: TiePolicy


@dataclass(frozen=True)
class EmpiricalCdf:
    """One marginal empirical c.d.f., stored as its sorted observations."""

    sorted_values: np.ndarray
    n: int

    @classmethod
    def from_values(cls, values: np.ndarray) -> "EmpiricalCdf":
        v = np.sort(np.asarray(values, dtype=np.float64))
        v.setflags(write=False)
        return cls(sorted_values=v, n=int(v.shape[0]))


def make_sample(xs: np.ndarray, ys: np.ndarray) -> PairedSample:
    """Build a PairedSample from two finite float arrays, detecting ties."""
    xs = _frozen(xs)
    ys = _frozen(ys)
    return PairedSample(xs=xs, ys=ys, tie_flags=(_has_ties(xs), _has_ties(ys)))


def validate_sample(
    raw_pairs: Sequence[tuple[float, float]] | np.ndarray,
    tie_policy: TiePolicy = "midrank",
) -> PairedSample:
    """Validate raw (x, y) pairs and return a PairedSample.

    Checks, in order: nonempty input, finiteness, n >= 2, and (under the
    strict policy) absence of exact ties in either coordinate.
    """
    arr = np.asarray(raw_pairs, dtype=np.float64)
    if arr.size == 0:
        raise EmptyInput("no observations supplied")
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise EmptyInput("expected a sequence of (x, y) pairs")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteValue("sample contains NaN or infinite values")
    n = arr.shape[0]
    if n < 2:
        raise SampleTooSmall(f"need at least 2 pairs, got {n}")
    sample = make_sample(arr[:, 0], arr[:, 1])
    if tie_policy == "strict":
        if sample.ties_in_x:
            raise TiesInX("exact duplicate x values under strict tie policy")
        if sample.ties_in_y:
            raise TiesInY("exact duplicate y values under strict tie policy")
    return sample


def _midranks(v: np.ndarray) -> np.ndarray:
    """Average ranks (1-based) within tie groups; sums to n(n+1)/2."""
    n = v.shape[0]
    order = np.argsort(v, kind="stable")
    sv = v[order]
    starts = np.flatnonzero(np.concatenate(([True], sv[1:] != sv[:-1])))
    lens = np.diff(np.append(starts, n))
    avg = starts + (lens + 1) / 2.0  # mean of ranks starts+1 .. starts+lens
    out = np.empty(n, dtype=np.float64)
    out[order] = np.repeat(avg, lens)
    return out


def _strict_ranks(v: np.ndarray) -> np.ndarray:
    n = v.shape[0]
    out = np.empty(n, dtype=np.float64)
    out[np.argsort(v, kind="stable")] = np.arange(1, n + 1, dtype=np.float64)
    return out


def rank_transform(sample: PairedSample, tie_policy: TiePolicy = "midrank") -> RankVector:
    """Rank both coordinates; strict policy rejects ties, midrank averages them."""
    if tie_policy == "strict":
        if sample.ties_in_x:
            raise TiesInX("cannot assign strict ranks: ties in xs")
        if sample.ties_in_y:
            raise TiesInY("cannot assign strict ranks: ties in ys")
        rx = _strict_ranks(sample.xs)
        ry = _strict_ranks(sample.ys)
    else:
        rx = _midranks(sample.xs)
        ry = _midranks(sample.ys)
    rx.setflags(write=False)
    ry.setflags(write=False)
    return RankVector(rx=rx, ry=ry, tie_policy=tie_policy)


def ecdf_eval(cdf: EmpiricalCdf, q: float) -> float:
    """F-hat(q) = #{i : v_i <= q} / n, by binary search."""
    return float(np.searchsorted(cdf.sorted_values, q, side="right")) / cdf.n


def joint_ecdf_eval(sample: PairedSample, x: float, y: float) -> float:
    """F-hat(x, y) = #{i : X_i <= x and Y_i <= y} / n by direct count."""
    hits = np.count_nonzero((sample.xs <= x) & (sample.ys <= y))
    return float(hits) / sample.n


def joint_ecdf_at_points(sample: PairedSample) -> np.ndarray:
    """F-hat(X_i, Y_i) for every i, in O(n log n) total.

    Lex-sort the points by (x, y).  For the point at sorted position k,
    every earlier position has x <= x_k, so the earlier points inside the
    quadrant are exactly those with y <= y_k; later points can only land in
    the quadrant if they duplicate (x_k, y_k) exactly.  Hence

        count_k = le_before(y-sequence)[k] + duplicates_after_k + 1.
    """
    n = sample.n
    order = np.lexsort((sample.ys, sample.xs))
    sy = sample.ys[order]
    le_before = le_before_counts(sy)

    sx = sample.xs[order]
    new_run = (sx[1:] != sx[:-1]) | (sy[1:] != sy[:-1])
    run_starts = np.flatnonzero(np.concatenate(([True], new_run)))
    run_id = np.cumsum(np.concatenate(([False], new_run)))
    run_len = np.diff(np.append(run_starts, n))
    pos_in_run = np.arange(n) - run_starts[run_id]
    dup_after = run_len[run_id] - 1 - pos_in_run

    out = np.empty(n, dtype=np.float64)
    out[order] = (le_before + dup_after + 1) / n
    return out


def kendall_tau(sample: PairedSample) -> float:
    """tau-a in O(n log n): sort by x, count y-inversions for D.

    After the lex sort, within-block (equal x) y values are ascending, so
    strict inversions of the y sequence are exactly the discordant pairs.
    """
    n = sample.n
    if n < 2:
        raise SampleTooSmall("kendall_tau needs n >= 2")
    order = np.lexsort((sample.ys, sample.xs))
    w = sample.ys[order]
    total = n * (n - 1) // 2
    discordant = total - int(le_before_counts(w).sum())

    tx = tied_pair_count(sample.xs)
    ty = tied_pair_count(sample.ys)
    if tx and ty:
        # pairs tied in both coordinates, via a combined dense key
        _, kx = np.unique(sample.xs, return_inverse=True)
        _, ky = np.unique(sample.ys, return_inverse=True)
        both = kx.astype(np.int64) * (int(ky.max()) + 1) + ky
        txy = tied_pair_count(both)
    else:
        txy = 0
    concordant = total - discordant - tx - ty + txy
    return (concordant - discordant) / total


def spearman_rho(sample: PairedSample) -> float:
    """Pearson correlation of the midrank vectors."""
    if sample.n < 2:
        raise SampleTooSmall("spearman_rho needs n >= 2")
    ranks = rank_transform(sample, "midrank")
    dx = ranks.rx - ranks.rx.mean()
    dy = ranks.ry - ranks.ry.mean()
    vx = float(dx @ dx)
    vy = float(dy @ dy)
    if vx == 0.0 or vy == 0.0:
        raise DegenerateRanks("a rank vector is constant; rho is undefined")
    return float(dx @ dy) / math.sqrt(vx * vy)

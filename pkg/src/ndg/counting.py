"""Vectorized order-statistics counting.

The single primitive exported here is :func:`le_before_counts`: for every
position ``i`` of a sequence, the number of earlier positions ``j < i`` whose
value is ``<= values[i]``.  Both the O(n log n) Kendall statistic (inversion
counting) and the joint empirical c.d.f. sweep reduce to it:

* strict inversions of ``w``  =  n(n-1)/2 - sum(le_before_counts(w))
* F-hat(X_i, Y_i) sweeps lex-sorted points and needs, per point, the count of
  earlier points with a y value <= its own.

The implementation is a bottom-up mergesort over numpy arrays.  At each level
the array is viewed as rows of two sorted halves; a single batched
``searchsorted`` (with per-row key offsets so one flat call serves all rows)
counts, for every element of a right half, the left-half elements <= it.
Summed over the log2(n) levels, every pair (j, i) with j < i is counted at
exactly one level: the one where j's block and i's block first become
siblings.  All counts are exact int64 arithmetic; no floating point is
involved once the values are reduced to dense ranks.
"""

from __future__ import annotations

import numpy as np

__all__ = ["le_before_counts", "inversions", "tied_pair_count"]


def le_before_counts(values: np.ndarray) -> np.ndarray:
    """For each i return #{j < i : values[j] <= values[i]}, as int64.

    Runs in O(n log^2 n) with numpy-vectorized levels; exact for any
    totally ordered dtype (floats are first reduced to dense integer ranks,
    so ties are handled exactly).
    """
    w = np.asarray(values)
    n = int(w.shape[0])
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if n == 1:
        return np.zeros(1, dtype=np.int64)

    # Dense ranks: ties map to equal integer keys.
    _, keys = np.unique(w, return_inverse=True)
    keys = keys.astype(np.int64, copy=False)
    u = int(keys.max()) + 1

    size = 1 << (n - 1).bit_length()
    sentinel = u  # strictly larger than every real key
    cur = np.full(size, sentinel, dtype=np.int64)
    cur[:n] = keys
    idx = np.full(size, n, dtype=np.int64)  # n = trash slot for padding
    idx[:n] = np.arange(n, dtype=np.int64)

    counts = np.zeros(n + 1, dtype=np.int64)
    offset = np.int64(u + 1)  # > any key, keeps per-row key ranges disjoint

    width = 1
    while width < size:
        rows = cur.reshape(-1, 2 * width)
        irow = idx.reshape(-1, 2 * width)
        nrows = rows.shape[0]
        row_off = np.arange(nrows, dtype=np.int64)[:, None] * offset

        left = rows[:, :width] + row_off
        right = rows[:, width:] + row_off
        # Flat left is globally nondecreasing (sorted rows + disjoint ranges),
        # so one searchsorted serves every row at once.
        pos = np.searchsorted(left.ravel(), right.ravel(), side="right")
        pos -= np.repeat(np.arange(nrows, dtype=np.int64) * width, width)
        # Right-half original indices are distinct within a level, except the
        # repeated trash slot; plain fancy add is therefore exact.
        counts[irow[:, width:].ravel()] += pos

        order = np.argsort(rows, axis=1, kind="stable")
        cur = np.take_along_axis(rows, order, axis=1).ravel()
        idx = np.take_along_axis(irow, order, axis=1).ravel()
        width *= 2

    return counts[:n]


def inversions(values: np.ndarray) -> int:
    """Exact count of strict inversions #{j < i : values[j] > values[i]}."""
    w = np.asarray(values)
    n = int(w.shape[0])
    total = n * (n - 1) // 2
    return total - int(le_before_counts(w).sum())


def tied_pair_count(values: np.ndarray) -> int:
    """Number of unordered pairs {i, j} with values[i] == values[j]."""
    _, cnt = np.unique(np.asarray(values), return_counts=True)
    cnt = cnt.astype(np.int64, copy=False)
    return int((cnt * (cnt - 1) // 2).sum())

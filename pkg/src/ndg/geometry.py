"""Rectangle-witness search and occupancy checks on snapped point sets.

The 5-point condition asks for four vertices of an axis-parallel rectangle
plus one strictly interior point, all members of the analyzed set.  Exact
float data from continuous laws almost never contains exact corners, so every
check here runs on a lattice snapshot produced by :func:`snap`; the cell size
is part of the result's meaning and is reported alongside it.

"Interior" means strictly between the corner coordinates in both axes;
points on the rectangle boundary do not count.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import BadParams, TooManyPoints

__all__ = [
    "SnappedPointSet",
    "RectangleWitness",
    "snap",
    "find_rectangle_witness",
    "brute_force_witness",
    "occupied_fraction",
]


@dataclass(frozen=True)
class SnappedPointSet:
    """Integer lattice cells occupied by at least one input point."""

    points: frozenset[tuple[int, int]]
    cell: float
    origin: tuple[float, float]


@dataclass(frozen=True)
class RectangleWitness:
    """Corner coordinates and one strictly interior member point."""

    x1: int
    x2: int
    y1: int
    y2: int
    interior_point: tuple[int, int]


def snap(
    points: Iterable[tuple[float, float]] | np.ndarray,
    cell: float,
    origin: tuple[float, float] = (0.0, 0.0),
) -> SnappedPointSet:
    """Map each point to round((p - origin) / cell); duplicates collapse."""
    if cell <= 0:
        raise BadParams("snap cell must be positive")
    arr = np.asarray(list(points) if not isinstance(points, np.ndarray) else points, dtype=np.float64)
    if arr.size == 0:
        return SnappedPointSet(points=frozenset(), cell=cell, origin=origin)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise BadParams("expected an (m, 2) collection of planar points")
    lattice = np.rint((arr - np.asarray(origin)) / cell).astype(np.int64)
    cells = frozenset(map(tuple, np.unique(lattice, axis=0).tolist()))
    return SnappedPointSet(points=cells, cell=cell, origin=origin)


def _columns(points: frozenset[tuple[int, int]]) -> tuple[list[int], dict[int, list[int]]]:
    cols: dict[int, list[int]] = {}
    for x, y in points:
        cols.setdefault(x, []).append(y)
    xs_sorted = sorted(cols)
    for x in xs_sorted:
        cols[x].sort()
    return xs_sorted, cols


def _interior_search(
    xs_sorted: list[int],
    cols: dict[int, list[int]],
    x1: int,
    x2: int,
    y1: int,
    y2: int,
) -> tuple[int, int] | None:
    """First member point strictly inside (x1,x2) x (y1,y2), scanning x ascending."""
    lo = bisect_right(xs_sorted, x1)
    hi = bisect_left(xs_sorted, x2)
    for xm in xs_sorted[lo:hi]:
        ys = cols[xm]
        j = bisect_right(ys, y1)
        if j < len(ys) and ys[j] < y2:
            return (xm, ys[j])
    return None


def find_rectangle_witness(snapped: SnappedPointSet) -> RectangleWitness | None:
    """Find a 5-point rectangle witness, or None if none exists.

    Scans columns in ascending x; for each column every y-pair is looked up
    in an index keyed by (y1, y2) that remembers the first column containing
    the pair.  A hit means four rectangle corners; the rectangle spanning the
    first column is checked for an interior member point.  Keeping only the
    earliest column per pair preserves completeness: any witness rectangle's
    interior is contained in the interior of the wider rectangle that uses
    the pair's first column.
    """
    xs_sorted, cols = _columns(snapped.points)
    first_col: dict[tuple[int, int], int] = {}
    for x2 in xs_sorted:
        ys = cols[x2]
        m = len(ys)
        for i in range(m - 1):
            yi = ys[i]
            for j in range(i + 1, m):
                key = (yi, ys[j])
                x1 = first_col.get(key)
                if x1 is None:
                    first_col[key] = x2
                    continue
                inner = _interior_search(xs_sorted, cols, x1, x2, yi, ys[j])
                if inner is not None:
                    return RectangleWitness(
                        x1=x1, x2=x2, y1=yi, y2=ys[j], interior_point=inner
                    )
    return None


def brute_force_witness(snapped: SnappedPointSet) -> RectangleWitness | None:
    """Exhaustive oracle over corner quadruples; guarded to <= 200 points."""
    pts = sorted(snapped.points)
    if len(pts) > 200:
        raise TooManyPoints(f"brute force accepts at most 200 points, got {len(pts)}")
    pset = set(pts)
    for px, py in pts:
        for qx, qy in pts:
            if qx <= px or qy <= py:
                continue
            if (px, qy) not in pset or (qx, py) not in pset:
                continue
            for rx, ry in pts:
                if px < rx < qx and py < ry < qy:
                    return RectangleWitness(
                        x1=px, x2=qx, y1=py, y2=qy, interior_point=(rx, ry)
                    )
    return None


def occupied_fraction(
    points: Iterable[tuple[float, float]] | np.ndarray,
    cell: float,
    bbox: tuple[float, float, float, float],
) -> float:
    """Fraction of bbox grid cells (side ``cell``) containing >= 1 point.

    ``bbox`` is (xmin, xmax, ymin, ymax); points outside it are ignored, and
    points on the top/right edges belong to the last row/column of cells.
    """
    if cell <= 0:
        raise BadParams("cell must be positive")
    xmin, xmax, ymin, ymax = bbox
    if not (xmin < xmax and ymin < ymax):
        raise BadParams("bbox must have positive area")
    ncx = max(1, int(np.ceil((xmax - xmin) / cell - 1e-12)))
    ncy = max(1, int(np.ceil((ymax - ymin) / cell - 1e-12)))
    arr = np.asarray(list(points) if not isinstance(points, np.ndarray) else points, dtype=np.float64)
    if arr.size == 0:
        return 0.0
    inside = (
        (arr[:, 0] >= xmin)
        & (arr[:, 0] <= xmax)
        & (arr[:, 1] >= ymin)
        & (arr[:, 1] <= ymax)
    )
    arr = arr[inside]
    if arr.shape[0] == 0:
        return 0.0
    ix = np.clip(((arr[:, 0] - xmin) / cell).astype(np.int64), 0, ncx - 1)
    iy = np.clip(((arr[:, 1] - ymin) / cell).astype(np.int64), 0, ncy - 1)
    occupied = np.unique(ix * ncy + iy).shape[0]
    return occupied / (ncx * ncy)

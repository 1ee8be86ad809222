"""Exact example distributions: specification, sampling, and c.d.f. geometry.

A :class:`DistributionSpec` is a finite mixture of geometric components
(segments, circular arcs, boxes, Cantor-set products), each carrying a
positive weight; weights sum to 1.  The support is the union of the component
point sets.  Three things are computed exactly from the geometry:

* ``draw``            i.i.d. samples (uniform within each component by
                      length / arc length / area),
* ``spec_cdf``        F(x, y) = mass of the lower-left quadrant at (x, y),
* ``support_points``  a deterministic discretization of the support.

Arc quadrant masses are computed by critical-angle partitioning: the angles
where cos(t) = a or sin(t) = b split [t1, t2] into subintervals on which the
quadrant indicator is constant, so a midpoint test per subinterval gives the
exact measure up to floating-point rounding (no quadrature error term).

Builtin catalog (see :func:`builtin_spec`): "fig1a", "fig1b", "fig1b-weights",
"two-segments", "independent-uniform", "fat-cantor", and the demo spec
"singular-shift" (unbounded support; excluded from geometry checks).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

import numpy as np

from .errors import BadParams, UnknownSpecName
from .sample import PairedSample, make_sample

__all__ = [
    "Segment",
    "Arc",
    "MultiArc",
    "Box",
    "CantorProduct",
    "GaussianShift",
    "Component",
    "DistributionSpec",
    "SpecCdfValue",
    "builtin_spec",
    "BUILTIN_NAMES",
    "draw",
    "spec_cdf",
    "spec_d_tau",
    "support_points",
    "svc_intervals",
    "spec_to_jsonable",
    "spec_from_jsonable",
    "spec_to_json",
    "spec_from_json",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Segment:
    """Straight segment from p0 to p1, uniform by length."""

    p0: tuple[float, float]
    p1: tuple[float, float]

    def __post_init__(self) -> None:
        if tuple(self.p0) == tuple(self.p1):
            raise BadParams("segment endpoints must be distinct")

    @property
    def length(self) -> float:
        return math.hypot(self.p1[0] - self.p0[0], self.p1[1] - self.p0[1])


@dataclass(frozen=True)
class Arc:
    """Circular arc, angles in degrees, uniform by arc length."""

    center: tuple[float, float]
    radius: float
    angle_start: float
    angle_end: float

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise BadParams("arc radius must be positive")
        span = self.angle_end - self.angle_start
        if not (0.0 < span <= 360.0):
            raise BadParams("arc must satisfy 0 < angle_end - angle_start <= 360")

    @property
    def length(self) -> float:
        return self.radius * math.radians(self.angle_end - self.angle_start)


@dataclass(frozen=True)
class MultiArc:
    """Several arcs treated as a single piece, uniform by total arc length."""

    arcs: tuple[Arc, ...]

    def __post_init__(self) -> None:
        if len(self.arcs) == 0:
            raise BadParams("multiarc needs at least one arc")

    @property
    def length(self) -> float:
        return sum(a.length for a in self.arcs)


@dataclass(frozen=True)
class Box:
    """Axis-parallel rectangle, uniform by area."""

    x_interval: tuple[float, float]
    y_interval: tuple[float, float]

    def __post_init__(self) -> None:
        if not (self.x_interval[0] < self.x_interval[1]):
            raise BadParams("box x interval must have positive length")
        if not (self.y_interval[0] < self.y_interval[1]):
            raise BadParams("box y interval must have positive length")


@dataclass(frozen=True)
class CantorProduct:
    """Uniform distribution on C_k x C_k, where C_k is the depth-k
    Smith-Volterra-Cantor approximation: step m removes the middle open
    interval of length 4^-m from each of the 2^(m-1) intervals, leaving 2^k
    equal-length closed intervals of total length 1 - (1/2)(1 - 2^-k)."""

    depth: int

    def __post_init__(self) -> None:
        if not isinstance(self.depth, int) or self.depth < 1:
            raise BadParams("cantor depth must be an integer >= 1")


@dataclass(frozen=True)
class GaussianShift:
    """Demo component: X ~ N(0,1), Y = X + Q with Q uniform on ``shifts``.

    The support is all of the plane section swept by the shifted diagonals,
    hence unbounded; support discretization is not defined for it.
    """

    shifts: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.shifts) == 0:
            raise BadParams("gaussian shift needs at least one shift value")
        if not all(math.isfinite(s) for s in self.shifts):
            raise BadParams("shift values must be finite")


Component = Segment | Arc | MultiArc | Box | CantorProduct | GaussianShift


@dataclass(frozen=True)
class DistributionSpec:
    """Weighted mixture of components; weights strictly positive, sum to 1."""

    components: tuple[tuple[Component, float], ...]

    def __post_init__(self) -> None:
        if len(self.components) == 0:
            raise BadParams("spec needs at least one component")
        ws = [w for _, w in self.components]
        if any(w <= 0 for w in ws):
            raise BadParams("component weights must be strictly positive")
        if abs(sum(ws) - 1.0) > 1e-12:
            raise BadParams(f"weights must sum to 1, got {sum(ws)!r}")


@dataclass(frozen=True)
class SpecCdfValue:
    """A c.d.f. value together with an absolute error bound."""

    value: float
    abs_error_bound: float


# ---------------------------------------------------------------------------
# builtin catalog
# ---------------------------------------------------------------------------

BUILTIN_NAMES = (
    "fig1a",
    "fig1b",
    "fig1b-weights",
    "two-segments",
    "independent-uniform",
    "fat-cantor",
    "singular-shift",
)

_FIG1B_PIECES: tuple[Component, ...] = (
    MultiArc((Arc((0.5, 0.5), 0.5, 0.0, 360.0),)),
    Arc((2.0, 3.0), 1.0, 180.0, 270.0),
    MultiArc(
        (
            Arc((2.0, 4.0), 0.5, 270.0, 360.0),
            Arc((3.0, 4.0), 0.5, 180.0, 270.0),
            Arc((2.0, 3.0), 0.5, 0.0, 90.0),
            Arc((3.0, 3.0), 0.5, 90.0, 180.0),
        )
    ),
    Arc((4.0, 1.0), 1.0, 90.0, 180.0),
)


def _require_keys(params: Mapping[str, Any], allowed: set[str], name: str) -> None:
    extra = set(params) - allowed
    if extra:
        raise BadParams(f"unknown parameter(s) {sorted(extra)} for spec {name!r}")


def builtin_spec(name: str, params: Mapping[str, Any] | None = None) -> DistributionSpec:
    """Return a catalog spec by name.

    Parameters per name: "fig1b-weights" takes ``weights`` (four positive
    reals summing to 1); "two-segments" takes ``w`` (weight of the diagonal
    segment, default 0.5); "fat-cantor" takes ``depth`` (default 8);
    "singular-shift" takes ``shifts`` (default (-1, -1/2, 0, 1/2, 1)).
    """
    p = dict(params or {})
    if name == "fig1a":
        _require_keys(p, set(), name)
        verts = [(2.0, 0.0), (4.0, 2.0), (2.0, 4.0), (0.0, 2.0)]
        segs = [Segment(verts[i], verts[(i + 1) % 4]) for i in range(4)]
        return DistributionSpec(tuple((s, 0.25) for s in segs))
    if name == "fig1b":
        _require_keys(p, set(), name)
        weights = (6 / 11, 1 / 11, 2 / 11, 2 / 11)
        return DistributionSpec(tuple(zip(_FIG1B_PIECES, weights)))
    if name == "fig1b-weights":
        _require_keys(p, {"weights"}, name)
        if "weights" not in p:
            raise BadParams("fig1b-weights requires a 'weights' parameter")
        ws = tuple(float(w) for w in p["weights"])
        if len(ws) != 4:
            raise BadParams("fig1b-weights needs exactly 4 weights")
        return DistributionSpec(tuple(zip(_FIG1B_PIECES, ws)))
    if name == "two-segments":
        _require_keys(p, {"w"}, name)
        w = float(p.get("w", 0.5))
        if not (0.0 < w < 1.0):
            raise BadParams("two-segments weight w must be in (0, 1)")
        return DistributionSpec(
            (
                (Segment((0.0, 0.0), (1.0, 1.0)), w),
                (Segment((0.5, 0.5), (1.0, 0.0)), 1.0 - w),
            )
        )
    if name == "independent-uniform":
        _require_keys(p, set(), name)
        return DistributionSpec(((Box((0.0, 1.0), (0.0, 1.0)), 1.0),))
    if name == "fat-cantor":
        _require_keys(p, {"depth"}, name)
        depth = p.get("depth", 8)
        if not isinstance(depth, (int, np.integer)) or isinstance(depth, bool):
            raise BadParams("fat-cantor depth must be an integer")
        return DistributionSpec(((CantorProduct(int(depth)), 1.0),))
    if name == "singular-shift":
        _require_keys(p, {"shifts"}, name)
        shifts = tuple(float(s) for s in p.get("shifts", (-1.0, -0.5, 0.0, 0.5, 1.0)))
        return DistributionSpec(((GaussianShift(shifts), 1.0),))
    raise UnknownSpecName(f"no builtin spec named {name!r}")


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------


def svc_intervals(depth: int) -> list[tuple[float, float]]:
    """Closed intervals of the depth-k Smith-Volterra-Cantor approximation.

    All bounds are dyadic rationals, hence exact in binary floating point
    for any practical depth.
    """
    if depth < 1:
        raise BadParams("cantor depth must be >= 1")
    ivs = [(0.0, 1.0)]
    for m in range(1, depth + 1):
        half_gap = 4.0 ** (-m) / 2.0
        nxt = []
        for a, b in ivs:
            mid = (a + b) / 2.0
            nxt.append((a, mid - half_gap))
            nxt.append((mid + half_gap, b))
        ivs = nxt
    return ivs


def _draw_component(comp: Component, k: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    if k == 0:
        return np.empty(0), np.empty(0)
    if isinstance(comp, Segment):
        t = rng.random(k)
        xs = comp.p0[0] + t * (comp.p1[0] - comp.p0[0])
        ys = comp.p0[1] + t * (comp.p1[1] - comp.p0[1])
        return xs, ys
    if isinstance(comp, Arc):
        a0 = math.radians(comp.angle_start)
        a1 = math.radians(comp.angle_end)
        theta = a0 + rng.random(k) * (a1 - a0)
        xs = comp.center[0] + comp.radius * np.cos(theta)
        ys = comp.center[1] + comp.radius * np.sin(theta)
        return xs, ys
    if isinstance(comp, MultiArc):
        lens = np.array([a.length for a in comp.arcs])
        pick = rng.choice(len(comp.arcs), size=k, p=lens / lens.sum())
        xs = np.empty(k)
        ys = np.empty(k)
        for j, arc in enumerate(comp.arcs):
            m = pick == j
            xs[m], ys[m] = _draw_component(arc, int(m.sum()), rng)
        return xs, ys
    if isinstance(comp, Box):
        xs = rng.uniform(comp.x_interval[0], comp.x_interval[1], size=k)
        ys = rng.uniform(comp.y_interval[0], comp.y_interval[1], size=k)
        return xs, ys
    if isinstance(comp, CantorProduct):
        ivs = svc_intervals(comp.depth)
        starts = np.array([a for a, _ in ivs])
        length = ivs[0][1] - ivs[0][0]  # all intervals share one length
        xs = starts[rng.integers(0, len(ivs), size=k)] + rng.random(k) * length
        ys = starts[rng.integers(0, len(ivs), size=k)] + rng.random(k) * length
        return xs, ys
    if isinstance(comp, GaussianShift):
        xs = rng.standard_normal(k)
        q = rng.choice(np.asarray(comp.shifts, dtype=np.float64), size=k)
        return xs, xs + q
    raise BadParams(f"cannot sample component type {type(comp).__name__}")


def draw(spec: DistributionSpec, n: int, seed: int) -> PairedSample:
    """n i.i.d. draws from the mixture; bit-reproducible given (spec, n, seed).

    Algorithm: one categorical draw assigns each index to a component, then
    each component fills its assigned slots with uniform draws (by length,
    arc length, or area).  All randomness flows from one
    ``numpy.random.default_rng(seed)`` consumed in a fixed order.
    """
    if n < 2:
        raise BadParams("draw needs n >= 2")
    rng = np.random.default_rng(seed)
    weights = np.array([w for _, w in spec.components])
    which = rng.choice(len(spec.components), size=n, p=weights)
    xs = np.empty(n)
    ys = np.empty(n)
    for j, (comp, _) in enumerate(spec.components):
        m = which == j
        xs[m], ys[m] = _draw_component(comp, int(m.sum()), rng)
    return make_sample(xs, ys)


# ---------------------------------------------------------------------------
# exact quadrant masses (c.d.f.)
# ---------------------------------------------------------------------------


def _segment_fraction(seg: Segment, x: float, y: float) -> float:
    """Fraction of segment length inside (-inf, x] x (-inf, y]; closed form."""
    lo, hi = 0.0, 1.0
    for p0, d, q in ((seg.p0[0], seg.p1[0] - seg.p0[0], x), (seg.p0[1], seg.p1[1] - seg.p0[1], y)):
        if d > 0:
            hi = min(hi, (q - p0) / d)
        elif d < 0:
            lo = max(lo, (q - p0) / d)
        elif p0 > q:
            return 0.0
    return max(0.0, hi - lo)


def _arc_fraction(arc: Arc, x: float, y: float) -> float:
    """Fraction of arc length inside the quadrant, by critical-angle partition.

    cos(t) <= a and sin(t) <= b change truth value only at angles where
    cos(t) = a or sin(t) = b; collecting those angles inside [t1, t2] and
    testing one midpoint per gap yields the exact angular measure.
    """
    t1 = math.radians(arc.angle_start)
    t2 = math.radians(arc.angle_end)
    a = (x - arc.center[0]) / arc.radius
    b = (y - arc.center[1]) / arc.radius
    if a <= -1.0 or b <= -1.0:
        # the constraint set is at most a single angle: measure zero
        return 0.0

    cuts = {t1, t2}
    bases: list[float] = []
    if -1.0 < a < 1.0:
        ac = math.acos(a)
        bases += [ac, _TWO_PI - ac]
    if -1.0 < b < 1.0:
        as_ = math.asin(b)
        bases += [as_ % _TWO_PI, (math.pi - as_) % _TWO_PI]
    if bases:
        k_lo = math.floor(t1 / _TWO_PI) - 1
        k_hi = math.floor(t2 / _TWO_PI) + 1
        for base in bases:
            for k in range(k_lo, k_hi + 1):
                t = base + k * _TWO_PI
                if t1 < t < t2:
                    cuts.add(t)
    angles = sorted(cuts)
    total = 0.0
    for lo, hi in zip(angles[:-1], angles[1:]):
        mid = 0.5 * (lo + hi)
        if math.cos(mid) <= a and math.sin(mid) <= b:
            total += hi - lo
    return total / (t2 - t1)


def _cantor_marginal_cdf(depth: int, q: float) -> float:
    ivs = svc_intervals(depth)
    length = ivs[0][1] - ivs[0][0]
    total = length * len(ivs)
    covered = 0.0
    for a, b in ivs:
        if q <= a:
            break
        covered += min(q, b) - a
    return covered / total


def _std_normal_cdf(z: float) -> float:
    if z == math.inf:
        return 1.0
    if z == -math.inf:
        return 0.0
    return 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))


def _component_fraction(comp: Component, x: float, y: float) -> tuple[float, float]:
    """(quadrant mass fraction, abs error bound) for one component."""
    if isinstance(comp, Segment):
        return _segment_fraction(comp, x, y), 0.0
    if isinstance(comp, Arc):
        return _arc_fraction(comp, x, y), 1e-12
    if isinstance(comp, MultiArc):
        lens = [a.length for a in comp.arcs]
        tot = sum(lens)
        val = sum(l * _arc_fraction(a, x, y) for a, l in zip(comp.arcs, lens)) / tot
        return val, 1e-12
    if isinstance(comp, Box):
        (x0, x1), (y0, y1) = comp.x_interval, comp.y_interval
        fx = min(max((x - x0) / (x1 - x0), 0.0), 1.0)
        fy = min(max((y - y0) / (y1 - y0), 0.0), 1.0)
        return fx * fy, 0.0
    if isinstance(comp, CantorProduct):
        return (
            _cantor_marginal_cdf(comp.depth, x) * _cantor_marginal_cdf(comp.depth, y),
            0.0,
        )
    if isinstance(comp, GaussianShift):
        vals = [_std_normal_cdf(min(x, y - q)) for q in comp.shifts]
        return sum(vals) / len(vals), 1e-12
    raise BadParams(f"cannot evaluate component type {type(comp).__name__}")


def spec_cdf(spec: DistributionSpec, x: float, y: float) -> SpecCdfValue:
    """F(x, y): mixture-weighted mass of the quadrant (-inf, x] x (-inf, y]."""
    value = 0.0
    err = 0.0
    for comp, w in spec.components:
        v, e = _component_fraction(comp, x, y)
        value += w * v
        err += w * e
    return SpecCdfValue(value=min(max(value, 0.0), 1.0), abs_error_bound=err)


def spec_d_tau(spec: DistributionSpec, x: float, y: float) -> float:
    """Exact-geometry d_tau(x, y) = F(x,y) - (F_X(x) + F_Y(y)) / 2."""
    joint = spec_cdf(spec, x, y).value
    fx = spec_cdf(spec, x, math.inf).value
    fy = spec_cdf(spec, math.inf, y).value
    return joint - 0.5 * (fx + fy)


# ---------------------------------------------------------------------------
# support discretization
# ---------------------------------------------------------------------------


def _steps(length: float, resolution: float) -> int:
    return max(1, math.ceil(length / resolution))


def _component_support(comp: Component, resolution: float) -> np.ndarray:
    if isinstance(comp, Segment):
        m = _steps(comp.length, resolution)
        t = np.linspace(0.0, 1.0, m + 1)
        return np.column_stack(
            (
                comp.p0[0] + t * (comp.p1[0] - comp.p0[0]),
                comp.p0[1] + t * (comp.p1[1] - comp.p0[1]),
            )
        )
    if isinstance(comp, Arc):
        m = _steps(comp.length, resolution)
        th = np.radians(np.linspace(comp.angle_start, comp.angle_end, m + 1))
        return np.column_stack(
            (
                comp.center[0] + comp.radius * np.cos(th),
                comp.center[1] + comp.radius * np.sin(th),
            )
        )
    if isinstance(comp, MultiArc):
        return np.vstack([_component_support(a, resolution) for a in comp.arcs])
    if isinstance(comp, Box):
        (x0, x1), (y0, y1) = comp.x_interval, comp.y_interval
        gx = np.linspace(x0, x1, _steps(x1 - x0, resolution) + 1)
        gy = np.linspace(y0, y1, _steps(y1 - y0, resolution) + 1)
        mx, my = np.meshgrid(gx, gy, indexing="ij")
        return np.column_stack((mx.ravel(), my.ravel()))
    if isinstance(comp, CantorProduct):
        pts1d: list[np.ndarray] = []
        for a, b in svc_intervals(comp.depth):
            pts1d.append(np.linspace(a, b, _steps(b - a, resolution) + 1))
        g = np.concatenate(pts1d)
        mx, my = np.meshgrid(g, g, indexing="ij")
        return np.column_stack((mx.ravel(), my.ravel()))
    if isinstance(comp, GaussianShift):
        raise BadParams("singular-shift support is unbounded; cannot discretize")
    raise BadParams(f"cannot discretize component type {type(comp).__name__}")


def support_points(spec: DistributionSpec, resolution: float) -> np.ndarray:
    """Deterministic discretization of the support, spacing <= resolution.

    Returns an (m, 2) array; component order and within-component parameter
    order are fixed, so identical inputs give identical output.
    """
    if resolution <= 0:
        raise BadParams("resolution must be positive")
    return np.vstack([_component_support(c, resolution) for c, _ in spec.components])


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _arc_to_dict(a: Arc) -> dict[str, Any]:
    return {
        "center": [a.center[0], a.center[1]],
        "radius": a.radius,
        "angle_start": a.angle_start,
        "angle_end": a.angle_end,
    }


def _arc_from_dict(d: Mapping[str, Any]) -> Arc:
    return Arc(
        center=(float(d["center"][0]), float(d["center"][1])),
        radius=float(d["radius"]),
        angle_start=float(d["angle_start"]),
        angle_end=float(d["angle_end"]),
    )


def spec_to_jsonable(spec: DistributionSpec) -> dict[str, Any]:
    """Plain-dict form: {"components": [{"kind": ..., ..., "weight": w}, ...]}."""
    out = []
    for comp, w in spec.components:
        if isinstance(comp, Segment):
            d: dict[str, Any] = {
                "kind": "segment",
                "p0": [comp.p0[0], comp.p0[1]],
                "p1": [comp.p1[0], comp.p1[1]],
            }
        elif isinstance(comp, Arc):
            d = {"kind": "arc", **_arc_to_dict(comp)}
        elif isinstance(comp, MultiArc):
            d = {"kind": "multiarc", "arcs": [_arc_to_dict(a) for a in comp.arcs]}
        elif isinstance(comp, Box):
            d = {
                "kind": "box",
                "x_interval": list(comp.x_interval),
                "y_interval": list(comp.y_interval),
            }
        elif isinstance(comp, CantorProduct):
            d = {"kind": "cantor_product", "depth": comp.depth}
        elif isinstance(comp, GaussianShift):
            d = {"kind": "gaussian_shift", "shifts": list(comp.shifts)}
        else:
            raise BadParams(f"cannot serialize component type {type(comp).__name__}")
        d["weight"] = w
        out.append(d)
    return {"components": out}


def spec_from_jsonable(obj: Mapping[str, Any]) -> DistributionSpec:
    """Inverse of :func:`spec_to_jsonable`; unknown kinds are rejected."""
    if not isinstance(obj, Mapping) or "components" not in obj:
        raise BadParams("spec object must have a 'components' list")
    comps: list[tuple[Component, float]] = []
    for d in obj["components"]:
        try:
            kind = d["kind"]
            weight = float(d["weight"])
            if kind == "segment":
                comp: Component = Segment(
                    p0=(float(d["p0"][0]), float(d["p0"][1])),
                    p1=(float(d["p1"][0]), float(d["p1"][1])),
                )
            elif kind == "arc":
                comp = _arc_from_dict(d)
            elif kind == "multiarc":
                comp = MultiArc(tuple(_arc_from_dict(a) for a in d["arcs"]))
            elif kind == "box":
                comp = Box(
                    x_interval=(float(d["x_interval"][0]), float(d["x_interval"][1])),
                    y_interval=(float(d["y_interval"][0]), float(d["y_interval"][1])),
                )
            elif kind == "cantor_product":
                comp = CantorProduct(int(d["depth"]))
            elif kind == "gaussian_shift":
                comp = GaussianShift(tuple(float(s) for s in d["shifts"]))
            else:
                raise BadParams(f"unknown component kind {kind!r}")
        except (KeyError, TypeError, IndexError) as exc:
            raise BadParams(f"malformed component entry: {exc!r}") from exc
        comps.append((comp, weight))
    return DistributionSpec(tuple(comps))


def spec_to_json(spec: DistributionSpec) -> str:
    return json.dumps(spec_to_jsonable(spec), indent=2)


def spec_from_json(text: str) -> DistributionSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadParams(f"invalid spec JSON: {exc}") from exc
    return spec_from_jsonable(obj)

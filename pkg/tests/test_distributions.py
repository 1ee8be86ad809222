"""Builtin catalog, exact CDF evaluation, sampling, and spec serialization."""
from __future__ import annotations

import json
import math

import numpy as np
import pytest

from ndg import (
    BadParams,
    UnknownSpecName,
    builtin_spec,
    draw,
    spec_cdf,
    spec_d_tau,
    spec_from_json,
    spec_to_json,
    spec_to_jsonable,
    support_points,
    svc_intervals,
)
from ndg.distributions import (
    BUILTIN_NAMES,
    Arc,
    Box,
    CantorProduct,
    DistributionSpec,
    GaussianShift,
    MultiArc,
    Segment,
    spec_from_jsonable,
)


# ---- catalog ---------------------------------------------------------------


def catalog_params(name):
    # fig1b-weights has no default weights; everything else constructs bare
    return {"weights": [0.25, 0.25, 0.25, 0.25]} if name == "fig1b-weights" else None


def test_builtin_names_cover_catalog():
    for name in (
        "fig1a",
        "fig1b",
        "fig1b-weights",
        "two-segments",
        "independent-uniform",
        "fat-cantor",
        "singular-shift",
    ):
        assert name in BUILTIN_NAMES
        builtin_spec(name, catalog_params(name))  # constructs without error


def test_unknown_name_rejected():
    with pytest.raises(UnknownSpecName):
        builtin_spec("fig1c")


def test_unknown_param_rejected():
    with pytest.raises(BadParams):
        builtin_spec("two-segments", {"nope": 1.0})
    with pytest.raises(BadParams):
        builtin_spec("fig1a", {"w": 0.5})  # fig1a takes no params


def test_fig1a_is_four_equal_segments():
    spec = builtin_spec("fig1a")
    assert len(spec.components) == 4
    for comp, w in spec.components:
        assert isinstance(comp, Segment)
        assert w == 0.25
        # each diamond edge has length 2*sqrt(2)
        assert comp.length == pytest.approx(2 * math.sqrt(2))


def test_fig1b_weights():
    spec = builtin_spec("fig1b")
    ws = [w for _, w in spec.components]
    assert ws == pytest.approx([6 / 11, 1 / 11, 2 / 11, 2 / 11])
    assert sum(ws) == pytest.approx(1.0, abs=1e-12)


def test_two_segments_weight_param():
    spec = builtin_spec("two-segments", {"w": 0.7})
    ws = sorted(w for _, w in spec.components)
    assert ws == pytest.approx([0.3, 0.7])
    with pytest.raises(BadParams):
        builtin_spec("two-segments", {"w": 0.0})
    with pytest.raises(BadParams):
        builtin_spec("two-segments", {"w": 1.0})


def test_component_validation():
    with pytest.raises(BadParams):
        Segment((0.0, 0.0), (0.0, 0.0))  # zero length
    with pytest.raises(BadParams):
        Arc((0.0, 0.0), -1.0, 0.0, 90.0)  # negative radius
    with pytest.raises(BadParams):
        Arc((0.0, 0.0), 1.0, 0.0, 0.0)  # empty span
    with pytest.raises(BadParams):
        Arc((0.0, 0.0), 1.0, 0.0, 361.0)  # > full circle
    with pytest.raises(BadParams):
        MultiArc(())
    with pytest.raises(BadParams):
        Box((1.0, 0.0), (0.0, 1.0))  # empty x interval
    with pytest.raises(BadParams):
        CantorProduct(0)
    with pytest.raises(BadParams):
        GaussianShift(())


def test_spec_weights_must_sum_to_one():
    seg = Segment((0.0, 0.0), (1.0, 1.0))
    with pytest.raises(BadParams):
        DistributionSpec(((seg, 0.5), (seg, 0.4)))
    with pytest.raises(BadParams):
        DistributionSpec(((seg, -0.5), (seg, 1.5)))


# ---- sampling ---------------------------------------------------------------


def test_draw_is_deterministic():
    spec = builtin_spec("fig1b")
    a = draw(spec, 1000, seed=77)
    b = draw(spec, 1000, seed=77)
    np.testing.assert_array_equal(a.xs, b.xs)
    np.testing.assert_array_equal(a.ys, b.ys)
    c = draw(spec, 1000, seed=78)
    assert not np.array_equal(a.xs, c.xs)


def test_fig1a_draws_lie_on_diamond():
    s = draw(builtin_spec("fig1a"), 5000, seed=1)
    # support is |x-2| + |y-2| = 2
    resid = np.abs(np.abs(s.xs - 2.0) + np.abs(s.ys - 2.0) - 2.0)
    assert resid.max() < 1e-9


def test_fig1b_circle_draws_lie_on_circle():
    spec = builtin_spec("fig1b")
    s = draw(spec, 20000, seed=2)
    r2 = (s.xs - 0.5) ** 2 + (s.ys - 0.5) ** 2
    on_circle = np.abs(np.sqrt(r2) - 0.5) < 1e-9
    # weight of the circle component is 6/11; binomial 6-sigma bound
    p = 6 / 11
    tol = 6 * math.sqrt(p * (1 - p) / 20000)
    assert abs(on_circle.mean() - p) < tol


def test_two_segments_draws_on_segments():
    # diagonal (0,0)-(1,1) plus anti-diagonal (0.5,0.5)-(1,0)
    s = draw(builtin_spec("two-segments"), 4000, seed=3)
    on_diag = np.abs(s.ys - s.xs) < 1e-12
    on_anti = (np.abs(s.xs + s.ys - 1.0) < 1e-12) & (s.xs >= 0.5 - 1e-12)
    assert np.all(on_diag | on_anti)
    assert on_diag.any() and (on_anti & ~on_diag).any()


def test_fat_cantor_draws_inside_intervals():
    depth = 4
    s = draw(builtin_spec("fat-cantor", {"depth": depth}), 3000, seed=4)
    ivs = svc_intervals(depth)
    for v in np.concatenate([s.xs, s.ys]):
        assert any(a - 1e-12 <= v <= b + 1e-12 for a, b in ivs)


def test_singular_shift_draws_on_diagonals():
    spec = builtin_spec("singular-shift")
    s = draw(spec, 2000, seed=5)
    shifts = {c.shifts for c, _ in spec.components if isinstance(c, GaussianShift)}
    qs = next(iter(shifts))
    resid = np.min(np.abs(s.ys[:, None] - s.xs[:, None] - np.asarray(qs)[None, :]), axis=1)
    assert resid.max() < 1e-9


def test_draw_rejects_tiny_n():
    with pytest.raises(BadParams):
        draw(builtin_spec("fig1a"), 1, seed=9)
    with pytest.raises(BadParams):
        draw(builtin_spec("fig1a"), 0, seed=9)
    assert draw(builtin_spec("fig1a"), 2, seed=9).n == 2


# ---- exact CDF --------------------------------------------------------------


def test_spec_cdf_trivial_bounds():
    spec = builtin_spec("fig1a")
    assert spec_cdf(spec, 4.0, 4.0).value == 1.0
    assert spec_cdf(spec, -1.0, 2.0).value == 0.0
    assert spec_cdf(spec, 2.0, -1.0).value == 0.0


def test_fig1a_cdf_known_point():
    # bottom-left corner (2,0)..(0,2) edge fully below (3,1)? work via quarter:
    # at the diamond's center-left vertex (0,2) the south-west edge mass is 1/4
    spec = builtin_spec("fig1a")
    v = spec_cdf(spec, 2.0, 2.0)
    # south-west edge entirely in (-inf,2]x(-inf,2]; other edges contribute
    # only their corner endpoints (measure zero)
    assert v.value == pytest.approx(0.25, abs=1e-12)
    assert v.abs_error_bound <= 1e-12


def test_spec_cdf_monotone_in_each_argument():
    for name in ("fig1a", "fig1b", "two-segments", "fat-cantor"):
        spec = builtin_spec(name)
        pts = np.linspace(-0.5, 4.5, 41)
        prev = -1.0
        for q in pts:
            cur = spec_cdf(spec, q, 100.0).value
            assert cur >= prev - 1e-12
            prev = cur


def test_spec_cdf_matches_empirical_dkw():
    # DKW bound at alpha = 1e-6: eps = sqrt(ln(2/alpha) / (2n))
    n = 60000
    for name in ("fig1a", "fig1b", "two-segments"):
        spec = builtin_spec(name)
        s = draw(spec, n, seed=11)
        eps = math.sqrt(math.log(2 / 1e-6) / (2 * n))
        rng = np.random.default_rng(12)
        lo_x, hi_x = s.xs.min(), s.xs.max()
        lo_y, hi_y = s.ys.min(), s.ys.max()
        for _ in range(25):
            qx = float(rng.uniform(lo_x, hi_x))
            qy = float(rng.uniform(lo_y, hi_y))
            emp = float(np.mean((s.xs <= qx) & (s.ys <= qy)))
            exact = spec_cdf(spec, qx, qy)
            assert abs(emp - exact.value) < eps + exact.abs_error_bound + 1e-9


def test_independent_uniform_cdf_is_product():
    spec = builtin_spec("independent-uniform")
    for qx, qy in ((0.3, 0.7), (0.5, 0.5), (1.0, 0.25)):
        assert spec_cdf(spec, qx, qy).value == pytest.approx(qx * qy, abs=1e-12)


def test_singular_shift_cdf_matches_empirical():
    spec = builtin_spec("singular-shift")
    n = 60000
    s = draw(spec, n, seed=13)
    eps = math.sqrt(math.log(2 / 1e-6) / (2 * n))
    for qx, qy in ((0.0, 0.0), (0.5, 1.0), (-1.0, 0.5), (1.0, 2.0)):
        emp = float(np.mean((s.xs <= qx) & (s.ys <= qy)))
        exact = spec_cdf(spec, qx, qy)
        assert abs(emp - exact.value) < eps + exact.abs_error_bound + 1e-9


# ---- population d_tau --------------------------------------------------------


def test_fig1a_population_d_tau_constant():
    spec = builtin_spec("fig1a")
    pts = support_points(spec, resolution=0.1)
    vals = [spec_d_tau(spec, float(x), float(y)) for x, y in pts[:80]]
    assert max(abs(v + 0.25) for v in vals) < 1e-9


def test_fig1b_population_d_tau_constant():
    spec = builtin_spec("fig1b")
    pts = support_points(spec, resolution=0.1)
    vals = [spec_d_tau(spec, float(x), float(y)) for x, y in pts[:80]]
    assert max(abs(v + 3 / 22) for v in vals) < 1e-8


def test_two_segments_d_tau_not_constant():
    # probe pair with provable gap: |d(0.25,0.25) - d(0.5,0.5)| = 0.125
    spec = builtin_spec("two-segments")
    a = spec_d_tau(spec, 0.25, 0.25)
    b = spec_d_tau(spec, 0.5, 0.5)
    assert a == pytest.approx(-0.125, abs=1e-12)
    assert b == pytest.approx(-0.25, abs=1e-12)
    assert abs(a - b) >= 0.01


# ---- fat Cantor intervals -----------------------------------------------------


def test_svc_intervals_structure():
    ivs = svc_intervals(1)
    assert len(ivs) == 2
    total = sum(b - a for a, b in ivs)
    assert total == pytest.approx(1 - 1 / 4, abs=1e-15)  # removed 1/4 at step 1


def test_svc_total_length_formula():
    # after k steps the remaining length is 1 - (1/2)(1 - 2^-k)
    for k in (1, 2, 3, 5, 8):
        ivs = svc_intervals(k)
        assert len(ivs) == 2**k
        total = sum(b - a for a, b in ivs)
        assert total == pytest.approx(1 - 0.5 * (1 - 2.0**-k), abs=1e-14)


def test_svc_intervals_disjoint_and_sorted():
    ivs = svc_intervals(6)
    for (a1, b1), (a2, b2) in zip(ivs, ivs[1:]):
        assert b1 < a2
        assert a1 < b1


def test_svc_equal_lengths():
    for k in (2, 4, 7):
        ivs = svc_intervals(k)
        lens = {b - a for a, b in ivs}
        assert len(lens) == 1  # dyadic arithmetic keeps them exactly equal


# ---- support points ------------------------------------------------------------


def test_support_points_on_fig1a():
    pts = support_points(builtin_spec("fig1a"), resolution=0.05)
    assert len(pts) >= 4 * (2 * math.sqrt(2) / 0.05)
    resid = np.abs(np.abs(pts[:, 0] - 2.0) + np.abs(pts[:, 1] - 2.0) - 2.0)
    assert resid.max() < 1e-9


def test_support_points_spacing():
    pts = support_points(builtin_spec("two-segments"), resolution=0.01)
    # consecutive points along a segment are <= resolution apart
    seg = pts[pts[:, 0] <= 0.5 + 1e-12]
    seg = seg[np.argsort(seg[:, 0])]
    gaps = np.hypot(np.diff(seg[:, 0]), np.diff(seg[:, 1]))
    assert gaps.max() <= 0.01 + 1e-12


def test_support_points_fat_cantor_in_intervals():
    depth = 3
    pts = support_points(builtin_spec("fat-cantor", {"depth": depth}), resolution=0.05)
    ivs = svc_intervals(depth)
    for v in np.unique(pts.ravel()):
        assert any(a - 1e-12 <= v <= b + 1e-12 for a, b in ivs)


def test_support_points_rejected_for_gaussian_shift():
    with pytest.raises(BadParams):
        support_points(builtin_spec("singular-shift"), resolution=0.1)


# ---- serialization ---------------------------------------------------------------


@pytest.mark.parametrize("name", list(BUILTIN_NAMES))
def test_spec_round_trip(name):
    spec = builtin_spec(name, catalog_params(name))
    text = spec_to_json(spec)
    back = spec_from_json(text)
    assert back == spec


def test_spec_json_is_plain_data():
    obj = spec_to_jsonable(builtin_spec("fig1a"))
    json.dumps(obj)  # raises if not serializable
    assert all("kind" in c for c in obj["components"])


def test_spec_from_jsonable_rejects_unknown_kind():
    with pytest.raises(BadParams):
        spec_from_jsonable({"components": [{"kind": "blob", "weight": 1.0}]})


def test_spec_from_jsonable_rejects_malformed():
    with pytest.raises(BadParams):
        spec_from_jsonable({"nope": []})
    with pytest.raises(BadParams):
        spec_from_jsonable({"components": [{"kind": "segment", "weight": 1.0}]})


def test_round_trip_preserves_draw():
    spec = builtin_spec("fig1b")
    back = spec_from_json(spec_to_json(spec))
    a = draw(spec, 100, seed=6)
    b = draw(back, 100, seed=6)
    np.testing.assert_array_equal(a.xs, b.xs)
    np.testing.assert_array_equal(a.ys, b.ys)

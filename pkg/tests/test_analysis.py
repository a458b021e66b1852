import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from safetyreg.analysis import (
    REGIMES,
    UtilityPoint,
    pareto_hull,
    partition,
    regime_hulls,
    regime_of,
    summarize,
)
from safetyreg.game import GameParams, Regulation
from safetyreg.sweep import CLASSES, SweepGrid, make_record, run_sweep
from safetyreg.solver import solve_unregulated


def _pts(*xy):
    return [UtilityPoint(float(x), float(y)) for x, y in xy]


def _coords(hull):
    return [(p.u_g, p.u_d) for p in hull]


def test_hull_example():
    hull = pareto_hull(_pts((0, 0), (1, 0), (0, 1), (0.7, 0.7)))
    assert _coords(hull) == [(0.0, 1.0), (0.7, 0.7), (1.0, 0.0)]


def test_hull_single_point_and_empty():
    assert _coords(pareto_hull(_pts((0.3, 0.2)))) == [(0.3, 0.2)]
    with pytest.raises(ValueError):
        pareto_hull([])
    with pytest.raises(ValueError):
        UtilityPoint(math.nan, 0.0)


def test_hull_keeps_first_duplicate():
    a = UtilityPoint(1.0, 1.0, (0.0, 0.0, 0.1))
    b = UtilityPoint(1.0, 1.0, (0.0, 0.0, 0.2))
    assert pareto_hull([a, b])[0] is a


def test_hull_collinear_points_merged():
    hull = pareto_hull(_pts((0, 2), (1, 1), (2, 0)))
    assert _coords(hull) == [(0.0, 2.0), (2.0, 0.0)]


def test_hull_vertical_face():
    hull = pareto_hull(_pts((0, 1), (1, 1), (1, 0), (0.5, 0.2)))
    assert _coords(hull) == [(0.0, 1.0), (1.0, 1.0), (1.0, 0.0)]


def _hull_oracle(P: np.ndarray, tol: float) -> set:
    """Union, over quadrant directions (axes and every pair normal), of the two end
    points of each direction's maximiser set."""
    n = len(P)
    dirs = [(1.0, 0.0), (0.0, 1.0)]
    for i in range(n):
        for j in range(i + 1, n):
            dx, dy = P[j] - P[i]
            for w in ((-dy, dx), (dy, -dx)):
                if w[0] >= 0 and w[1] >= 0 and (w[0] > 0 or w[1] > 0):
                    dirs.append(w)
    D = np.array(dirs, dtype=float)
    D /= np.linalg.norm(D, axis=1)[:, None]
    perp = np.stack([-D[:, 1], D[:, 0]], axis=1)
    s = P @ D.T
    t = P @ perp.T
    mask = s >= s.max(axis=0) - tol
    lo = np.argmin(np.where(mask, t, np.inf), axis=0)
    hi = np.argmax(np.where(mask, t, -np.inf), axis=0)
    return {tuple(P[k]) for k in np.concatenate([lo, hi])}


def test_hull_matches_quadratic_oracle_on_10000_sets():
    rng = np.random.default_rng(2024)
    for trial in range(10_000):
        n = int(rng.integers(1, 16))
        if trial % 2:
            P = rng.integers(0, 6, size=(n, 2)).astype(float)  # many ties and collinear runs
            tol = 1e-9
        else:
            P = rng.uniform(-1, 1, size=(n, 2))
            tol = 1e-12
        P = np.unique(P, axis=0)
        hull = pareto_hull([UtilityPoint(float(x), float(y)) for x, y in P])
        assert set(_coords(hull)) == _hull_oracle(P, tol), P


coords = st.floats(-10, 10, allow_nan=False)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=1, max_size=20), st.data())
def test_hull_idempotent_under_dominated_insertion(xy, data):
    pts = _pts(*xy)
    hull = pareto_hull(pts)
    anchor = data.draw(st.sampled_from(pts))
    dx = data.draw(st.floats(1e-3, 5))
    dy = data.draw(st.floats(1e-3, 5))
    extended = pts + [UtilityPoint(anchor.u_g - dx, anchor.u_d - dy)]
    assert _coords(pareto_hull(extended)) == _coords(hull)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=1, max_size=20))
def test_hull_vertices_are_input_points_ascending(xy):
    pts = _pts(*xy)
    hull = pareto_hull(pts)
    assert all(any(h is p for p in pts) for h in hull)
    us = [p.u_g for p in hull]
    assert us == sorted(us)


def test_regime_of():
    assert regime_of(0.0, 0.0) == "none"
    assert regime_of(0.0, 0.4) == "d_only"
    assert regime_of(0.3, 0.3) == "g_only"
    assert regime_of(0.3, 0.5) == "both"


def test_partition_is_exhaustive_and_disjoint(canonical_bargained):
    raw = canonical_bargained.raw
    parts = partition(raw)
    assert sum(len(v) for v in parts.values()) == len(raw)
    seen = set()
    for regime in REGIMES:
        keys = {p.provenance for p in parts[regime]}
        assert not keys & seen
        seen |= keys


def test_regime_hulls_on_canonical_bargained_sweep(canonical_bargained):
    raw = canonical_bargained.raw
    hulls = regime_hulls(raw)
    assert hulls.empty == []
    none_pts = [UtilityPoint(r.outcome.u_g, r.outcome.u_d) for r in raw
                if r.regulation.theta_g == 0 and r.regulation.theta_d == 0]
    assert _coords(hulls.hull_none) == _coords(pareto_hull(none_pts))
    # regulation can leave both players better off: each unregulated frontier
    # vertex is strictly dominated by some vertex of the two-floor frontier
    for q in hulls.hull_none:
        assert any(v.u_g > q.u_g and v.u_d > q.u_d for v in hulls.hull_both)
    best = {k: max(p.u_g + p.u_d for p in hulls.hull(k)) for k in REGIMES}
    assert all(best["both"] >= best[k] for k in REGIMES)
    assert best["both"] == pytest.approx(0.875, abs=1e-9)


def test_empty_regime_is_flagged():
    p = GameParams.canonical()
    hulls = regime_hulls(run_sweep(p, SweepGrid.safety_line(theta_d_max=0.1, step=0.05)))
    assert set(hulls.empty) == {"g_only", "both"}
    assert hulls.hull_g_only == []


def test_summarize_canonical_line():
    p = GameParams.canonical()
    recs = run_sweep(p, SweepGrid.safety_line(theta_d_max=25.0))
    s = summarize(recs)
    assert s["records"] == 5001
    assert s["counts"]["backfire"] == 24 and s["backfire_flags"] == 24
    assert s["counts"]["abstain"] > 0
    box = s["backfire_region"]
    assert box["theta_d_min"] == pytest.approx(0.38) and box["theta_d_max"] == pytest.approx(0.495)
    assert s["backfire_onsets"] == [{"theta_g": 0.0, "delta": 0.5, "theta_d": 0.38}]
    assert set(s["counts"]) == set(CLASSES)


def test_summarize_all_neutral():
    p = GameParams.canonical()
    base = solve_unregulated(p)
    recs = [make_record(Regulation(0.0, 0.0), 0.5, base, base)] * 3
    s = summarize(recs)
    assert s["counts"]["neutral"] == 3
    assert all(v == 0 for k, v in s["counts"].items() if k != "neutral")
    assert s["backfire_region"] is None and s["mutualism_region"] is None
    with pytest.raises(ValueError):
        summarize([])

"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line (shown even without
``-s``) and asserts the same condition.  Tolerances and time budgets are pinned
here.  Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import math
import time

import numpy as np
import pytest

from safetyreg.analysis import UtilityPoint, pareto_hull
from safetyreg.bargaining import CRITERIA, bargained_sweeps
from safetyreg.csvio import sweep_csv_text
from safetyreg.game import (
    CostMatrix,
    GameParams,
    Regulation,
    Strategy,
    cost_d,
    cost_g,
    is_positive_definite,
    revenue,
    utilities,
)
from safetyreg.oracle import GridSpec, oracle_spe
from safetyreg.probes import (
    check_against_oracle,
    oracle_check_batch,
    probe_batch,
    sample_game,
    sample_valid_game,
    theorem2_probe,
)
from safetyreg.solver import solve_spe, solve_unregulated
from safetyreg.sweep import SweepGrid, find_backfire_onset, run_sweep

from test_analysis import _hull_oracle

TOL_SAFETY = 1e-9
TOL_ONSET = 1e-6
TOL_DELTA_U = 1e-6
TOL_SUM = 1e-6
BUDGET_SOLVE_S = 1e-3
BUDGET_LINE_S = 1.0
BUDGET_PROBE_S = 30.0
BUDGET_BARGAIN_S = 60.0
BUDGET_ORACLE_S = 300.0
SEED = 42


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail
    return emit


@pytest.fixture(scope="module")
def bargained_4():
    t = time.perf_counter()
    bs = bargained_sweeps(GameParams.canonical(), SweepGrid.bargaining(), workers=4)
    return bs, time.perf_counter() - t


def test_criterion_1_unregulated_canonical(report):
    p = GameParams.canonical()
    out = solve_spe(p, Regulation(0.0, 0.0))
    times = []
    for _ in range(200):
        t = time.perf_counter()
        solve_spe(p, Regulation(0.0, 0.0))
        times.append(time.perf_counter() - t)
    runtime = min(times)
    ok = (abs(out.gamma1.beta - 0.5) <= TOL_SAFETY
          and abs(out.gamma0.alpha - 0.25) <= TOL_SAFETY and abs(out.gamma0.beta - 0.25) <= TOL_SAFETY
          and abs(out.gamma1.alpha - 0.5) <= TOL_SAFETY
          and runtime < BUDGET_SOLVE_S)
    report(1, ok, f"beta1={out.gamma1.beta:.12g} gamma0=({out.gamma0.alpha:.6g},{out.gamma0.beta:.6g}) "
                  f"gamma1=({out.gamma1.alpha:.6g},{out.gamma1.beta:.6g}) runtime={runtime * 1e3:.3f}ms")


def test_criterion_2_backfire_reproduction(report):
    p = GameParams.canonical()
    t = time.perf_counter()
    recs = run_sweep(p, SweepGrid.safety_line())
    elapsed = time.perf_counter() - t
    tds = [r.regulation.theta_d for r in recs]
    expected = {td for td in tds if 0.375 < td < 0.5}
    got = {r.regulation.theta_d for r in recs if r.backfire}
    onset, _ = find_backfire_onset(p)
    grid = GridSpec(2.0, 0.005)
    oracle_below = oracle_spe(p, Regulation(0.0, 0.37), grid).gamma1.beta
    oracle_above = oracle_spe(p, Regulation(0.0, 0.38), grid).gamma1.beta
    oracle_ok = abs(oracle_below - 0.5) <= 1e-9 and abs(oracle_above - 0.38) <= 1e-9
    ok = (len(recs) == 501 and got == expected and not any(td >= 0.5 for td in got)
          and abs(onset - 0.375) <= TOL_ONSET and oracle_ok and elapsed < BUDGET_LINE_S)
    report(2, ok, f"cells={len(recs)} backfire={len(got)} in [{min(got):.3f},{max(got):.3f}] "
                  f"onset={onset:.7f} oracle(0.37,0.38)->beta1=({oracle_below:.3f},{oracle_above:.3f}) "
                  f"sweep={elapsed:.3f}s")


def test_criterion_3_backfire_probe(report):
    t = time.perf_counter()
    batch = probe_batch(1, 1e-3, 100, SEED)
    elapsed = time.perf_counter() - t
    rng = np.random.default_rng(SEED)
    picks = rng.choice(len(batch.trials), size=5, replace=False)
    oracle_ok = []
    for k in picks:
        params, rep = batch.trials[int(k)]
        w = rep.witness
        chk = check_against_oracle(params, Regulation(w.theta_g, w.theta_d))
        oracle_ok.append(chk.passed and w.theta_d < rep.beta1_a)
    ok = batch.passed == 100 and elapsed < BUDGET_PROBE_S and all(oracle_ok)
    report(3, ok, f"passed={batch.passed}/100 time={elapsed:.2f}s oracle={sum(oracle_ok)}/5")


def test_criterion_4_mutualism_probe(report):
    t = time.perf_counter()
    batch = probe_batch(2, 1e-3, 100, SEED)
    elapsed = time.perf_counter() - t
    canon = theorem2_probe(GameParams.canonical(), 0.01)
    c = canon.checks[0]
    d_ug, d_ud = c.u_g - canon.u_g_a, c.u_d - canon.u_d_a
    ok = (batch.passed == 100 and elapsed < BUDGET_PROBE_S
          and abs(d_ug - 0.0049) <= TOL_DELTA_U and abs(d_ud - 0.0049) <= TOL_DELTA_U)
    report(4, ok, f"passed={batch.passed}/100 time={elapsed:.2f}s canonical dU=({d_ug:.7f},{d_ud:.7f})")


def test_criterion_5_bargaining_grid(report, bargained_4):
    bs, elapsed = bargained_4
    mutual = {c: sum(r.mutualism for r in bs.records[c]) for c in CRITERIA}
    ok = bs.solved_games == 49_686 and len(bs.raw) == 49_686 and all(v >= 1 for v in mutual.values()) \
        and elapsed < BUDGET_BARGAIN_S
    report(5, ok, f"games={bs.solved_games} mutualism={mutual} time={elapsed:.1f}s (4 workers)")


def test_criterion_6_aggregate_maximum(report, bargained_4):
    bs, _ = bargained_4
    recs = [r for r in bs.records["utilitarian"] if r.outcome is not None and not r.outcome.abstained]
    best = max(recs, key=lambda r: r.outcome.u_g + r.outcome.u_d)
    total = best.outcome.u_g + best.outcome.u_d
    tg, td = best.regulation.theta_g, best.regulation.theta_d
    ok = abs(tg - 0.5) <= 0.1 + 1e-12 and abs(td - 1.0) <= 0.05 + 1e-12 and abs(total - 0.875) <= TOL_SUM
    report(6, ok, f"argmax=({tg:g},{td:g}) delta={best.delta:g} sum={total:.9f}")


def test_criterion_7_oracle_equivalence(report):
    t = time.perf_counter()
    checks = oracle_check_batch(20, 2024, regulations=3, step=0.005)
    elapsed = time.perf_counter() - t
    passed = sum(c.passed for c in checks)
    worst = max((abs(c.comparison.du_g) / c.comparison.tol_u for c in checks if c.comparison), default=math.nan)
    ok = len(checks) == 60 and passed == 60 and elapsed < BUDGET_ORACLE_S
    report(7, ok, f"passed={passed}/{len(checks)} worst |du_g|/tol_u={worst:.3f} time={elapsed:.1f}s")


def _accounting(rng) -> bool:
    for _ in range(1000):
        p = sample_valid_game(rng)
        g0 = Strategy(*map(float, rng.uniform(0, 3, 2)))
        g1 = Strategy(g0.alpha + float(rng.uniform(0, 3)), g0.beta + float(rng.uniform(0, 3)))
        u_g, u_d = utilities(p, g0, g1)
        costs = cost_g(p, g0) + cost_d(p, g1, g0)
        rev = revenue(p, g1)
        if abs(u_g + u_d + costs - rev) > 1e-12 * max(1.0, abs(rev), costs):
            return False
    return True


def _pd(rng) -> bool:
    for _ in range(1000):
        aa, bb, ab = rng.uniform(-2, 2, 3)
        lam = np.linalg.eigvalsh(np.array([[aa, ab], [ab, bb]]))
        if is_positive_definite(CostMatrix(float(aa), float(bb), float(ab))) != bool(lam.min() > 0):
            return False
    return True


def _zero_threshold(rng) -> bool:
    for _ in range(500):
        p = sample_valid_game(rng)
        a, b = solve_spe(p, Regulation(0.0, 0.0)), solve_unregulated(p)
        if abs(a.u_g - b.u_g) > 1e-9 or abs(a.u_d - b.u_d) > 1e-9:
            return False
    return True


def _interior(rng) -> bool:
    for _ in range(500):
        o = solve_unregulated(sample_game(rng, 1))
        if not (o.gamma0.alpha > 0 and o.gamma0.beta > 0 and o.gamma1.alpha > o.gamma0.alpha
                and o.gamma1.beta > o.gamma0.beta):
            return False
    return True


def _no_backfire_above(records) -> bool:
    return not any(r.backfire and r.regulation.theta_d >= r.baseline.gamma1.beta for r in records)


def _hulls(rng) -> bool:
    for trial in range(10_000):
        n = int(rng.integers(1, 16))
        P = rng.integers(0, 6, size=(n, 2)).astype(float) if trial % 2 else rng.uniform(-1, 1, size=(n, 2))
        P = np.unique(P, axis=0)
        hull = pareto_hull([UtilityPoint(float(x), float(y)) for x, y in P])
        if {(h.u_g, h.u_d) for h in hull} != _hull_oracle(P, 1e-9 if trial % 2 else 1e-12):
            return False
    return True


def test_criterion_8_property_suites(report, bargained_4):
    rng = np.random.default_rng(SEED)
    line = run_sweep(GameParams.canonical(), SweepGrid.safety_line(theta_d_max=25.0))
    results = {
        "accounting": _accounting(rng),
        "pd": _pd(rng),
        "zero_threshold": _zero_threshold(rng),
        "interior": _interior(rng),
        "no_backfire_above_beta1": _no_backfire_above(line) and _no_backfire_above(bargained_4[0].raw)
        and all(_no_backfire_above(v) for v in bargained_4[0].records.values()),
        "hull": _hulls(rng),
    }
    ok = all(results.values())
    report(8, ok, " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in results.items()))


def test_criterion_9_determinism(report, bargained_4, canonical_bargained):
    t = time.perf_counter()
    eight = bargained_sweeps(GameParams.canonical(), SweepGrid.bargaining(), workers=8)
    elapsed = time.perf_counter() - t
    one = canonical_bargained
    same_raw = sweep_csv_text(one.raw) == sweep_csv_text(eight.raw) == sweep_csv_text(bargained_4[0].raw)
    same_bargained = all(sweep_csv_text(one.records[c]) == sweep_csv_text(eight.records[c]) for c in CRITERIA)
    ok = same_raw and same_bargained
    report(9, ok, f"raw CSV identical={same_raw} bargained CSVs identical={same_bargained} "
                  f"rows={len(one.raw)} (8-worker run {elapsed:.1f}s)")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))

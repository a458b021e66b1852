import math

import pytest

from safetyreg.bargaining import (
    CRITERIA,
    NO_VIABLE_BARGAIN,
    BargainSpec,
    bargain,
    bargained_sweep,
    bargained_sweeps,
    default_deltas,
    score,
    select,
)
from safetyreg.game import EquilibriumOutcome, GameParams, Regulation, Strategy
from safetyreg.solver import solve_spe
from safetyreg.sweep import SweepGrid


def _outcome(u_g, u_d):
    s = Strategy(0.0, 0.0)
    return EquilibriumOutcome(False, s, s, u_g, u_d, "x", "y")


def test_default_deltas():
    d = default_deltas()
    assert len(d) == 98 and d[0] == 0.01 and d[-1] == 0.98 and 0.5 in d


def test_spec_validation():
    with pytest.raises(ValueError):
        BargainSpec("median")
    with pytest.raises(ValueError):
        BargainSpec("nash", ())
    with pytest.raises(ValueError):
        BargainSpec("nash", (0.0, 0.5))
    with pytest.raises(ValueError):
        BargainSpec("nash", (0.5, 0.4))


def test_scores():
    o = _outcome(0.3, 0.2)
    assert score(o, "utilitarian") == pytest.approx(0.5)
    assert score(o, "nash") == pytest.approx(0.06)
    assert score(o, "egalitarian") == pytest.approx(0.2)
    assert score(_outcome(0.7, 0.0), "nash") == 0.0
    assert score(EquilibriumOutcome.abstain(), "utilitarian") == 0.0


def test_select_tie_break_prefers_half_then_smaller():
    outs = [_outcome(1.0, 1.0)] * 3
    assert select([0.4, 0.5, 0.6], outs, "utilitarian").delta == 0.5
    assert select([0.4, 0.6], outs[:2], "utilitarian").delta == 0.4


def test_all_abstained_is_not_viable():
    res = select([0.3, 0.6], [EquilibriumOutcome.abstain()] * 2, "nash")
    assert not res.viable and res.message == NO_VIABLE_BARGAIN


def test_utilitarian_argmax_is_exhaustive():
    p = GameParams.canonical()
    res = bargain(p, Regulation(0.0, 0.0), BargainSpec("utilitarian"))
    assert res.score == max(res.scores)
    assert res.score == pytest.approx(score(solve_spe(p.with_delta(res.delta), Regulation()), "utilitarian"))


def test_egalitarian_picks_crossing():
    p = GameParams.canonical()
    spec = BargainSpec("egalitarian")
    res = bargain(p, Regulation(0.0, 0.0), spec)
    diffs = []
    for d in spec.delta_values:
        o = solve_spe(p.with_delta(d), Regulation())
        diffs.append((d, o.u_g - o.u_d))
    crossing = next(d for (d, v), (_, w) in zip(diffs, diffs[1:]) if v <= 0 <= w or v >= 0 >= w)
    assert abs(res.delta - crossing) <= 0.01 + 1e-12


def test_scores_match_outcomes_in_bargained_sweep():
    p = GameParams.canonical()
    grid = SweepGrid(0.0, 0.5, 0.25, 0.0, 1.0, 0.25)
    deltas = [0.3, 0.4, 0.5, 0.6]
    bs = bargained_sweeps(p, grid, deltas=deltas)
    assert bs.solved_games == len(bs.raw) == len(bs.records["nash"]) * len(deltas)
    for c in CRITERIA:
        for r in bs.records[c]:
            assert r.score == pytest.approx(score(r.outcome, c), abs=1e-12)
        assert bs.baselines[c].delta in deltas
    single = bargained_sweep(p, grid, BargainSpec("nash", tuple(deltas)))
    assert single == bs.records["nash"]


def test_bargained_baseline_is_the_bargained_unregulated_game():
    p = GameParams.canonical()
    grid = SweepGrid(0.5, 0.5, 0.1, 1.0, 1.0, 0.1)
    recs = bargained_sweep(p, grid, BargainSpec("utilitarian"))
    base = bargain(p, Regulation(0.0, 0.0), BargainSpec("utilitarian"))
    assert recs[0].baseline == base.outcome
    assert recs[0].delta == 0.5 and recs[0].score == pytest.approx(0.875)
    assert recs[0].mutualism

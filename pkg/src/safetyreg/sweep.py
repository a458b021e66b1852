"""Regulation-grid sweeps, cell classification and backfire-onset search."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .game import EPS_FEAS, EquilibriumOutcome, GameParams, Regulation, interior_condition
from .solver import solve_spe

EPS_CLASS = 1e-6

CLASSES = ("abstain", "backfire", "mutualism", "safety_improving", "neutral", "mixed", "error")


@dataclass(frozen=True)
class SweepGrid:
    theta_g_min: float
    theta_g_max: float
    theta_g_step: float
    theta_d_min: float
    theta_d_max: float
    theta_d_step: float
    constrain_td_ge_tg: bool = True

    def __post_init__(self):
        if not (self.theta_g_step > 0 and self.theta_d_step > 0):
            raise ValueError("grid steps must be positive")
        for name in ("theta_g_min", "theta_g_max", "theta_d_min", "theta_d_max"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def is_empty(self) -> bool:
        return self.theta_g_max < self.theta_g_min or self.theta_d_max < self.theta_d_min

    @classmethod
    def bargaining(cls) -> SweepGrid:
        """13 x 51 grid, theta_G in [0, 1.2] by 0.1 and theta_D in [0, 2.5] by 0.05."""
        return cls(0.0, 1.2, 0.1, 0.0, 2.5, 0.05, True)

    @classmethod
    def safety_line(cls, theta_g: float = 0.0, theta_d_max: float = 2.5, step: float = 0.005) -> SweepGrid:
        return cls(theta_g, theta_g, 1.0, 0.0, theta_d_max, step, False)


def axis_values(lo: float, hi: float, step: float) -> list[float]:
    """Inclusive ``lo + i*step`` values up to ``hi + EPS_FEAS``.

    Values are rounded to 12 decimals so that nominal grid points such as 0.45 are
    represented exactly rather than as accumulated float error.
    """
    if hi < lo:
        return []
    count = int(math.floor((hi - lo + EPS_FEAS) / step)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


def enumerate_grid(grid: SweepGrid) -> list[Regulation]:
    """Row-major cells: theta_G outer ascending, theta_D inner ascending."""
    tds = axis_values(grid.theta_d_min, grid.theta_d_max, grid.theta_d_step)
    cells = []
    for tg in axis_values(grid.theta_g_min, grid.theta_g_max, grid.theta_g_step):
        for td in tds:
            if grid.constrain_td_ge_tg and td < tg - EPS_FEAS:
                continue
            cells.append(Regulation(tg, td))
    return cells


@dataclass(frozen=True)
class Classification:
    label: str
    backfire: bool
    mutualism: bool
    abstain: bool
    d_safety: float
    d_ug: float
    d_ud: float


def classify(outcome: EquilibriumOutcome, baseline: EquilibriumOutcome, eps: float = EPS_CLASS) -> Classification:
    """Flags of one outcome against its unregulated baseline.

    Primary label priority is abstain, backfire, mutualism, safety_improving, then
    neutral (nothing moved) or mixed (utilities moved without a mutual gain).
    """
    d_safety = outcome.gamma1.beta - baseline.gamma1.beta
    d_ug = outcome.u_g - baseline.u_g
    d_ud = outcome.u_d - baseline.u_d
    abstain = outcome.abstained
    backfire = not abstain and outcome.gamma1.beta < baseline.gamma1.beta - eps
    mutualism = not abstain and outcome.u_g > baseline.u_g + eps and outcome.u_d > baseline.u_d + eps
    if abstain:
        label = "abstain"
    elif backfire:
        label = "backfire"
    elif mutualism:
        label = "mutualism"
    elif d_safety > eps:
        label = "safety_improving"
    elif abs(d_ug) <= eps and abs(d_ud) <= eps:
        label = "neutral"
    else:
        label = "mixed"
    return Classification(label, backfire, mutualism, abstain, d_safety, d_ug, d_ud)


@dataclass(frozen=True)
class SweepRecord:
    regulation: Regulation
    delta: float
    outcome: EquilibriumOutcome | None
    baseline: EquilibriumOutcome
    classification: str
    backfire: bool
    mutualism: bool
    d_safety: float
    d_ug: float
    d_ud: float
    score: float | None = None
    error: str | None = None

    @property
    def abstain(self) -> bool:
        return self.outcome is not None and self.outcome.abstained


def make_record(reg: Regulation, delta: float, outcome: EquilibriumOutcome | None,
                baseline: EquilibriumOutcome, score: float | None = None,
                error: str | None = None) -> SweepRecord:
    if outcome is None:
        nan = math.nan
        return SweepRecord(reg, delta, None, baseline, "error", False, False, nan, nan, nan, score, error)
    c = classify(outcome, baseline)
    return SweepRecord(reg, delta, outcome, baseline, c.label, c.backfire, c.mutualism,
                       c.d_safety, c.d_ug, c.d_ud, score, error)


def _solve_task(task) -> tuple[EquilibriumOutcome | None, str | None]:
    params, reg = task
    try:
        return solve_spe(params, reg), None
    except (ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def parallel_map(fn: Callable, tasks: Sequence, workers: int = 1, chunksize: int | None = None) -> list:
    """``[fn(t) for t in tasks]``, optionally on a process pool; order is preserved."""
    if workers <= 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    if chunksize is None:
        chunksize = max(1, len(tasks) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=chunksize))


def run_sweep(params: GameParams, grid: SweepGrid, deltas: Iterable[float] | None = None,
              workers: int = 1) -> list[SweepRecord]:
    """One record per (delta, cell), delta ascending then grid order.

    The unregulated baseline is solved once per delta.  Solver errors are stored in
    the record instead of aborting the sweep.
    """
    deltas = sorted(set(deltas)) if deltas is not None else [params.delta]
    cells = enumerate_grid(grid)
    tasks = [(params.with_delta(d), reg) for d in deltas for reg in cells]
    results = parallel_map(_solve_task, tasks, workers)
    baselines = {d: solve_spe(params.with_delta(d), Regulation(0.0, 0.0)) for d in deltas}
    records = []
    for (p, reg), (outcome, err) in zip(tasks, results):
        records.append(make_record(reg, p.delta, outcome, baselines[p.delta], error=err))
    return records


class NoBackfireOnset(ValueError):
    def __init__(self, msg: str = "no backfire onset in range"):
        super().__init__(msg)


def find_backfire_onset(params: GameParams, theta_g: float = 0.0, tol: float = 1e-6,
                        coarse: int = 200) -> tuple[float, tuple[SweepRecord, SweepRecord]]:
    """Smallest theta_D below the unregulated final safety at which G abandons its
    unregulated candidate.

    Requires the interior condition for both players.  A coarse scan of
    ``(0, beta1)`` brackets the first switch, then bisection narrows
    it to ``tol``.  Returns the onset and the records just below and above it.
    """
    if not (interior_condition(params, "G") and interior_condition(params, "D")):
        raise NoBackfireOnset("interior condition fails for a player; no onset searched")
    base = solve_spe(params, Regulation(0.0, 0.0))
    if base.abstained or base.gamma1.beta <= tol:
        raise NoBackfireOnset()
    top = base.gamma1.beta

    def switched(td: float) -> tuple[bool, EquilibriumOutcome]:
        o = solve_spe(params, Regulation(theta_g, td))
        return o.g_candidate != base.g_candidate, o

    lo = 0.0
    hi = None
    pts = [top * k / coarse for k in range(1, coarse)]
    # narrow switch regions hug the unregulated safety from below
    pts += [top - top * 10.0 ** -e for e in range(3, 7)]
    for td in pts:
        flag, _ = switched(td)
        if flag:
            hi = td
            break
        lo = td
    if hi is None:
        raise NoBackfireOnset()
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if switched(mid)[0]:
            hi = mid
        else:
            lo = mid
    below = make_record(Regulation(theta_g, lo), params.delta, switched(lo)[1], base)
    above = make_record(Regulation(theta_g, hi), params.delta, switched(hi)[1], base)
    return 0.5 * (lo + hi), (below, above)

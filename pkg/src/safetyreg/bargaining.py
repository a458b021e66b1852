"""Choice of the revenue share delta by utilitarian, Nash or egalitarian bargaining."""

from __future__ import annotations

from dataclasses import dataclass, field

from .game import EquilibriumOutcome, GameParams, Regulation
from .solver import solve_spe
from .sweep import SweepGrid, SweepRecord, enumerate_grid, make_record, parallel_map

CRITERIA = ("utilitarian", "nash", "egalitarian")
NO_VIABLE_BARGAIN = "no viable bargain"


def default_deltas() -> list[float]:
    """98 shares 0.01, 0.02, ..., 0.98 (step 0.01, so 0.5 is on the grid)."""
    return [round(0.01 * k, 2) for k in range(1, 99)]


@dataclass(frozen=True)
class BargainSpec:
    criterion: str = "utilitarian"
    delta_values: tuple[float, ...] = field(default_factory=lambda: tuple(default_deltas()))

    def __post_init__(self):
        if self.criterion not in CRITERIA:
            raise ValueError(f"unknown criterion {self.criterion!r}; expected one of {', '.join(CRITERIA)}")
        d = self.delta_values
        if not d:
            raise ValueError("delta_values must be nonempty")
        if any(not 0.0 < x < 1.0 for x in d):
            raise ValueError("every delta must lie in (0, 1)")
        if any(b <= a for a, b in zip(d, d[1:])):
            raise ValueError("delta_values must be strictly increasing")


def score(outcome: EquilibriumOutcome, criterion: str) -> float:
    if outcome.abstained:
        return 0.0
    if criterion == "utilitarian":
        return outcome.u_g + outcome.u_d
    if criterion == "nash":
        return outcome.u_g * outcome.u_d
    if criterion == "egalitarian":
        return min(outcome.u_g, outcome.u_d)
    raise ValueError(f"unknown criterion {criterion!r}")


@dataclass
class BargainResult:
    delta: float
    outcome: EquilibriumOutcome
    score: float
    scores: list[float]
    viable: bool = True

    @property
    def message(self) -> str:
        return "" if self.viable else NO_VIABLE_BARGAIN


def select(deltas, outcomes, criterion: str) -> BargainResult:
    """Argmax over the delta grid; ties go to the delta closest to 0.5, then the smaller."""
    scores = [score(o, criterion) for o in outcomes]
    if all(o.abstained for o in outcomes):
        return BargainResult(deltas[0], EquilibriumOutcome.abstain(), 0.0, scores, False)
    best = None
    for i, (d, s) in enumerate(zip(deltas, scores)):
        if outcomes[i].abstained:
            continue
        key = (s, -abs(d - 0.5), -d)
        if best is None or key > best[0]:
            best = (key, i)
    i = best[1]
    return BargainResult(deltas[i], outcomes[i], scores[i], scores)


def bargain(params: GameParams, reg: Regulation, spec: BargainSpec) -> BargainResult:
    """Solve the game at every delta of ``spec`` and keep the best-scoring one."""
    deltas = list(spec.delta_values)
    outcomes = [solve_spe(params.with_delta(d), reg) for d in deltas]
    return select(deltas, outcomes, spec.criterion)


def _solve_cell(task) -> list[EquilibriumOutcome]:
    params, reg, deltas = task
    return [solve_spe(params.with_delta(d), reg) for d in deltas]


@dataclass
class BargainedSweep:
    records: dict[str, list[SweepRecord]]
    solved_games: int
    baselines: dict[str, BargainResult]
    raw: list[SweepRecord]  # every (delta, cell) game, delta ascending then grid order


def bargained_sweeps(params: GameParams, grid: SweepGrid, criteria=CRITERIA,
                     deltas=None, workers: int = 1) -> BargainedSweep:
    """Bargained sweep for several criteria sharing the same per-(cell, delta) solves.

    Each cell's record carries the bargained delta and outcome; the baseline is the
    bargained unregulated game under the same criterion.  ``raw`` holds every solved
    game against the unregulated game at the same delta, as ``run_sweep`` would.
    """
    deltas = list(deltas) if deltas is not None else default_deltas()
    BargainSpec(criteria[0] if criteria else "utilitarian", tuple(deltas))  # validates the delta list
    for c in criteria:
        if c not in CRITERIA:
            raise ValueError(f"unknown criterion {c!r}")
    cells = enumerate_grid(grid)
    per_cell = parallel_map(_solve_cell, [(params, reg, deltas) for reg in cells], workers, chunksize=4)
    base_outcomes = _solve_cell((params, Regulation(0.0, 0.0), deltas))
    out: dict[str, list[SweepRecord]] = {}
    bases = {}
    for c in criteria:
        base = select(deltas, base_outcomes, c)
        bases[c] = base
        recs = []
        for reg, outcomes in zip(cells, per_cell):
            res = select(deltas, outcomes, c)
            recs.append(make_record(reg, res.delta, res.outcome, base.outcome, score=res.score,
                                    error=None if res.viable else NO_VIABLE_BARGAIN))
        out[c] = recs
    order = sorted(range(len(deltas)), key=lambda k: deltas[k])
    raw = [make_record(reg, deltas[k], outcomes[k], base_outcomes[k])
           for k in order for reg, outcomes in zip(cells, per_cell)]
    return BargainedSweep(out, len(cells) * len(deltas), bases, raw)


def bargained_sweep(params: GameParams, grid: SweepGrid, spec: BargainSpec, workers: int = 1) -> list[SweepRecord]:
    return bargained_sweeps(params, grid, (spec.criterion,), spec.delta_values, workers).records[spec.criterion]

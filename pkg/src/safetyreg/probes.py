"""Numerical probes of two claims about the game, plus seeded samplers for random
games that satisfy their hypotheses.  Probe 1: a floor on D alone, set just below the
unregulated final safety, can lower final safety (backfiring).  Probe 2: floors just
above the unregulated strategies raise both utilities (mutualism).

Sampling distributions (fixed so that batches are reproducible):

* ``c_aa, c_bb ~ U[0.5, 2]`` independently for each player
* ``r_a, r_b ~ U[0.5, 2]``
* ``delta ~ U[0.2, 0.8]``
* backfiring: ``c_ab ~ U(-0.9*sqrt(c_aa*c_bb), 0.9*bound)``
* mutualism: ``c_ab ~ U(-0.9*bound, 0.9*bound)``
* oracle cross-checks: ``c_ab ~ U(-0.9, 0.9) * sqrt(c_aa*c_bb)``, any valid game

where ``bound`` is the interior-condition bound of that player's matrix.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .game import (
    CostMatrix,
    EquilibriumOutcome,
    GameParams,
    Regulation,
    _interaction_bound,
    interior_condition,
    two_sided_condition,
)
from .oracle import Comparison, GridCapExceeded, GridSpec, compare, oracle_spe
from .solver import solve_spe, solve_unregulated
from .sweep import EPS_CLASS, classify

HYPOTHESIS_NOT_MET = "hypothesis not met"


@dataclass
class ProbeCheck:
    theta_g: float
    theta_d: float
    beta1: float
    u_g: float
    u_d: float
    g_candidate: str
    backfire: bool
    mutualism: bool


@dataclass
class ProbeReport:
    theorem: int
    epsilon: float
    hypothesis_met: bool
    passed: bool
    message: str = ""
    beta0_a: float = math.nan
    beta1_a: float = math.nan
    u_g_a: float = math.nan
    u_d_a: float = math.nan
    checks: list[ProbeCheck] = field(default_factory=list)
    degenerate: bool = False

    @property
    def witness(self) -> ProbeCheck | None:
        """First check that exhibits the probed effect (backfire for 1, mutualism for 2)."""
        for c in self.checks:
            if (self.theorem == 1 and c.backfire) or (self.theorem == 2 and c.mutualism):
                return c
        return None

    def as_dict(self) -> dict:
        return asdict(self)


def _check(reg: Regulation, out: EquilibriumOutcome, base: EquilibriumOutcome) -> ProbeCheck:
    c = classify(out, base)
    return ProbeCheck(reg.theta_g, reg.theta_d, out.gamma1.beta, out.u_g, out.u_d,
                      out.g_candidate, c.backfire, c.mutualism)


def theorem1_probe(params: GameParams, epsilon: float, min_gap: float = 1e-5) -> ProbeReport:
    """Look for a backfiring regulation ``(0, theta_D)`` with ``theta_D`` below the
    unregulated final safety.

    Evaluates ``theta_D = beta0^A - eps`` and ``beta1^A - eps`` first, then scans
    downward from ``beta1^A`` at resolution ``eps`` and, when nothing backfires,
    probes geometrically closer to ``beta1^A`` (down to ``min_gap``).  Stops at the
    first backfiring cell.
    """
    report = ProbeReport(1, epsilon, False, False)
    try:
        ok = interior_condition(params, "G") and interior_condition(params, "D")
    except ValueError:
        ok = False
    if not ok:
        report.message = HYPOTHESIS_NOT_MET
        return report
    report.hypothesis_met = True
    base = solve_unregulated(params)
    report.beta0_a, report.beta1_a = base.gamma0.beta, base.gamma1.beta
    report.u_g_a, report.u_d_a = base.u_g, base.u_d
    top = base.gamma1.beta
    if not epsilon > 0:
        report.degenerate = True
        report.message = "epsilon must be positive"
        return report

    def probe(td: float) -> bool:
        reg = Regulation(0.0, td)
        c = _check(reg, solve_spe(params, reg), base)
        report.checks.append(c)
        return c.backfire

    tried = set()
    order = [base.gamma0.beta - epsilon, top - epsilon]
    n = int(math.floor(top / epsilon))
    order += [top - k * epsilon for k in range(2, n + 1)]
    gap = epsilon / 10.0
    while gap >= min_gap:
        order.append(top - gap)
        gap /= 10.0
    for td in order:
        if not 0.0 < td < top or round(td, 15) in tried:
            continue
        tried.add(round(td, 15))
        if probe(td):
            report.passed = True
            report.message = f"backfires at theta_D={td:.6g}"
            return report
    report.message = "no backfiring regulation found below beta1^A"
    return report


def theorem2_probe(params: GameParams, epsilon: float) -> ProbeReport:
    """Check that ``(beta0^A + eps, beta1^A + 2 eps)`` strictly improves both players."""
    report = ProbeReport(2, epsilon, False, False)
    try:
        ok = two_sided_condition(params)
    except ValueError:
        ok = False
    if not ok:
        report.message = HYPOTHESIS_NOT_MET
        return report
    report.hypothesis_met = True
    base = solve_unregulated(params)
    report.beta0_a, report.beta1_a = base.gamma0.beta, base.gamma1.beta
    report.u_g_a, report.u_d_a = base.u_g, base.u_d
    reg = Regulation(base.gamma0.beta + epsilon, base.gamma1.beta + 2.0 * epsilon)
    check = _check(reg, solve_spe(params, reg), base)
    report.checks.append(check)
    if epsilon == 0:
        report.degenerate = True
        report.message = "degenerate: epsilon = 0 reproduces the unregulated optimum"
        return report
    report.passed = check.mutualism
    report.message = (f"d_u_g={check.u_g - base.u_g:.6g}, d_u_d={check.u_d - base.u_d:.6g}"
                      + ("" if check.mutualism else f" (needs > {EPS_CLASS:g} each)"))
    return report


def _uniform(rng: np.random.Generator, lo: float, hi: float) -> float:
    return float(rng.uniform(lo, hi))


def _sample_matrix(rng: np.random.Generator, r_a: float, r_b: float, two_sided: bool) -> CostMatrix:
    aa, bb = _uniform(rng, 0.5, 2.0), _uniform(rng, 0.5, 2.0)
    bound = _interaction_bound(CostMatrix(aa, bb), r_a, r_b)
    lo = -0.9 * bound if two_sided else -0.9 * math.sqrt(aa * bb)
    return CostMatrix(aa, bb, _uniform(rng, lo, 0.9 * bound))


def sample_game(rng: np.random.Generator, theorem: int) -> GameParams:
    """One random game satisfying the hypothesis of probe 1 or probe 2."""
    if theorem not in (1, 2):
        raise ValueError("theorem must be 1 or 2")
    r_a, r_b = _uniform(rng, 0.5, 2.0), _uniform(rng, 0.5, 2.0)
    delta = _uniform(rng, 0.2, 0.8)
    c0 = _sample_matrix(rng, r_a, r_b, theorem == 2)
    c1 = _sample_matrix(rng, r_a, r_b, theorem == 2)
    return GameParams(c0, c1, r_a, r_b, delta)


@dataclass
class BatchReport:
    theorem: int
    epsilon: float
    seed: int
    trials: list[tuple[GameParams, ProbeReport]]

    @property
    def passed(self) -> int:
        return sum(r.passed for _, r in self.trials)

    @property
    def all_passed(self) -> bool:
        return self.passed == len(self.trials)


def probe_batch(theorem: int, epsilon: float, trials: int, seed: int) -> BatchReport:
    """Run a probe on ``trials`` seeded random games.

    ``epsilon`` is relative: each game uses ``epsilon * beta1^A`` of that game.
    """
    rng = np.random.default_rng(seed)
    fn = theorem1_probe if theorem == 1 else theorem2_probe
    out = []
    for _ in range(trials):
        params = sample_game(rng, theorem)
        eps = epsilon * solve_unregulated(params).gamma1.beta
        out.append((params, fn(params, eps)))
    return BatchReport(theorem, epsilon, seed, out)


def sample_valid_game(rng: np.random.Generator) -> GameParams:
    """Random game with positive definite costs and no further hypothesis."""
    mats = []
    for _ in range(2):
        aa, bb = _uniform(rng, 0.5, 2.0), _uniform(rng, 0.5, 2.0)
        mats.append(CostMatrix(aa, bb, _uniform(rng, -0.9, 0.9) * math.sqrt(aa * bb)))
    r_a, r_b = _uniform(rng, 0.5, 2.0), _uniform(rng, 0.5, 2.0)
    return GameParams(mats[0], mats[1], r_a, r_b, _uniform(rng, 0.2, 0.8))


def sample_regulation(rng: np.random.Generator, params: GameParams) -> Regulation:
    """``theta_G ~ U[0, s]``, ``theta_D ~ U[theta_G, 1.5 s]`` with ``s`` the largest
    unregulated final coordinate."""
    base = solve_unregulated(params)
    scale = max(base.gamma1.alpha, base.gamma1.beta)
    tg = _uniform(rng, 0.0, scale)
    return Regulation(tg, _uniform(rng, tg, 1.5 * scale))


ORACLE_CHECK_CAP = 16_000_000


def oracle_box(params: GameParams, reg: Regulation, step: float, factor: float = 2.0) -> GridSpec:
    """Search box ``factor * (largest unregulated coordinate + largest threshold)``."""
    base = solve_unregulated(params)
    largest = max(base.gamma1.alpha, base.gamma1.beta)
    gamma_max = math.ceil(factor * (largest + max(reg.theta_g, reg.theta_d)) / step - 1e-9) * step
    return GridSpec(max(step, gamma_max), step, ORACLE_CHECK_CAP)


@dataclass
class OracleCheck:
    params: GameParams
    regulation: Regulation
    analytic: EquilibriumOutcome
    oracle: EquilibriumOutcome | None
    grid: GridSpec
    comparison: Comparison | None
    error: str | None = None  # set when the oracle could not run, e.g. grid over the cap

    @property
    def passed(self) -> bool:
        return self.comparison is not None and self.comparison.passed

    @property
    def on_box_edge(self) -> bool:
        """True when the oracle optimum touches the box, i.e. the box may be too small."""
        if self.oracle is None:
            return False
        g1 = self.oracle.gamma1
        return max(g1.alpha, g1.beta) >= self.grid.gamma_max - self.grid.step


def check_against_oracle(params: GameParams, reg: Regulation, step: float = 0.005,
                         grid: GridSpec | None = None) -> OracleCheck:
    grid = grid or oracle_box(params, reg, step)
    analytic = solve_spe(params, reg)
    try:
        oracle = oracle_spe(params, reg, grid)
    except GridCapExceeded as exc:
        return OracleCheck(params, reg, analytic, None, grid, None, str(exc))
    return OracleCheck(params, reg, analytic, oracle, grid, compare(params, analytic, oracle, grid))


def oracle_check_batch(trials: int, seed: int, regulations: int = 3, step: float = 0.005) -> list[OracleCheck]:
    """Seeded random games, each solved under several random regulations by both
    the analytic solver and the grid oracle."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(trials):
        params = sample_valid_game(rng)
        for _ in range(regulations):
            out.append(check_against_oracle(params, sample_regulation(rng, params), step))
    return out

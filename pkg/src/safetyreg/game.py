"""Domain types and payoff evaluation for the two-player safety-regulation game.

The generalist G moves first and brings the technology to ``gamma0 = (alpha0, beta0)``;
the specialist D then builds on it to ``gamma1 >= gamma0``.  Revenue ``r . gamma1`` is
split ``delta`` / ``1 - delta``; costs are quadratic forms in G's investment and in D's
increment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

EPS_FEAS = 1e-9


@dataclass(frozen=True, slots=True)
class CostMatrix:
    """Symmetric 2x2 cost matrix ``[[c_aa, c_ab], [c_ab, c_bb]]``."""

    c_aa: float
    c_bb: float
    c_ab: float = 0.0

    def quad(self, x: float, y: float) -> float:
        return self.c_aa * x * x + 2.0 * self.c_ab * x * y + self.c_bb * y * y

    @property
    def det(self) -> float:
        return self.c_aa * self.c_bb - self.c_ab * self.c_ab

    @property
    def trace(self) -> float:
        return self.c_aa + self.c_bb

    def solve(self, x: float, y: float) -> tuple[float, float] | None:
        """Return ``C^-1 (x, y)``, or None when the matrix is singular."""
        d = self.det
        if d == 0.0:
            return None
        return ((self.c_bb * x - self.c_ab * y) / d, (self.c_aa * y - self.c_ab * x) / d)

    @classmethod
    def identity(cls) -> CostMatrix:
        return cls(1.0, 1.0, 0.0)


@dataclass(frozen=True, slots=True)
class GameParams:
    c0: CostMatrix
    c1: CostMatrix
    r_a: float
    r_b: float
    delta: float

    def with_delta(self, delta: float) -> GameParams:
        return replace(self, delta=delta)

    @classmethod
    def canonical(cls, delta: float = 0.5) -> GameParams:
        """Separable game with identity costs and equal revenue weights."""
        return cls(CostMatrix.identity(), CostMatrix.identity(), 1.0, 1.0, delta)


@dataclass(frozen=True, slots=True)
class Strategy:
    alpha: float
    beta: float

    def __iter__(self):
        yield self.alpha
        yield self.beta


@dataclass(frozen=True, slots=True)
class Regulation:
    theta_g: float = 0.0
    theta_d: float = 0.0


NO_REGULATION = Regulation(0.0, 0.0)


@dataclass(frozen=True, slots=True)
class EquilibriumOutcome:
    abstained: bool
    gamma0: Strategy
    gamma1: Strategy
    u_g: float
    u_d: float
    g_candidate: str
    d_candidate: str

    @property
    def safety(self) -> float:
        return self.gamma1.beta

    @classmethod
    def abstain(cls) -> EquilibriumOutcome:
        zero = Strategy(0.0, 0.0)
        return cls(True, zero, zero, 0.0, 0.0, "abstain", "abstain")


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _check_matrix(name: str, c: CostMatrix, report: ValidationReport) -> None:
    for attr in ("c_aa", "c_bb", "c_ab"):
        if not math.isfinite(getattr(c, attr)):
            report.violations.append(f"{name}.{attr} must be finite")
            return
    if c.c_aa < 0:
        report.violations.append(f"{name}: c_aa >= 0")
    if c.c_bb < 0:
        report.violations.append(f"{name}: c_bb >= 0")
    if c.c_aa >= 0 and c.c_bb >= 0:
        if not c.c_ab > -math.sqrt(c.c_aa * c.c_bb):
            report.violations.append(f"{name}: c_ab > -sqrt(c_aa*c_bb)")
        if c.c_aa == 0 or c.c_bb == 0:
            report.warnings.append(f"{name}: zero diagonal entry; the solvers need c_aa, c_bb > 0")


def validate(params: GameParams) -> ValidationReport:
    """Collect every violated invariant of ``params``; never raises."""
    report = ValidationReport()
    _check_matrix("c0", params.c0, report)
    _check_matrix("c1", params.c1, report)
    for name in ("r_a", "r_b"):
        v = getattr(params, name)
        if not (math.isfinite(v) and v >= 0):
            report.violations.append(f"{name} >= 0")
        elif v == 0:
            report.warnings.append(f"{name} = 0: ratio conditions use limit semantics")
    if not (math.isfinite(params.delta) and 0.0 <= params.delta <= 1.0):
        report.violations.append("delta in [0,1]")
    return report


def require_solvable(params: GameParams) -> None:
    report = validate(params)
    if not report.ok:
        raise ValueError("invalid game parameters: " + "; ".join(report.violations))
    for c in (params.c0, params.c1):
        if c.c_aa <= 0 or c.c_bb <= 0:
            raise ValueError("solvers require strictly positive diagonal cost entries")


def cost_g(params: GameParams, g0: Strategy) -> float:
    return params.c0.quad(g0.alpha, g0.beta)


def cost_d(params: GameParams, g1: Strategy, g0: Strategy) -> float:
    return params.c1.quad(g1.alpha - g0.alpha, g1.beta - g0.beta)


def revenue(params: GameParams, g1: Strategy) -> float:
    return params.r_a * g1.alpha + params.r_b * g1.beta


def utilities(params: GameParams, g0: Strategy, g1: Strategy) -> tuple[float, float]:
    rev = revenue(params, g1)
    u_g = params.delta * rev - cost_g(params, g0)
    u_d = (1.0 - params.delta) * rev - cost_d(params, g1, g0)
    return u_g, u_d


def is_positive_definite(c: CostMatrix) -> bool:
    # 2x2 symmetric: both eigenvalues positive iff trace > 0 and det > 0
    return c.trace > 0 and c.det > 0


def _interaction_bound(c: CostMatrix, r_a: float, r_b: float) -> float:
    if r_a == 0 and r_b == 0:
        raise ValueError("interior condition undefined when r_a = r_b = 0")
    bound = math.sqrt(c.c_aa * c.c_bb)
    if r_a > 0:
        bound = min(bound, c.c_aa * r_b / r_a)
    if r_b > 0:
        bound = min(bound, c.c_bb * r_a / r_b)
    return bound


def interior_condition(params: GameParams, player: str) -> bool:
    """Cost-geometry condition under which ``player`` ("G" or "D") invests in both
    attributes absent regulation.  False whenever delta is not strictly inside (0, 1).
    """
    c = _player_matrix(params, player)
    bound = _interaction_bound(c, params.r_a, params.r_b)
    if not 0.0 < params.delta < 1.0:
        return False
    return c.c_ab < bound


def two_sided_condition(params: GameParams) -> bool:
    """``|c_ab|`` below the interior bound for both players."""
    for c in (params.c0, params.c1):
        if not abs(c.c_ab) < _interaction_bound(c, params.r_a, params.r_b):
            return False
    return 0.0 < params.delta < 1.0


def _player_matrix(params: GameParams, player: str) -> CostMatrix:
    if player == "G":
        return params.c0
    if player == "D":
        return params.c1
    raise ValueError(f"player must be 'G' or 'D', got {player!r}")

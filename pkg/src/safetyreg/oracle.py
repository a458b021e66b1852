"""Brute-force grid solver used as independent ground truth for small instances."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .game import (
    EPS_FEAS,
    EquilibriumOutcome,
    GameParams,
    Regulation,
    Strategy,
    utilities,
)

DEFAULT_MAX_POINTS = 4_000_000
_QUANTUM = 1e-9  # utility resolution for tie-breaking on the grid


class GridCapExceeded(ValueError):
    def __init__(self, required: int, cap: int):
        super().__init__(f"grid needs {required} points per stage, cap is {cap}")
        self.required = required
        self.cap = cap


@dataclass(frozen=True)
class GridSpec:
    gamma_max: float
    step: float
    max_points: int = DEFAULT_MAX_POINTS

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("step must be positive")
        if not self.gamma_max >= self.step:
            raise ValueError("gamma_max must be at least one step")

    @property
    def n(self) -> int:
        return int(math.floor(self.gamma_max / self.step + 1e-9)) + 1

    def check_cap(self) -> None:
        if self.n * self.n > self.max_points:
            raise GridCapExceeded(self.n * self.n, self.max_points)

    def index_at_least(self, value: float) -> int:
        """Smallest grid index whose coordinate is >= value."""
        return max(0, int(math.ceil(value / self.step - 1e-9)))


def default_grid(params: GameParams, reg: Regulation, step: float = 0.005,
                 max_points: int = DEFAULT_MAX_POINTS) -> GridSpec:
    """Box four times the larger of the unregulated coordinates and the thresholds."""
    from .solver import solve_unregulated

    base = solve_unregulated(params)
    largest = max(base.gamma1.alpha, base.gamma1.beta)
    gamma_max = 4.0 * (largest + max(reg.theta_g, reg.theta_d))
    gamma_max = max(step, math.ceil(gamma_max / step - 1e-9) * step)
    return GridSpec(gamma_max, step, max_points)


def _quant(v: np.ndarray) -> np.ndarray:
    return np.floor(v / _QUANTUM + 0.5).astype(np.int64)


@dataclass(frozen=True)
class OracleResponse:
    gamma1: Strategy | None
    u_d: float
    abstained: bool
    note: str = ""


def _axis_from(floor: float, grid: GridSpec) -> np.ndarray:
    """Grid coordinates ``>= floor`` with ``floor`` itself prepended when off-grid."""
    coords = np.arange(grid.index_at_least(floor), grid.n) * grid.step
    if coords.size == 0 or coords[0] - floor > EPS_FEAS:
        coords = np.concatenate(([floor], coords))
    return coords


def oracle_best_response(params: GameParams, g0: Strategy, theta_d: float, grid: GridSpec) -> OracleResponse:
    """Exhaustive maximisation of U_D over grid points with ``gamma1 >= gamma0`` and
    ``beta1 >= theta_d``.  The lower bounds themselves are searched too when they fall
    between grid lines.  Ties prefer higher beta1, then higher alpha1.
    """
    grid.check_cap()
    if g0.alpha < 0 or g0.beta < 0 or g0.alpha > grid.gamma_max + EPS_FEAS or g0.beta > grid.gamma_max + EPS_FEAS:
        raise ValueError("g0 outside the grid box")
    floor = max(g0.beta, theta_d)
    if floor > grid.gamma_max + EPS_FEAS:
        return OracleResponse(None, 0.0, True, "floor exceeds grid")
    a1 = _axis_from(g0.alpha, grid)[:, None]
    b1 = _axis_from(floor, grid)[None, :]
    da, db = a1 - g0.alpha, b1 - g0.beta
    c = params.c1
    u = (1.0 - params.delta) * (params.r_a * a1 + params.r_b * b1) - (
        c.c_aa * da * da + 2.0 * c.c_ab * da * db + c.c_bb * db * db)
    q = _quant(u)
    mask = q == q.max()
    j = int(np.flatnonzero(mask.any(axis=0)).max())
    i = int(np.flatnonzero(mask[:, j]).max())
    best = float(u[i, j])
    if best < -EPS_FEAS:
        return OracleResponse(None, 0.0, True)
    return OracleResponse(Strategy(float(a1[i, 0]), float(b1[0, j])), best, False)


def _sliding_max(key: np.ndarray, width: int) -> np.ndarray:
    """Row-wise maximum over every window ``[s, s + width)`` (van Herk / Gil-Werman)."""
    rows, n = key.shape
    nblocks = -(-n // width)
    pad = np.full((rows, nblocks * width), np.iinfo(np.int64).min, dtype=np.int64)
    pad[:, :n] = key
    blocks = pad.reshape(rows, nblocks, width)
    fwd = np.maximum.accumulate(blocks, axis=2).reshape(rows, -1)
    bwd = np.maximum.accumulate(blocks[:, :, ::-1], axis=2)[:, :, ::-1].reshape(rows, -1)
    s = np.arange(n - width + 1)
    return np.maximum(bwd[:, s], fwd[:, s + width - 1])


class _ReplyTable:
    """D's best replies on the grid, shared by every gamma0 of the search.

    ``key[a, b]`` ranks D's gain from the increment ``(a*h, b*h)``.  For a gamma0 at alpha
    index ``i`` and beta0 the feasible increments are ``a <= n-1-i`` and, in beta, the
    grid steps between the shortfall ``m = theta_d - beta0`` and the top of the box,
    plus ``m`` itself when it falls between grid steps.  The best ``b`` per ``a``
    comes from a prefix maximum (floor slack) or a fixed-width window maximum (floor
    binding on an on-grid row); ties prefer the larger increment.
    """

    def __init__(self, params: GameParams, grid: GridSpec, theta_d: float):
        n, h = grid.n, grid.step
        self.params, self.grid, self.n, self.h = params, grid, n, h
        self.k = 1.0 - params.delta
        self.inc = np.arange(n) * h
        xa, xb = self.inc[:, None], self.inc[None, :]
        self.theta_d = theta_d
        self.td = grid.index_at_least(theta_d)
        self.key = _quant(self._gain(xa, xb)) * n + np.arange(n)[None, :]
        self.prefix = np.maximum.accumulate(self.key, axis=1)
        self.window = _sliding_max(self.key, n - self.td) if 0 < self.td < n else None

    def _gain(self, xa, xb):
        p, c = self.params, self.params.c1
        return self.k * (p.r_a * xa + p.r_b * xb) - (c.c_aa * xa * xa + 2.0 * c.c_ab * xa * xb + c.c_bb * xb * xb)

    def row(self, beta0: float, j: int | None):
        """Replies for every alpha index of the row at ``beta0`` (grid index ``j`` or
        None for an off-grid row).  Returns ``(gain, inc_a, inc_b)`` with ``inc_b`` in
        absolute units, or None when D cannot meet the floor inside the box."""
        n, h = self.n, self.h
        top = self.grid.gamma_max - beta0  # largest beta increment inside the box
        m = max(0.0, self.theta_d - beta0)
        if m > top + EPS_FEAS:
            return None
        hi = int(math.floor(top / h + 1e-9))
        lo = int(math.ceil(m / h - 1e-9))
        if j is not None and self.td > j and hi - lo + 1 == n - self.td:
            colkey = self.window[:, lo]
        elif lo == 0:
            colkey = self.prefix[:, hi]
        elif lo <= hi:
            colkey = self.key[:, lo:hi + 1].max(axis=1)
        else:
            colkey = None
        if colkey is not None:
            b_val = (colkey % n) * h
            q = colkey // n
        if colkey is None or lo * h - m > EPS_FEAS:
            # shortfall between grid steps: minimal compliance is its own column
            exact = self._gain(self.inc, m)
            qe = _quant(exact)
            if colkey is None:
                q, b_val = qe, np.full(n, m)
            else:
                take = qe > q
                q = np.where(take, qe, q)
                b_val = np.where(take, m, b_val)
        # running best over a <= A: gain, then larger b, then larger a
        order = np.lexsort((np.arange(n), b_val, q))
        rank = np.empty(n, dtype=np.int64)
        rank[order] = np.arange(n)
        a_best = order[np.maximum.accumulate(rank)]
        a_inc = a_best[::-1]
        b_inc = b_val[a_inc]
        return self._gain(self.inc[a_inc], b_inc), a_inc, b_inc


def oracle_spe(params: GameParams, reg: Regulation, grid: GridSpec) -> EquilibriumOutcome:
    """Two-stage exhaustive search: for every grid ``gamma0`` with ``beta0 >= theta_g``
    take D's grid best reply, score G (zero when D abstains) and keep the argmax.

    An off-grid ``theta_g`` adds the row ``beta0 = theta_g``; an off-grid shortfall adds
    D's minimal-compliance column, so optima sitting on a floor are representable.
    """
    grid.check_cap()
    h, n = grid.step, grid.n
    c0 = params.c0
    table = _ReplyTable(params, grid, reg.theta_d)
    alpha0 = table.inc
    j0 = grid.index_at_least(reg.theta_g)
    rows = [(reg.theta_g, None, -1)] if j0 * h - reg.theta_g > EPS_FEAS else []
    rows += [(j * h, j, j) for j in range(j0, n)]

    best_key, best = None, None
    for beta0, j, order in rows:
        reply = table.row(beta0, j)
        if reply is None:
            continue  # D abstains on the whole row
        gain, a_inc, b_inc = reply
        u_d = table.k * (params.r_a * alpha0 + params.r_b * beta0) + gain
        part = u_d >= -EPS_FEAS
        if not part.any():
            continue
        a1 = alpha0 + a_inc * h
        b1 = beta0 + b_inc
        u_g = params.delta * (params.r_a * a1 + params.r_b * b1) - (
            c0.c_aa * alpha0 * alpha0 + 2.0 * c0.c_ab * alpha0 * beta0 + c0.c_bb * beta0 * beta0)
        qg = np.where(part, _quant(np.where(part, u_g, 0.0)), np.iinfo(np.int64).min)
        top = qg.max()
        i = int(np.flatnonzero(qg == top).max())
        key = (int(top), order, i)  # utility, then higher beta0, then higher alpha0
        if best_key is None or key > best_key:
            best_key = key
            best = (alpha0[i], beta0, a1[i], b1[i], u_g[i])
    if best is None or best[4] < -EPS_FEAS:
        return EquilibriumOutcome.abstain()
    a0, b0, a1, b1, _ = best
    g0, g1 = Strategy(float(a0), float(b0)), Strategy(float(a1), float(b1))
    u_g, u_d = utilities(params, g0, g1)
    return EquilibriumOutcome(False, g0, g1, u_g, u_d, "grid", "grid")


@dataclass(frozen=True)
class Comparison:
    du_g: float
    du_d: float
    dist_gamma0: float
    dist_gamma1: float
    tol_u: float
    tol_strategy: float
    oracle_not_better: bool
    utilities_close: bool
    strategies_close: bool

    @property
    def passed(self) -> bool:
        return self.oracle_not_better and self.utilities_close

    def as_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["passed"] = self.passed
        return d


def utility_tolerance(params: GameParams, grid: GridSpec) -> float:
    biggest = max(abs(v) for c in (params.c0, params.c1) for v in (c.c_aa, c.c_bb, c.c_ab))
    return 5.0 * (1.0 + biggest + max(params.r_a, params.r_b)) * grid.step


def compare(params: GameParams, analytic: EquilibriumOutcome, oracle: EquilibriumOutcome,
            grid: GridSpec) -> Comparison:
    """Check the analytic equilibrium against the grid oracle.

    Passing requires the oracle not to beat the analytic utilities by more than the
    discretisation tolerance, and both utilities to agree within it.  Strategy
    distance is reported separately: equilibria can jump across near-ties.
    """
    if analytic is None or oracle is None:
        raise ValueError("both outcomes are required")
    tol_u = utility_tolerance(params, grid)
    tol_s = 2.0 * grid.step
    du_g = oracle.u_g - analytic.u_g
    du_d = oracle.u_d - analytic.u_d
    dist0 = math.hypot(oracle.gamma0.alpha - analytic.gamma0.alpha, oracle.gamma0.beta - analytic.gamma0.beta)
    dist1 = math.hypot(oracle.gamma1.alpha - analytic.gamma1.alpha, oracle.gamma1.beta - analytic.gamma1.beta)
    return Comparison(
        du_g=du_g,
        du_d=du_d,
        dist_gamma0=dist0,
        dist_gamma1=dist1,
        tol_u=tol_u,
        tol_strategy=tol_s,
        oracle_not_better=du_g <= tol_u,
        utilities_close=abs(du_g) <= tol_u and abs(du_d) <= tol_u,
        strategies_close=dist0 <= tol_s and dist1 <= tol_s,
    )

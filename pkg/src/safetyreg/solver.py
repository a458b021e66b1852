"""Closed-form subgame-perfect equilibria by candidate enumeration.

D's best response to ``gamma0`` depends on ``gamma0`` only through the shortfall
``m = max(0, theta_d - beta0)``: D picks an increment ``x(m)`` among four KKT
candidates, each affine in ``m``.  G's value function is therefore piecewise
quadratic over horizontal strips of ``beta0``.  Inside each strip G maximises a
quadratic subject to ``alpha0 >= 0``, the strip bounds, ``beta0 >= theta_g`` and D's
participation ``U_D >= 0`` (a conic); every KKT point of that problem is generated and
scored through the exact composed value function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .game import (
    EPS_FEAS,
    EquilibriumOutcome,
    GameParams,
    NO_REGULATION,
    Regulation,
    Strategy,
    require_solvable,
)
from .polynomial import (
    Conic,
    Polynomial,
    affine_product,
    conic_sub,
    real_roots,
    resultant_in_x,
    solve_quadratic,
)

EPS_CURVE = 1e-7
EPS_TIE = 1e-9
CURVE_SAMPLES = 10_000

# tie-break order; earlier wins
LABELS = (
    "unconstrained",
    "beta-pinned",
    "alpha-pinned",
    "origin-pinned",
    "minimal-compliance",
    "breakpoint",
    "curve-intersect-alpha0",
    "curve-intersect-thetaG",
    "curve-breakpoint",
    "curve-interior",
    "curve-sampled",
    "abstain",
)
LABEL_RANK = {name: i for i, name in enumerate(LABELS)}
CURVE_LABELS = frozenset(l for l in LABELS if l.startswith("curve"))


class Candidate(NamedTuple):
    strategy: Strategy
    label: str
    feasible: bool
    value: float  # U_D for specialist candidates, U_G for generalist candidates
    response: Strategy | None = None  # D's reply, generalist candidates only
    response_label: str = ""
    u_other: float = 0.0  # U_D at the reply, generalist candidates only
    note: str = ""


@dataclass
class CandidateSet:
    candidates: list[Candidate] = field(default_factory=list)

    def feasible(self) -> list[Candidate]:
        return [c for c in self.candidates if c.feasible]

    def labels(self) -> list[str]:
        return [c.label for c in self.candidates]

    def by_label(self, label: str) -> list[Candidate]:
        return [c for c in self.candidates if c.label == label]

    def __iter__(self):
        return iter(self.candidates)

    def __len__(self):
        return len(self.candidates)


def _better(v1, b1, a1, r1, v2, b2, a2, r2) -> bool:
    """Lexicographic preference: value, then higher beta, higher alpha, earlier label."""
    if v1 > v2 + EPS_TIE:
        return True
    if v1 < v2 - EPS_TIE:
        return False
    if b1 > b2 + EPS_TIE:
        return True
    if b1 < b2 - EPS_TIE:
        return False
    if a1 > a2 + EPS_TIE:
        return True
    if a1 < a2 - EPS_TIE:
        return False
    return r1 < r2


# ---------------------------------------------------------------------------
# specialist


class _Increment(NamedTuple):
    xa: float
    xb: float
    label: str
    feasible: bool
    gain: float  # D's utility net of the revenue share on gamma0
    clamped: bool


def _increments(p: GameParams, m: float) -> list[_Increment]:
    """D's four increment candidates for floor shortfall ``m``."""
    c = p.c1
    k = 1.0 - p.delta
    ra, rb = p.r_a, p.r_b
    out = []
    det = c.c_aa * c.c_bb - c.c_ab * c.c_ab
    if det > 0:
        xa = 0.5 * k * (c.c_bb * ra - c.c_ab * rb) / det
        xb = 0.5 * k * (c.c_aa * rb - c.c_ab * ra) / det
        ok = xa >= -EPS_FEAS and xb >= m - EPS_FEAS
        out.append(_Increment(xa, xb, "unconstrained", ok, k * (ra * xa + rb * xb) - c.quad(xa, xb), False))
    xb = 0.5 * k * rb / c.c_bb
    out.append(_Increment(0.0, xb, "beta-pinned", xb >= m - EPS_FEAS, k * rb * xb - c.c_bb * xb * xb, False))
    xa = 0.5 * k * ra / c.c_aa - (c.c_ab / c.c_aa) * m
    clamped = xa < 0
    if clamped:
        xa = 0.0
    label = "minimal-compliance" if m > 0 else "alpha-pinned"
    out.append(_Increment(xa, m, label, True, k * (ra * xa + rb * m) - c.quad(xa, m), clamped))
    out.append(_Increment(0.0, m, "origin-pinned", True, k * rb * m - c.c_bb * m * m, False))
    return out


def _best_increment(incs: list[_Increment]) -> _Increment:
    best = None
    for inc in incs:
        if not inc.feasible:
            continue
        if best is None or _better(inc.gain, inc.xb, inc.xa, LABEL_RANK[inc.label],
                                   best.gain, best.xb, best.xa, LABEL_RANK[best.label]):
            best = inc
    assert best is not None  # origin-pinned is always feasible
    return best


def _respond(p: GameParams, a0: float, b0: float, theta_d: float):
    """D's best response as ``(alpha1, beta1, u_d, label)``, or None when D abstains."""
    m = theta_d - b0 if theta_d > b0 else 0.0
    inc = _best_increment(_increments(p, m))
    u_d = (1.0 - p.delta) * (p.r_a * a0 + p.r_b * b0) + inc.gain
    if u_d < -EPS_FEAS:
        return None
    return a0 + inc.xa, b0 + inc.xb, u_d, inc.label


def d_candidates(params: GameParams, g0: Strategy, theta_d: float) -> CandidateSet:
    """D's candidate replies to ``g0`` under floor ``theta_d``, with feasibility flags.

    A singular or indefinite ``C1`` makes the unconstrained candidate unavailable; it
    is listed as infeasible with a note.
    """
    require_solvable(params)
    a0, b0 = g0.alpha, g0.beta
    m = max(0.0, theta_d - b0)
    base = (1.0 - params.delta) * (params.r_a * a0 + params.r_b * b0)
    out = CandidateSet()
    if params.c1.det <= 0:
        out.candidates.append(Candidate(Strategy(math.nan, math.nan), "unconstrained", False, -math.inf,
                                        note="C1 not positive definite"))
    for inc in _increments(params, m):
        u_d = base + inc.gain
        ok = inc.feasible and u_d >= -EPS_FEAS
        note = "alpha increment clamped to zero" if inc.clamped else ""
        out.candidates.append(Candidate(Strategy(a0 + inc.xa, b0 + inc.xb), inc.label, ok, u_d, note=note))
    return out


def d_best_response(params: GameParams, g0: Strategy, theta_d: float) -> tuple[Strategy, str, float] | None:
    """D's utility-maximising reply ``(gamma1, label, u_d)``; None means D abstains."""
    require_solvable(params)
    res = _respond(params, g0.alpha, g0.beta, theta_d)
    if res is None:
        return None
    a1, b1, u_d, label = res
    return Strategy(a1, b1), label, u_d


# ---------------------------------------------------------------------------
# generalist


def _piece(p: GameParams, m: float):
    """Affine form ``x(m) = P0 + Q0*m`` of D's chosen increment around shortfall ``m``."""
    inc = _best_increment(_increments(p, m))
    if inc.label in ("unconstrained", "beta-pinned"):
        return (inc.xa, inc.xb), (0.0, 0.0)
    if inc.clamped or inc.label == "origin-pinned":
        return (0.0, 0.0), (0.0, 1.0)
    c = p.c1
    return (0.5 * (1.0 - p.delta) * p.r_a / c.c_aa, 0.0), (-c.c_ab / c.c_aa, 1.0)


def _shortfall_breakpoints(p: GameParams, m_max: float) -> list[float]:
    """Shortfalls in (0, m_max) where D's chosen increment can change form."""
    c = p.c1
    k = 1.0 - p.delta
    ra, rb = p.r_a, p.r_b
    apin = 0.5 * k * ra / c.c_aa
    s = c.c_ab / c.c_aa
    bpin = 0.5 * k * rb / c.c_bb
    pts = [bpin]
    # gains as quadratics in m: (const, lin, quad)
    f_bp = (k * rb * bpin - c.c_bb * bpin * bpin, 0.0, 0.0)
    f_stay = (0.0, k * rb, -c.c_bb)
    # unclamped minimal compliance: x = (apin - s m, m)
    f_mc = (
        k * ra * apin - c.c_aa * apin * apin,
        -k * ra * s + k * rb + 2.0 * c.c_aa * apin * s - 2.0 * c.c_ab * apin,
        -c.c_aa * s * s + 2.0 * c.c_ab * s - c.c_bb,
    )
    gains = [f_bp, f_stay, f_mc]
    if s > 0:
        pts.append(apin / s)
    det = c.det
    if det > 0:
        xa = 0.5 * k * (c.c_bb * ra - c.c_ab * rb) / det
        xb = 0.5 * k * (c.c_aa * rb - c.c_ab * ra) / det
        pts.append(xb)
        gains.append((k * (ra * xa + rb * xb) - c.quad(xa, xb), 0.0, 0.0))
    for i in range(len(gains)):
        for j in range(i + 1, len(gains)):
            gi, gj = gains[i], gains[j]
            pts.extend(solve_quadratic(gi[0] - gj[0], gi[1] - gj[1], gi[2] - gj[2]))
    return sorted({v for v in pts if 0.0 < v < m_max and math.isfinite(v)})


def _strips(p: GameParams, reg: Regulation):
    """Horizontal strips ``(lo, hi, P, Q, shifted)`` with D's increment ``P + Q*beta0``."""
    tg, td = reg.theta_g, reg.theta_d
    strips = []
    if td > tg:
        cuts = [td - m for m in reversed(_shortfall_breakpoints(p, td - tg))]
        edges = [tg] + cuts + [td]
        for lo, hi in zip(edges[:-1], edges[1:]):
            if hi - lo <= 0:
                continue
            (p0a, p0b), (q0a, q0b) = _piece(p, td - 0.5 * (lo + hi))
            # m = td - beta0
            strips.append((lo, hi, (p0a + q0a * td, p0b + q0b * td), (-q0a, -q0b), q0b != 0.0))
    top = max(tg, td)
    (p0a, p0b), _ = _piece(p, 0.0)
    strips.append((top, math.inf, (p0a, p0b), (0.0, 0.0), False))
    return strips


def _strip_conics(p: GameParams, P, Q) -> tuple[Conic, Conic]:
    """U_G and U_D in (alpha0, beta0) when D's increment is ``P + Q*beta0``."""
    d, k = p.delta, 1.0 - p.delta
    ra, rb = p.r_a, p.r_b
    c0, c1 = p.c0, p.c1
    pa, pb = P
    qa, qb = Q
    ug = Conic(
        c=d * (ra * pa + rb * pb),
        a=d * ra,
        b=d * (rb + ra * qa + rb * qb),
        axx=-c0.c_aa,
        axy=-2.0 * c0.c_ab,
        ayy=-c0.c_bb,
    )
    ud = Conic(
        c=k * (ra * pa + rb * pb) - c1.quad(pa, pb),
        a=k * ra,
        b=k * (ra * qa + rb * (1.0 + qb))
        - 2.0 * (c1.c_aa * pa * qa + c1.c_ab * (pa * qb + pb * qa) + c1.c_bb * pb * qb),
        ayy=-c1.quad(qa, qb),
    )
    return ug, ud


def _line_stationary_x(g: Conic, y: float) -> float | None:
    """Maximiser in x of ``g(x, y)`` along a horizontal line, if it exists."""
    if g.axx >= 0:
        return None
    return -(g.a + g.axy * y) / (2.0 * g.axx)


def _min_on_interval(c0: float, c1: float, c2: float, lo: float, hi: float) -> float:
    vals = [c0 + c1 * lo + c2 * lo * lo]
    if math.isinf(hi):
        if c2 < 0 or (c2 == 0 and c1 < 0):
            return -math.inf
    else:
        vals.append(c0 + c1 * hi + c2 * hi * hi)
    if c2 > 0:
        y = -c1 / (2.0 * c2)
        if lo < y < hi:
            vals.append(c0 + c1 * y + c2 * y * y)
    return min(vals)


def _curve_points(ug: Conic, ud: Conic, lo: float, hi: float, tg: float):
    """Candidates on ``U_D = 0`` inside one strip, as ``(alpha0, beta0, label)``."""
    out = []
    at_floor = "curve-intersect-thetaG" if lo == tg else "curve-breakpoint"
    if abs(ud.a) <= 1e-14:
        # participation depends on beta0 only: the curve is a set of horizontal lines
        for y in solve_quadratic(ud.c, ud.b, ud.ayy):
            if lo - EPS_FEAS <= y <= hi + EPS_FEAS:
                out.append((0.0, y, "curve-intersect-alpha0"))
                x = _line_stationary_x(ug, y)
                if x is not None:
                    out.append((x, y, "curve-breakpoint"))
        return out

    def alpha_on_curve(y: float) -> float:
        return -(ud.c + ud.b * y + ud.ayy * y * y) / ud.a

    for y in solve_quadratic(ud.c, ud.b, ud.ayy):
        if lo - EPS_FEAS <= y <= hi + EPS_FEAS:
            out.append((0.0, y, "curve-intersect-alpha0"))
    out.append((alpha_on_curve(lo), lo, at_floor))
    if math.isfinite(hi):
        out.append((alpha_on_curve(hi), hi, "curve-breakpoint"))

    # stationarity of U_G on the curve: grad U_G parallel to grad U_D
    gx, gy = ug.grad_x(), ug.grad_y()
    dx, dy = ud.grad_x(), ud.grad_y()
    eliminated = conic_sub(affine_product(gx, dy), affine_product(gy, dx))
    res = resultant_in_x(eliminated, ud)
    if res.is_zero:
        out.extend(_sample_curve(ug, alpha_on_curve, lo, hi))
        return out
    if res.degree >= 1:
        for root in real_roots(res):
            y = root.value
            if lo - EPS_FEAS <= y <= hi + EPS_FEAS:
                out.append((alpha_on_curve(y), y, "curve-interior"))
    return out


def _sample_curve(ug: Conic, alpha_on_curve, lo: float, hi: float):
    """Dense fallback along the curve when the elimination degenerates."""
    top = hi if math.isfinite(hi) else lo + 10.0 * (1.0 + abs(lo))
    ys = np.linspace(lo, top, CURVE_SAMPLES)
    xs = np.array([alpha_on_curve(y) for y in ys])
    vals = np.array([ug(x, y) for x, y in zip(xs, ys)])
    vals[xs < 0] = -np.inf
    if not np.isfinite(vals).any():
        return []
    i = int(np.argmax(vals))
    a, b = ys[max(i - 1, 0)], ys[min(i + 1, len(ys) - 1)]

    def f(y):
        x = alpha_on_curve(y)
        return ug(x, y) if x >= 0 else -math.inf

    # golden-section refinement on the bracketing samples
    g = (math.sqrt(5.0) - 1.0) / 2.0
    for _ in range(80):
        c, d = b - g * (b - a), a + g * (b - a)
        if f(c) >= f(d):
            b = d
        else:
            a = c
    y = 0.5 * (a + b)
    return [(alpha_on_curve(y), y, "curve-sampled")]


def _raw_g_candidates(p: GameParams, reg: Regulation) -> list[tuple[float, float, str]]:
    tg = reg.theta_g
    c0 = p.c0
    d = p.delta
    raw: list[tuple[float, float, str]] = []
    # explicit closed-form list
    sol = c0.solve(0.5 * d * p.r_a, 0.5 * d * p.r_b)
    if sol is not None and c0.det > 0:
        raw.append((sol[0], sol[1], "unconstrained"))
    raw.append((0.0, 0.5 * d * p.r_b / c0.c_bb, "beta-pinned"))
    raw.append((0.5 * d * p.r_a / c0.c_aa - (c0.c_ab / c0.c_aa) * tg, tg, "alpha-pinned"))
    raw.append((0.0, tg, "origin-pinned"))

    for lo, hi, P, Q, shifted in _strips(p, reg):
        ug, ud = _strip_conics(p, P, Q)
        floor_label = "alpha-pinned" if lo == tg else "breakpoint"
        corner_label = "origin-pinned" if lo == tg else "breakpoint"
        # interior stationary point of U_G
        det = 4.0 * ug.axx * ug.ayy - ug.axy * ug.axy
        if det != 0.0:
            x = (-ug.a * 2.0 * ug.ayy + ug.axy * ug.b) / det
            y = (-2.0 * ug.axx * ug.b + ug.axy * ug.a) / det
            raw.append((x, y, "minimal-compliance" if shifted else "unconstrained"))
        # alpha0 = 0 edge
        if ug.ayy < 0:
            raw.append((0.0, -ug.b / (2.0 * ug.ayy), "beta-pinned"))
        # strip floor and ceiling
        x = _line_stationary_x(ug, lo)
        if x is not None:
            raw.append((x, lo, floor_label))
        raw.append((0.0, lo, corner_label))
        if math.isfinite(hi):
            x = _line_stationary_x(ug, hi)
            if x is not None:
                raw.append((x, hi, "breakpoint"))
            raw.append((0.0, hi, "breakpoint"))
        # participation constraint only matters where it can bind at alpha0 >= 0
        if ud.a > 0 and _min_on_interval(ud.c, ud.b, ud.ayy, lo, hi) >= 0:
            continue
        raw.extend(_curve_points(ug, ud, lo, hi, tg))
    return raw


def _evaluate_g(p: GameParams, reg: Regulation, raw) -> list[Candidate]:
    tg, td = reg.theta_g, reg.theta_d
    seen: dict[tuple[float, float], int] = {}
    out: list[Candidate] = []
    for x, y, label in raw:
        x, y = float(x), float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            continue
        note = ""
        if x < 0:
            if x < -EPS_FEAS:
                out.append(Candidate(Strategy(x, y), label, False, -math.inf, note="alpha0 < 0"))
                continue
            x = 0.0
        if y < tg:
            if y < tg - EPS_FEAS:
                out.append(Candidate(Strategy(x, y), label, False, -math.inf, note="beta0 < theta_g"))
                continue
            y = tg
        key = (round(x, 12), round(y, 12))
        if key in seen:
            i = seen[key]
            if LABEL_RANK[label] < LABEL_RANK[out[i].label]:
                out[i] = out[i]._replace(label=label)
            continue
        res = _respond(p, x, y, td)
        if res is None:
            cand = Candidate(Strategy(x, y), label, False, 0.0, note="specialist abstains")
        else:
            a1, b1, u_d, d_label = res
            a1, b1, u_d = float(a1), float(b1), float(u_d)
            u_g = p.delta * (p.r_a * a1 + p.r_b * b1) - p.c0.quad(x, y)
            if label in CURVE_LABELS and abs(u_d) > EPS_CURVE:
                note = "off-curve residual"
            cand = Candidate(Strategy(x, y), label, True, u_g, Strategy(a1, b1), d_label, u_d, note)
        seen[key] = len(out)
        out.append(cand)
    return out


def g_candidates(params: GameParams, reg: Regulation) -> CandidateSet:
    """G's candidate strategies, each scored with D's best reply.

    Contains the closed-form list (unconstrained, beta-pinned, alpha-pinned at the
    floor, origin-pinned) together with the KKT points of every strip of the
    piecewise value function, including points on D's participation curve.
    Candidates that violate ``alpha0 >= 0`` or ``beta0 >= theta_g``, or that make D
    abstain, are flagged infeasible.
    """
    require_solvable(params)
    return CandidateSet(_evaluate_g(params, reg, _raw_g_candidates(params, reg)))


def ud_zero_curve_candidates(params: GameParams, reg: Regulation) -> list[tuple[Strategy, str]]:
    """Points on D's participation boundary ``U_D = 0`` that are KKT candidates for G.

    Every returned point has ``|U_D| <= EPS_CURVE`` once D's actual best reply is
    recomputed and satisfies G's constraints.
    """
    require_solvable(params)
    raw = []
    for lo, hi, P, Q, _ in _strips(params, reg):
        ug, ud = _strip_conics(params, P, Q)
        raw.extend(_curve_points(ug, ud, lo, hi, reg.theta_g))
    out = []
    for x, y, label in raw:
        if not (math.isfinite(x) and math.isfinite(y)):
            continue
        if x < -EPS_FEAS or y < reg.theta_g - EPS_FEAS:
            continue
        x, y = max(x, 0.0), max(y, reg.theta_g)
        res = _respond(params, x, y, reg.theta_d)
        if res is None or abs(res[2]) > EPS_CURVE:
            continue
        pt = Strategy(x, y)
        if all(abs(pt.alpha - q.alpha) > 1e-12 or abs(pt.beta - q.beta) > 1e-12 for q, _ in out):
            out.append((pt, label))
    return out


def _select(cands: list[Candidate]) -> EquilibriumOutcome:
    best = None
    for c in cands:
        if not c.feasible:
            continue
        if best is None or _better(c.value, c.strategy.beta, c.strategy.alpha, LABEL_RANK[c.label],
                                   best.value, best.strategy.beta, best.strategy.alpha,
                                   LABEL_RANK[best.label]):
            best = c
    if best is None or best.value < -EPS_FEAS:
        return EquilibriumOutcome.abstain()
    return EquilibriumOutcome(False, best.strategy, best.response, best.value, best.u_other,
                              best.label, best.response_label)


def solve_spe(params: GameParams, reg: Regulation = NO_REGULATION) -> EquilibriumOutcome:
    """Subgame-perfect equilibrium of the regulated game.

    G picks the candidate with the highest utility given D's best reply; replies where
    D abstains leave G with zero.  The outcome is abstained when G cannot reach a
    nonnegative utility with D participating.
    """
    require_solvable(params)
    if reg.theta_g < 0 or reg.theta_d < 0:
        raise ValueError("regulation thresholds must be nonnegative")
    return _select(_evaluate_g(params, reg, _raw_g_candidates(params, reg)))


def solve_unregulated(params: GameParams) -> EquilibriumOutcome:
    """Equilibrium without regulation, straight from the unregulated candidate lists.

    Independent of the strip machinery; used to cross-check ``solve_spe`` at zero
    thresholds.
    """
    require_solvable(params)
    d, k = params.delta, 1.0 - params.delta
    ra, rb = params.r_a, params.r_b
    c0, c1 = params.c0, params.c1

    # D's increment is the same for every gamma0 when nothing binds
    incs = []
    if c1.det > 0:
        xa, xb = c1.solve(0.5 * k * ra, 0.5 * k * rb)
        incs.append((xa, xb, "unconstrained"))
    incs.append((0.0, 0.5 * k * rb / c1.c_bb, "beta-pinned"))
    incs.append((0.5 * k * ra / c1.c_aa, 0.0, "alpha-pinned"))
    incs.append((0.0, 0.0, "origin-pinned"))
    best_inc = None
    for xa, xb, label in incs:
        if xa < -EPS_FEAS or xb < -EPS_FEAS:
            continue
        gain = k * (ra * xa + rb * xb) - c1.quad(xa, xb)
        if best_inc is None or _better(gain, xb, xa, LABEL_RANK[label], best_inc[0], best_inc[2],
                                       best_inc[1], LABEL_RANK[best_inc[3]]):
            best_inc = (gain, xa, xb, label)
    gain, xa, xb, d_label = best_inc

    g_list = []
    if c0.det > 0:
        a0, b0 = c0.solve(0.5 * d * ra, 0.5 * d * rb)
        g_list.append((a0, b0, "unconstrained"))
    g_list.append((0.0, 0.5 * d * rb / c0.c_bb, "beta-pinned"))
    g_list.append((0.5 * d * ra / c0.c_aa, 0.0, "alpha-pinned"))
    g_list.append((0.0, 0.0, "origin-pinned"))
    cands = []
    for a0, b0, label in g_list:
        if a0 < -EPS_FEAS or b0 < -EPS_FEAS:
            continue
        a0, b0 = max(a0, 0.0), max(b0, 0.0)
        u_d = k * (ra * a0 + rb * b0) + gain
        a1, b1 = a0 + xa, b0 + xb
        u_g = d * (ra * a1 + rb * b1) - c0.quad(a0, b0)
        cands.append(Candidate(Strategy(a0, b0), label, u_d >= -EPS_FEAS, u_g, Strategy(a1, b1),
                               d_label, u_d))
    return _select(cands)


def composed_ud(params: GameParams, reg: Regulation, g0: Strategy) -> float:
    """D's utility at its best reply to ``g0``, ignoring the option to abstain."""
    m = max(0.0, reg.theta_d - g0.beta)
    inc = _best_increment(_increments(params, m))
    return (1.0 - params.delta) * (params.r_a * g0.alpha + params.r_b * g0.beta) + inc.gain


def value_for_g(params: GameParams, reg: Regulation, g0: Strategy) -> float | None:
    """G's utility from ``g0`` given D's reply; None when D abstains."""
    res = _respond(params, g0.alpha, g0.beta, reg.theta_d)
    if res is None:
        return None
    return params.delta * (params.r_a * res[0] + params.r_b * res[1]) - params.c0.quad(g0.alpha, g0.beta)

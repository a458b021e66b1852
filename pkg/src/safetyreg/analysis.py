"""Pareto hulls of attainable utility pairs, regime comparison and sweep summaries."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .sweep import CLASSES, EPS_CLASS, SweepRecord

CROSS_TOL = 1e-12
REGIMES = ("none", "g_only", "d_only", "both")


@dataclass(frozen=True)
class UtilityPoint:
    u_g: float
    u_d: float
    provenance: tuple[float, float, float] | None = None  # (theta_g, theta_d, delta)

    def __post_init__(self):
        if not (math.isfinite(self.u_g) and math.isfinite(self.u_d)):
            raise ValueError("utility points must be finite")


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def pareto_hull(points: Sequence[UtilityPoint]) -> list[UtilityPoint]:
    """Vertices of the northeastern faces of the convex hull, ascending in u_g.

    Monotone chain over the upper hull, started at the leftmost point of highest
    u_d; a vertical face on the far right is kept since its outward normal is (1, 0).
    Collinear points (cross product within ``CROSS_TOL``) are merged away.  When
    several inputs share coordinates the first one is returned.
    """
    if not points:
        raise ValueError("pareto_hull needs at least one point")
    first: dict[tuple[float, float], UtilityPoint] = {}
    for p in points:
        first.setdefault((p.u_g, p.u_d), p)
    pts = sorted(first)
    if len(pts) == 1:
        return [first[pts[0]]]

    # only points from the leftmost highest one rightwards can lie on a NE face;
    # starting the chain there means it is never merged away
    top = max(y for _, y in pts)
    x_left = min(x for x, y in pts if y == top)
    chain: list[tuple[float, float]] = []
    for p in pts:
        if p[0] < x_left or (p[0] == x_left and p[1] < top):
            continue
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) >= -CROSS_TOL:
            chain.pop()
        chain.append(p)

    x_max, y_last = chain[-1]
    below = [y for x, y in pts if x == x_max and y < y_last]
    if below:
        chain.append((x_max, min(below)))
    return [first[c] for c in chain]


def regime_of(theta_g: float, theta_d: float, eps: float = 1e-12) -> str:
    """Which player a regulation targets.

    ``none``: both floors zero.  ``d_only``: only theta_D positive.  ``both``:
    theta_D > theta_G > 0.  ``g_only``: theta_G > 0 with theta_D no higher, which
    leaves D's floor slack whenever D builds on G's safety.
    """
    tg_pos, td_pos = theta_g > eps, theta_d > eps
    if not tg_pos:
        return "d_only" if td_pos else "none"
    if theta_d > theta_g + eps:
        return "both"
    return "g_only"


@dataclass
class RegimeHulls:
    hull_none: list[UtilityPoint] = field(default_factory=list)
    hull_g_only: list[UtilityPoint] = field(default_factory=list)
    hull_d_only: list[UtilityPoint] = field(default_factory=list)
    hull_both: list[UtilityPoint] = field(default_factory=list)
    empty: list[str] = field(default_factory=list)

    def hull(self, regime: str) -> list[UtilityPoint]:
        return getattr(self, f"hull_{regime}")


def record_point(r: SweepRecord) -> UtilityPoint:
    o = r.outcome
    return UtilityPoint(o.u_g, o.u_d, (r.regulation.theta_g, r.regulation.theta_d, r.delta))


def partition(records: Iterable[SweepRecord]) -> dict[str, list[UtilityPoint]]:
    """Utility points by regime; records that failed to solve are skipped."""
    parts: dict[str, list[UtilityPoint]] = {k: [] for k in REGIMES}
    for r in records:
        if r.outcome is None:
            continue
        parts[regime_of(r.regulation.theta_g, r.regulation.theta_d)].append(record_point(r))
    return parts


def regime_hulls(records: Iterable[SweepRecord]) -> RegimeHulls:
    out = RegimeHulls()
    for regime, pts in partition(records).items():
        if pts:
            setattr(out, f"hull_{regime}", pareto_hull(pts))
        else:
            out.empty.append(regime)
    return out


def _bbox(records: list[SweepRecord]) -> dict | None:
    if not records:
        return None
    tg = [r.regulation.theta_g for r in records]
    td = [r.regulation.theta_d for r in records]
    return {"theta_g_min": min(tg), "theta_g_max": max(tg), "theta_d_min": min(td), "theta_d_max": max(td)}


def _extreme(records: list[SweepRecord], key) -> dict | None:
    if not records:
        return None
    best = max(records, key=key)  # first maximiser in record order
    return {"theta_g": best.regulation.theta_g, "theta_d": best.regulation.theta_d,
            "delta": best.delta, "value": key(best)}


def summarize(records: Sequence[SweepRecord]) -> dict:
    """Class counts, extreme cells, backfire and mutualism bounding boxes and the
    smallest backfiring theta_D per (theta_G, delta) line."""
    if not records:
        raise ValueError("summarize needs at least one record")
    counts = Counter(r.classification for r in records)
    solved = [r for r in records if r.outcome is not None and not r.outcome.abstained]
    backfire = [r for r in solved if r.backfire]
    mutual = [r for r in solved if r.mutualism]
    onsets: dict[tuple[float, float], float] = {}
    for r in backfire:
        k = (r.regulation.theta_g, r.delta)
        onsets[k] = min(onsets.get(k, math.inf), r.regulation.theta_d)
    return {
        "records": len(records),
        "counts": {c: counts.get(c, 0) for c in CLASSES},
        "backfire_flags": len(backfire),
        "mutualism_flags": len(mutual),
        "extremes": {
            "max_u_g": _extreme(solved, lambda r: r.outcome.u_g),
            "max_u_d": _extreme(solved, lambda r: r.outcome.u_d),
            "max_total": _extreme(solved, lambda r: r.outcome.u_g + r.outcome.u_d),
            "max_safety": _extreme(solved, lambda r: r.outcome.gamma1.beta),
        },
        "backfire_region": _bbox(backfire),
        "mutualism_region": _bbox(mutual),
        "backfire_onsets": [{"theta_g": tg, "delta": d, "theta_d": td}
                            for (tg, d), td in sorted(onsets.items())],
        "eps_class": EPS_CLASS,
    }

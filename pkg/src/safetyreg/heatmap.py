"""Standalone SVG heatmaps of sweep CSV rows over the (theta_G, theta_D) plane."""

from __future__ import annotations

import math
from xml.sax.saxutils import quoteattr

from .csvio import fmt_num

METRICS = ("safety", "u_g", "u_d", "class")
_COLUMN = {"safety": "beta1", "u_g": "u_g", "u_d": "u_d"}

CLASS_COLORS = {
    "backfire": "#d73027",
    "abstain": "#7f7f7f",
    "mixed": "#fdae61",
    "neutral": "#ffffbf",
    "safety_improving": "#a6d96a",
    "mutualism": "#1a9850",
    "error": "#000000",
}

# red -> yellow -> green
_RAMP = ((215, 48, 39), (255, 255, 191), (26, 152, 80))

CELL = 12
MARGIN_L, MARGIN_T, MARGIN_B, LEGEND_W = 70, 30, 50, 170


def ramp(t: float) -> str:
    t = min(1.0, max(0.0, t))
    if t <= 0.5:
        a, b, u = _RAMP[0], _RAMP[1], t / 0.5
    else:
        a, b, u = _RAMP[1], _RAMP[2], (t - 0.5) / 0.5
    rgb = [round(x + (y - x) * u) for x, y in zip(a, b)]
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def select_delta(rows: list[dict]) -> float:
    """The delta used when rows span several: closest to 0.5, then the smaller."""
    return min({r["delta"] for r in rows}, key=lambda d: (abs(d - 0.5), d))


def render(rows: list[dict], metric: str) -> str:
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {', '.join(METRICS)}")
    if not rows:
        raise ValueError("no data rows")
    delta = select_delta(rows)
    cells = {(r["theta_g"], r["theta_d"]): r for r in rows if r["delta"] == delta}
    xs = sorted({k[0] for k in cells})
    ys = sorted({k[1] for k in cells})
    ix = {v: i for i, v in enumerate(xs)}
    iy = {v: i for i, v in enumerate(ys)}

    if metric == "class":
        values = {k: r["class"] for k, r in cells.items()}
        lo = hi = None
    else:
        col = _COLUMN[metric]
        values = {k: r[col] for k, r in cells.items()}
        finite = [v for v in values.values() if math.isfinite(v)]
        lo, hi = (min(finite), max(finite)) if finite else (0.0, 0.0)

    def color(v) -> str:
        if metric == "class":
            return CLASS_COLORS.get(v, "#000000")
        if not math.isfinite(v):
            return "#000000"
        return ramp(0.5 if hi == lo else (v - lo) / (hi - lo))

    w_plot, h_plot = len(xs) * CELL, len(ys) * CELL
    width = MARGIN_L + w_plot + 20 + LEGEND_W
    height = MARGIN_T + h_plot + MARGIN_B
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" data-metric="{metric}" data-delta="{fmt_num(delta)}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        '<g class="cells">',
    ]
    for (tg, td), v in sorted(values.items()):
        x = MARGIN_L + ix[tg] * CELL
        y = MARGIN_T + (len(ys) - 1 - iy[td]) * CELL  # theta_D grows upward
        shown = v if metric == "class" else fmt_num(v)
        out.append(f'<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{color(v)}" '
                   f'data-theta-g="{fmt_num(tg)}" data-theta-d="{fmt_num(td)}" data-value={quoteattr(str(shown))}/>')
    out.append("</g>")

    # axes
    x0, y0 = MARGIN_L, MARGIN_T + h_plot
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0 + w_plot}" y2="{y0}" stroke="#000"/>')
    out.append(f'<line x1="{x0}" y1="{MARGIN_T}" x2="{x0}" y2="{y0}" stroke="#000"/>')
    out.append(f'<text class="axis-label" x="{x0 + w_plot / 2}" y="{y0 + 35}" text-anchor="middle" '
               f'font-size="14">θ_G</text>')
    out.append(f'<text class="axis-label" x="20" y="{MARGIN_T + h_plot / 2}" text-anchor="middle" font-size="14" '
               f'transform="rotate(-90 20 {MARGIN_T + h_plot / 2})">θ_D</text>')
    for v, anchor in ((xs[0], "start"), (xs[-1], "end")):
        xx = MARGIN_L + ix[v] * CELL + (0 if anchor == "start" else CELL)
        out.append(f'<text x="{xx}" y="{y0 + 15}" text-anchor="{anchor}" font-size="10">{fmt_num(v)}</text>')
    for v in (ys[0], ys[-1]):
        yy = MARGIN_T + (len(ys) - 1 - iy[v]) * CELL + CELL - 2
        out.append(f'<text x="{MARGIN_L - 4}" y="{yy}" text-anchor="end" font-size="10">{fmt_num(v)}</text>')

    # legend
    lx = MARGIN_L + w_plot + 20
    out.append(f'<g class="legend" transform="translate({lx},{MARGIN_T})">')
    if metric == "class":
        for i, (name, c) in enumerate(CLASS_COLORS.items()):
            out.append(f'<rect x="0" y="{i * 16}" width="12" height="12" fill="{c}"/>')
            out.append(f'<text x="18" y="{i * 16 + 10}" font-size="11">{name}</text>')
    else:
        steps = 20
        for i in range(steps):
            t = 1.0 - i / (steps - 1)
            out.append(f'<rect x="0" y="{i * 8}" width="16" height="8" fill="{ramp(t)}"/>')
        out.append(f'<text class="legend-max" x="22" y="8" font-size="11">max {fmt_num(hi)}</text>')
        out.append(f'<text class="legend-min" x="22" y="{steps * 8}" font-size="11">min {fmt_num(lo)}</text>')
        out.append(f'<text x="0" y="{steps * 8 + 20}" font-size="11">{metric}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"

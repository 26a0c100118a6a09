"""Static SVG bar charts with 95% CI whiskers, written without a plotting library."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

from .files import read_aggregates

PALETTE = ("#4C72B0", "#DD8452", "#55A868", "#C44E52", "#8172B3")

STRATEGY_PANELS = (
    ("skill_level", "Team skill level"),
    ("relationship", "Relationship strength"),
    ("uncertainty", "Recruiter uncertainty"),
    ("cost", "Team cost"),
)
SOLVER_PANELS = (
    ("skill_level", "Skill level"),
    ("uncertainty_skill", "Skill uncertainty"),
    ("relationship", "Relationship strength"),
    ("uncertainty_social", "Social uncertainty"),
    ("cost", "Cost"),
)

PANEL_W, PANEL_H = 220, 240
MARGIN_TOP, MARGIN_BOTTOM, MARGIN_LEFT = 40, 50, 20


def _n(x: float) -> str:
    return f"{x:.2f}"


def panel_svg(x0: float, title: str, bars: Sequence[tuple[str, float, float]]) -> list[str]:
    """One panel: bars are (label, mean, ci_half_width); the y-axis starts at 0."""
    top = max((m + h for _, m, h in bars), default=1.0) or 1.0
    plot_h = PANEL_H - MARGIN_TOP - MARGIN_BOTTOM
    scale = plot_h / (top * 1.15)
    base_y = PANEL_H - MARGIN_BOTTOM
    slot = (PANEL_W - 2 * MARGIN_LEFT) / max(len(bars), 1)
    bw = slot * 0.6
    out = [
        f'<g class="panel" transform="translate({_n(x0)},0)">',
        f'<text class="title" x="{_n(PANEL_W / 2)}" y="20" text-anchor="middle">{escape(title)}</text>',
        f'<line class="axis" x1="{MARGIN_LEFT}" y1="{_n(base_y)}" x2="{PANEL_W - MARGIN_LEFT}" y2="{_n(base_y)}" stroke="#333"/>',
    ]
    for i, (label, mean, half) in enumerate(bars):
        cx = MARGIN_LEFT + slot * (i + 0.5)
        h = max(mean, 0.0) * scale
        y = base_y - h
        color = PALETTE[i % len(PALETTE)]
        lo, hi = base_y - (mean - half) * scale, base_y - (mean + half) * scale
        out += [
            f'<rect class="bar" x="{_n(cx - bw / 2)}" y="{_n(y)}" width="{_n(bw)}" height="{_n(h)}" fill="{color}">'
            f"<title>{escape(label)}: {mean:.4g} ± {half:.3g}</title></rect>",
            f'<line class="ci" x1="{_n(cx)}" y1="{_n(lo)}" x2="{_n(cx)}" y2="{_n(hi)}" stroke="#000"/>',
            f'<line class="ci" x1="{_n(cx - 5)}" y1="{_n(hi)}" x2="{_n(cx + 5)}" y2="{_n(hi)}" stroke="#000"/>',
            f'<line class="ci" x1="{_n(cx - 5)}" y1="{_n(lo)}" x2="{_n(cx + 5)}" y2="{_n(lo)}" stroke="#000"/>',
            f'<text class="value" x="{_n(cx)}" y="{_n(hi - 4)}" text-anchor="middle" font-size="9">'
            f"{mean:.3g}±{half:.2g}</text>",
            f'<text class="label" x="{_n(cx)}" y="{_n(base_y + 16)}" text-anchor="middle" font-size="11">'
            f"{escape(label)}</text>",
        ]
    out.append("</g>")
    return out


def chart_svg(title: str, panels: Sequence[tuple[str, Sequence[tuple[str, float, float]]]]) -> str:
    width = PANEL_W * len(panels)
    body = []
    for p, (ptitle, bars) in enumerate(panels):
        body += panel_svg(p * PANEL_W, ptitle, bars)
    return "\n".join(
        [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{PANEL_H + 20}" '
            f'viewBox="0 0 {width} {PANEL_H + 20}" font-family="sans-serif" font-size="12">',
            f"<desc>{escape(title)}</desc>",
            f'<rect width="{width}" height="{PANEL_H + 20}" fill="white"/>',
            *body,
            "</svg>",
            "",
        ]
    )


def _lookup(aggs, strategy, solver, metric):
    for a in aggs:
        if (a["strategy"], a["solver"], a["metric"]) == (strategy, solver, metric):
            return a["mean"], a["ci_half_width"]
    return None


def strategies_chart(aggs: list[dict]) -> str:
    strategies = [s for s in ("platform", "leader", "hybrid")
                  if any(a["strategy"] == s and a["solver"] == "exact" for a in aggs)]
    panels = []
    for metric, title in STRATEGY_PANELS:
        bars = []
        for s in strategies:
            v = _lookup(aggs, s, "exact", metric)
            if v:
                bars.append((s, *v))
        panels.append((title, bars))
    return chart_svg("Recruitment strategies", panels)


def solvers_chart(aggs: list[dict]) -> str:
    solvers = [s for s in ("exact", "ga", "pso")
               if any(a["strategy"] == "platform" and a["solver"] == s for a in aggs)]
    panels = []
    for metric, title in SOLVER_PANELS:
        bars = []
        for s in solvers:
            v = _lookup(aggs, "platform", s, metric)
            if v:
                bars.append((s, *v))
        panels.append((title, bars))
    return chart_svg("Platform strategy by solver", panels)


def render(results_dir, figure: str, out_dir) -> Path:
    """Write ``<figure>.svg`` into ``out_dir`` from a results bundle."""
    aggs = read_aggregates(results_dir)
    if figure == "strategies":
        svg = strategies_chart(aggs)
    elif figure == "solvers":
        svg = solvers_chart(aggs)
    else:
        raise ValueError(f"unknown figure {figure!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{figure}.svg"
    path.write_text(svg, encoding="utf-8")
    return path

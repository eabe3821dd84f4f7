"""Hand-rolled SVG renderers for the two study graphics.

Both renderers are pure functions of their inputs with fixed float
formatting and fully sorted iteration, so identical inputs produce
byte-identical files; golden-file tests rely on that.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Mapping
from xml.sax.saxutils import escape

from ..errors import NothingToPlotError
from ..metrics import COMPONENTS, DIMENSIONS, Ecdf, PARTICIPANTS, TEAMS
from ..model import CodeReviewNetwork, ComponentGraph, EnhancementMaps

DIMENSION_COLORS = {
    PARTICIPANTS: "#1b9e77",
    COMPONENTS: "#d95f02",
    TEAMS: "#7570b3",
}

TEAM_PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
)

NO_TEAM = "__no_team__"


def _fmt(x: float) -> str:
    # fixed two-decimal coordinates keep files byte-stable
    return f"{x:.2f}"


def _svg_document(width: int, height: int, body: list[str]) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    lines.extend(body)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_cdf(ecdfs: Mapping[str, Ecdf], out_path: str | Path) -> Path:
    """One chart with a step curve per similarity dimension.

    Dimensions missing from the mapping (or mapped to None) are left
    out; if nothing remains there is nothing to plot.
    """
    curves = [(name, ecdfs[name]) for name in DIMENSIONS
              if ecdfs.get(name) is not None and ecdfs[name].points]
    if not curves:
        raise NothingToPlotError("all similarity distributions are empty")

    width, height = 640, 440
    left, right, top, bottom = 70.0, 610.0, 30.0, 380.0

    def px(value: float) -> float:
        return left + value * (right - left)

    def py(prob: float) -> float:
        return bottom - prob * (bottom - top)

    body: list[str] = []
    # grid and axes
    for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
        x, y = px(tick), py(tick)
        body.append(f'<line x1="{_fmt(x)}" y1="{_fmt(top)}" x2="{_fmt(x)}" y2="{_fmt(bottom)}" '
                    'stroke="#dddddd" stroke-width="1"/>')
        body.append(f'<line x1="{_fmt(left)}" y1="{_fmt(y)}" x2="{_fmt(right)}" y2="{_fmt(y)}" '
                    'stroke="#dddddd" stroke-width="1"/>')
        body.append(f'<text x="{_fmt(x)}" y="{_fmt(bottom + 20)}" font-family="sans-serif" '
                    f'font-size="12" text-anchor="middle">{tick:g}</text>')
        body.append(f'<text x="{_fmt(left - 10)}" y="{_fmt(y + 4)}" font-family="sans-serif" '
                    f'font-size="12" text-anchor="end">{tick:g}</text>')
    body.append(f'<rect x="{_fmt(left)}" y="{_fmt(top)}" width="{_fmt(right - left)}" '
                f'height="{_fmt(bottom - top)}" fill="none" stroke="#333333" stroke-width="1"/>')
    body.append(f'<text x="{_fmt((left + right) / 2)}" y="{_fmt(bottom + 45)}" '
                'font-family="sans-serif" font-size="14" text-anchor="middle">Similarity</text>')
    body.append(f'<text x="18" y="{_fmt((top + bottom) / 2)}" font-family="sans-serif" '
                f'font-size="14" text-anchor="middle" '
                f'transform="rotate(-90 18 {_fmt((top + bottom) / 2)})">Cumulative probability</text>')

    for name, curve in curves:
        color = DIMENSION_COLORS[name]
        parts = [f"M {_fmt(px(0.0))} {_fmt(py(0.0))}"]
        prob = 0.0
        for value, cumulative in curve.points:
            parts.append(f"L {_fmt(px(value))} {_fmt(py(prob))}")
            parts.append(f"L {_fmt(px(value))} {_fmt(py(cumulative))}")
            prob = cumulative
        parts.append(f"L {_fmt(px(1.0))} {_fmt(py(prob))}")
        body.append(f'<path d="{" ".join(parts)}" fill="none" stroke="{color}" '
                    'stroke-width="2"/>')

    for i, (name, _) in enumerate(curves):
        color = DIMENSION_COLORS[name]
        y = top + 16 + i * 18
        body.append(f'<line x1="{_fmt(left + 12)}" y1="{_fmt(y)}" x2="{_fmt(left + 40)}" '
                    f'y2="{_fmt(y)}" stroke="{color}" stroke-width="2"/>')
        body.append(f'<text x="{_fmt(left + 46)}" y="{_fmt(y + 4)}" font-family="sans-serif" '
                    f'font-size="12">{name}</text>')

    out_path = Path(out_path)
    out_path.write_text(_svg_document(width, height, body), encoding="utf-8")
    return out_path


def leaf_components(graph: ComponentGraph) -> frozenset[str]:
    """Labels of the graph's leaves, the components a review touched."""
    has_child = [False] * graph.node_count
    for parent in graph.parents:
        if parent != -1:
            has_child[parent] = True
    return frozenset(label for i, label in enumerate(graph.labels)
                     if not has_child[i] and label != "")


def render_circular(
    network: CodeReviewNetwork,
    maps: EnhancementMaps,
    out_path: str | Path,
    owners: Mapping[str, str] | None = None,
    max_chords: int | None = None,
    chord_rank: Mapping[tuple, float | None] | None = None,
) -> Path:
    """Components on a circle, grouped into team arcs, linked by chords.

    ``owners`` names each component's owning team (components without an
    entry join the no-team group). One chord is drawn per distinct
    unordered component pair linked by at least one edge. ``max_chords``
    keeps only the top chords ranked by ``chord_rank`` (lowest edge
    similarity first, unranked last), so dense networks stay readable.
    """
    if not network.reviews:
        raise NothingToPlotError("network has no reviews to lay out")
    owners = owners or {}
    review_components: dict = {}
    for review, graph in maps.components.items():
        review_components[review] = leaf_components(graph)
    components = sorted(set().union(*review_components.values()) if review_components else ())
    if not components:
        raise NothingToPlotError("no components to place on the circle")

    def team_of(component: str) -> str:
        return owners.get(component, NO_TEAM)

    teams = sorted({team_of(c) for c in components})
    ordered: list[str] = []
    spans: list[tuple[str, int, int]] = []  # team, first index, last index
    for team in teams:
        members = sorted(c for c in components if team_of(c) == team)
        spans.append((team, len(ordered), len(ordered) + len(members) - 1))
        ordered.extend(members)
    position = {component: i for i, component in enumerate(ordered)}

    # chords: distinct unordered component pairs across all edges, each
    # ranked by the best (lowest) similarity of the edges producing it
    ranked: dict[tuple[str, str], tuple[int, float, tuple[str, str]]] = {}
    for edge in network.sorted_edges():
        source_comps = review_components.get(edge.source)
        target_comps = review_components.get(edge.target)
        if not source_comps or not target_comps:
            continue
        value = (chord_rank or {}).get((edge.source, edge.target))
        for cs in sorted(source_comps):
            for ct in sorted(target_comps):
                if cs == ct:
                    continue
                pair = (cs, ct) if cs < ct else (ct, cs)
                key = (0, value, pair) if value is not None else (1, 0.0, pair)
                if pair not in ranked or key < ranked[pair]:
                    ranked[pair] = key
    chords = sorted(ranked, key=ranked.get)
    if max_chords is not None:
        chords = chords[:max_chords]
    chords.sort()  # draw order independent of ranking

    size = 520
    cx = cy = size / 2.0
    radius = 175.0
    count = len(ordered)
    step = 2 * math.pi / count

    def point(index: int, r: float) -> tuple[float, float]:
        angle = -math.pi / 2 + index * step
        return (cx + r * math.cos(angle), cy + r * math.sin(angle))

    body: list[str] = []
    for chord_pair in chords:
        (x1, y1) = point(position[chord_pair[0]], radius)
        (x2, y2) = point(position[chord_pair[1]], radius)
        body.append(f'<path d="M {_fmt(x1)} {_fmt(y1)} Q {_fmt(cx)} {_fmt(cy)} '
                    f'{_fmt(x2)} {_fmt(y2)}" fill="none" stroke="#555555" '
                    'stroke-width="1" stroke-opacity="0.55"/>')

    for team_index, (team, first, last) in enumerate(spans):
        color = TEAM_PALETTE[team_index % len(TEAM_PALETTE)]
        pad = step * 0.4
        a1 = -math.pi / 2 + first * step - pad
        a2 = -math.pi / 2 + last * step + pad
        r_arc = radius + 14
        x1, y1 = cx + r_arc * math.cos(a1), cy + r_arc * math.sin(a1)
        x2, y2 = cx + r_arc * math.cos(a2), cy + r_arc * math.sin(a2)
        large = 1 if (a2 - a1) > math.pi else 0
        body.append(f'<path d="M {_fmt(x1)} {_fmt(y1)} A {_fmt(r_arc)} {_fmt(r_arc)} 0 '
                    f'{large} 1 {_fmt(x2)} {_fmt(y2)}" fill="none" stroke="{color}" '
                    'stroke-width="8" stroke-linecap="round"/>')
        mid = -math.pi / 2 + (first + last) / 2.0 * step
        tx = cx + (radius + 44) * math.cos(mid)
        ty = cy + (radius + 44) * math.sin(mid)
        anchor = "middle" if abs(math.cos(mid)) < 0.35 else ("start" if math.cos(mid) > 0 else "end")
        body.append(f'<text x="{_fmt(tx)}" y="{_fmt(ty + 4)}" font-family="sans-serif" '
                    f'font-size="12" fill="{color}" text-anchor="{anchor}">{escape(team)}</text>')

    for component in ordered:
        x, y = point(position[component], radius)
        body.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.5" fill="#222222"/>')
        lx, ly = point(position[component], radius + 24)
        angle = -math.pi / 2 + position[component] * step
        anchor = "middle" if abs(math.cos(angle)) < 0.35 else ("start" if math.cos(angle) > 0 else "end")
        body.append(f'<text x="{_fmt(lx)}" y="{_fmt(ly + 3)}" font-family="sans-serif" '
                    f'font-size="9" fill="#444444" text-anchor="{anchor}">{escape(component)}</text>')

    out_path = Path(out_path)
    out_path.write_text(_svg_document(size, size, body), encoding="utf-8")
    return out_path

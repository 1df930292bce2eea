"""Hand-rolled SVG scatter plots: byte-deterministic, no plotting deps.

Two chart kinds: per-community mean style (mean negativity versus mean
subjectivity, one labeled point per community) and the 2-D graph layout
(one dot per node, colored by community). Every data point is a circle
with class "pt" so output is easy to assert on.
"""

from __future__ import annotations

from typing import Hashable, Mapping, Sequence

import numpy as np

from chamberlens.errors import ValidationError
from chamberlens.layout import LayoutPositions

WIDTH = 640.0
HEIGHT = 480.0
MARGIN = 56.0

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
)


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:g}" '
        f'height="{HEIGHT:g}" viewBox="0 0 {WIDTH:g} {HEIGHT:g}">',
        f'<rect width="{WIDTH:g}" height="{HEIGHT:g}" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:g}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
    ]


def _axes(x_label: str, y_label: str) -> list[str]:
    x0, y0 = MARGIN, HEIGHT - MARGIN
    x1, y1 = WIDTH - MARGIN, MARGIN
    return [
        f'<line x1="{x0:g}" y1="{y0:g}" x2="{x1:g}" y2="{y0:g}" '
        f'stroke="#333333" stroke-width="1"/>',
        f'<line x1="{x0:g}" y1="{y0:g}" x2="{x0:g}" y2="{y1:g}" '
        f'stroke="#333333" stroke-width="1"/>',
        f'<text x="{(x0 + x1) / 2:g}" y="{HEIGHT - 16:g}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{x_label}</text>',
        f'<text x="18" y="{(y0 + y1) / 2:g}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 18 {(y0 + y1) / 2:g})">{y_label}</text>',
    ]


def _scale(v: float, lo: float, hi: float, out_lo: float, out_hi: float) -> float:
    span = hi - lo
    if span <= 0.0:
        return (out_lo + out_hi) / 2.0
    return out_lo + (v - lo) / span * (out_hi - out_lo)


def render_means_svg(points: Sequence[tuple[Hashable, float, float]]) -> str:
    """Labeled scatter of (community, mean negativity, mean subjectivity)
    on fixed [0,1] axes."""
    if not points:
        raise ValidationError("means plot requires at least one community")
    lines = _header("Mean negativity vs mean subjectivity by community")
    lines += _axes("mean negativity", "mean subjectivity")
    for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
        tx = _scale(tick, 0.0, 1.0, MARGIN, WIDTH - MARGIN)
        ty = _scale(tick, 0.0, 1.0, HEIGHT - MARGIN, MARGIN)
        lines.append(
            f'<text x="{_fmt(tx)}" y="{HEIGHT - MARGIN + 16:g}" '
            f'text-anchor="middle" font-family="sans-serif" '
            f'font-size="10">{tick:g}</text>')
        lines.append(
            f'<text x="{MARGIN - 8:g}" y="{_fmt(ty + 3)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10">{tick:g}</text>')
    for idx, (cid, neg, subj) in enumerate(points):
        if not (np.isfinite(neg) and np.isfinite(subj)):
            raise ValidationError(f"non-finite mean for community {cid!r}")
        cx = _scale(float(neg), 0.0, 1.0, MARGIN, WIDTH - MARGIN)
        cy = _scale(float(subj), 0.0, 1.0, HEIGHT - MARGIN, MARGIN)
        color = PALETTE[idx % len(PALETTE)]
        lines.append(
            f'<circle class="pt" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="5" '
            f'fill="{color}"/>')
        lines.append(
            f'<text x="{_fmt(cx + 8)}" y="{_fmt(cy - 6)}" '
            f'font-family="sans-serif" font-size="11">{cid}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_layout_svg(lp: LayoutPositions,
                      community_of_user: Mapping[str, Hashable] | None = None,
                      ) -> str:
    """One dot per node at its layout position, colored by community
    (gray when the node has none)."""
    coords = lp.coords
    lo = coords.min(axis=0)
    hi = coords.max(axis=0)
    communities = sorted({str(c) for c in (community_of_user or {}).values()})
    color_of = {c: PALETTE[i % len(PALETTE)] for i, c in enumerate(communities)}
    lines = _header("Reply graph layout")
    for uid, (x, y) in zip(lp.node_ids, coords):
        cx = _scale(float(x), float(lo[0]), float(hi[0]), MARGIN, WIDTH - MARGIN)
        cy = _scale(float(y), float(lo[1]), float(hi[1]), HEIGHT - MARGIN, MARGIN)
        c = community_of_user.get(uid) if community_of_user else None
        color = color_of.get(str(c), "#9e9e9e") if c is not None else "#9e9e9e"
        lines.append(
            f'<circle class="pt" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="3" '
            f'fill="{color}" fill-opacity="0.8"/>')
    if communities:
        for i, c in enumerate(communities):
            ly = MARGIN + 14.0 * i
            lines.append(
                f'<circle cx="{WIDTH - MARGIN + 16:g}" cy="{_fmt(ly)}" r="4" '
                f'fill="{color_of[c]}"/>')
            lines.append(
                f'<text x="{WIDTH - MARGIN + 26:g}" y="{_fmt(ly + 4)}" '
                f'font-family="sans-serif" font-size="10">{c}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"

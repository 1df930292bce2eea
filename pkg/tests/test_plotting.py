"""SVG rendering: structure, colors, and byte determinism."""

import numpy as np
import pytest

from chamberlens.errors import ValidationError
from chamberlens.layout import LayoutPositions
from chamberlens.plotting import PALETTE, render_layout_svg, render_means_svg


def count_points(svg: str) -> int:
    return svg.count('class="pt"')


def test_single_community_renders_one_point():
    svg = render_means_svg([("c1", 0.5, 0.5)])
    assert count_points(svg) == 1
    assert ">c1</text>" in svg
    assert svg.startswith("<svg ")
    assert svg.rstrip().endswith("</svg>")


def test_six_communities_render_six_labeled_points():
    points = [(str(i), i / 10, 1 - i / 10) for i in range(1, 7)]
    svg = render_means_svg(points)
    assert count_points(svg) == 6
    for i in range(1, 7):
        assert f">{i}</text>" in svg
    # distinct palette colors for distinct communities
    fills = {line.split('fill="')[1].split('"')[0]
             for line in svg.splitlines() if 'class="pt"' in line}
    assert len(fills) == 6


def test_means_rendering_is_byte_deterministic():
    points = [(str(i), 0.1 * i, 0.9 - 0.1 * i) for i in range(5)]
    assert render_means_svg(points) == render_means_svg(points)


def test_means_rejects_empty_and_nonfinite():
    with pytest.raises(ValidationError):
        render_means_svg([])
    with pytest.raises(ValidationError):
        render_means_svg([("c", float("nan"), 0.5)])


def layout_fixture() -> LayoutPositions:
    coords = np.array([[0.0, 0.0], [10.0, 0.0], [5.0, 8.0]])
    return LayoutPositions(("ua", "ub", "uc"), coords)


def test_layout_nodes_colored_by_community():
    svg = render_layout_svg(layout_fixture(), {"ua": 0, "ub": 1})
    pts = [line for line in svg.splitlines() if 'class="pt"' in line]
    assert len(pts) == 3
    fills = [p.split('fill="')[1].split('"')[0] for p in pts]
    assert fills[0] == PALETTE[0]
    assert fills[1] == PALETTE[1]
    assert fills[2] == "#9e9e9e"  # no community: gray
    assert ">0</text>" in svg and ">1</text>" in svg  # legend


def test_layout_without_communities_is_all_gray():
    svg = render_layout_svg(layout_fixture())
    pts = [line for line in svg.splitlines() if 'class="pt"' in line]
    assert len(pts) == 3
    assert all('fill="#9e9e9e"' in p for p in pts)


def test_layout_rendering_is_byte_deterministic():
    a = render_layout_svg(layout_fixture(), {"ua": 2, "uc": 1})
    b = render_layout_svg(layout_fixture(), {"ua": 2, "uc": 1})
    assert a == b


def test_single_node_layout_renders_centered():
    lp = LayoutPositions(("solo",), np.zeros((1, 2)))
    svg = render_layout_svg(lp)
    assert count_points(svg) == 1

import re

import pytest

from origami_rings.render import PALETTE, RenderSpec, default_window, render_svg


def test_spec_validation():
    with pytest.raises(ValueError):
        RenderSpec(width_px=0)
    with pytest.raises(ValueError):
        RenderSpec(point_radius_px=-1)
    with pytest.raises(ValueError):
        RenderSpec(window=(1, 1, 0, 1))


def test_default_window():
    assert default_window([], []) == (-1.0, 1.0, -1.0, 1.0)
    assert default_window([0.0, 10.0], [0.0, 0.0]) == (-0.5, 10.5, -0.05, 0.05)


def test_svg_is_pure_and_ordered():
    pts = [(0.0, 0.0, 0), (1.0, 0.0, 0), (1.0, 1.0, 1), (0.0, -1.0, 1), (2.0, 1.0, 2)]
    a = render_svg(pts, RenderSpec(), "t")
    assert a == render_svg(list(reversed(pts)), RenderSpec(), "t")
    assert a.count("<circle") == 5
    fills = re.findall(r'<circle [^>]*fill="(#[0-9a-f]+)"', a)
    # later generations are drawn first, seeds last
    assert fills[0] == PALETTE[2] and fills[-1] == PALETTE[0]


def test_window_clips_and_flips_y():
    pts = [(0.0, 0.0, 0), (5.0, 5.0, 1), (0.5, 0.9, 1)]
    svg = render_svg(pts, RenderSpec(window=(-1, 1, -1, 1), width_px=200, height_px=200))
    assert svg.count("<circle") == 2
    assert 'cx="150.000" cy="10.000"' in svg


def test_monochrome():
    svg = render_svg([(0.0, 0.0, 0), (1.0, 1.0, 7), (2.0, 2.0, 30)], RenderSpec(color_by_generation=False))
    assert set(re.findall(r'fill="(#[0-9a-f]+)"', svg)) == {"#ffffff", PALETTE[0]}


def test_title_escaped():
    assert "<title>a &lt;b&gt; &amp; c</title>" in render_svg([], RenderSpec(), "a <b> & c")

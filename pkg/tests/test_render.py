import io
import math

import pytest

from src.address import parse_address
from src.critical import sweep
from src.errors import DepthRangeError, InvalidParamsError, RenderError
from src.extremal import ExtremeKind
from src.render import (SceneSpec, critical_samples, difference_samples, numerator_samples,
                        plot_function, render_tree, write_document, write_sweep_table, write_table)


@pytest.mark.parametrize("depth", [0, 1, 6])
def test_one_line_per_branch(tree, depth):
    svg = render_tree(SceneSpec(tree(110, 0.6), depth))
    assert svg.count('<line ') == 2 ** (depth + 1) - 1
    assert svg.startswith('<?xml')
    assert svg.endswith('</svg>\n')


def test_depth_zero_is_the_trunk(tree):
    svg = render_tree(SceneSpec(tree(45, 0.5), 0))
    assert '<line x1="0.000000" y1="0.000000" x2="0.000000" y2="1.000000"/>' in svg


def test_render_is_deterministic(tree):
    spec = SceneSpec(tree(150, 0.8), 8, highlights=[(parse_address("R^3(LR)^inf"), "red")])
    assert render_tree(spec) == render_tree(spec)


def test_highlights_drawn_as_polylines(tree):
    spec = SceneSpec(tree(150, 0.8), 5,
                     highlights=[(parse_address("(LR)^inf"), "#00aa00"),
                                 (parse_address("RRL"), "blue")])
    svg = render_tree(spec)
    assert svg.count('<polyline') == 2
    assert 'stroke="#00aa00"' in svg and 'stroke="blue"' in svg


def test_canvas_settings(tree):
    svg = render_tree(SceneSpec(tree(90, 0.5), 2, width=300, height=200, margin=10))
    assert 'width="300" height="200"' in svg


@pytest.mark.parametrize("size", [(63, 400), (400, 10)])
def test_small_canvas_rejected(tree, size):
    with pytest.raises(RenderError):
        SceneSpec(tree(90, 0.5), 3, width=size[0], height=size[1])


def test_margin_must_fit(tree):
    with pytest.raises(RenderError):
        SceneSpec(tree(90, 0.5), 3, width=100, height=100, margin=50)


def test_bad_colour_rejected(tree):
    with pytest.raises(RenderError):
        SceneSpec(tree(90, 0.5), 3, highlights=[(parse_address("R"), "rgb(1,2,3)")])


def test_scene_depth_range(tree):
    with pytest.raises(DepthRangeError):
        SceneSpec(tree(90, 0.5), 17)


def test_plot_breaks_at_gaps():
    samples = [(1.0, 0.5), (2.0, 0.7), (3.0, None), (4.0, 0.9), (5.0, float('nan')), (6.0, 0.4),
               (7.0, 0.3)]
    svg = plot_function(samples, "theta", "r")
    # runs: [1, 2], [4] and [6, 7]
    assert svg.count('<polyline') == 2
    assert svg.count('<circle') == 1
    assert '>theta</text>' in svg


def test_plot_needs_two_defined_samples():
    with pytest.raises(RenderError):
        plot_function([(1.0, None), (2.0, 1.0), (3.0, math.inf)], "x", "y")
    with pytest.raises(RenderError):
        plot_function([(1.0, 1.0), (1.0, 2.0)], "x", "y")


def test_constant_curve_is_padded():
    svg = plot_function([(0.0, 2.0), (1.0, 2.0), (2.0, 2.0)], "x", "y", title="flat & level")
    assert svg.count('<polyline') == 1
    assert 'flat &amp; level' in svg


def test_zero_line_drawn_when_curve_changes_sign():
    svg = plot_function(numerator_samples(ExtremeKind.BOTTOM, 130.0, 160.0, 1.0), "theta", "N")
    assert 'stroke-dasharray' in svg


def test_samplers():
    assert numerator_samples(ExtremeKind.TOP, 90.0, 91.0, 0.5)[1][0] == 90.5
    samples = difference_samples(ExtremeKind.BOTTOM, 150.0, count=5)
    assert [r for r, _ in samples] == pytest.approx([0.01, 0.255, 0.5, 0.745, 0.99])
    rows = sweep(ExtremeKind.TOP, 119.0, 121.0, 1.0)
    assert critical_samples(rows)[1] == (120.0, None)


def test_write_table_formats_gaps():
    out = io.StringIO()
    write_table([(119.0, 0.96, 'Found'), (120.0, None, 'UndefinedSpecialAngle')], out)
    assert out.getvalue() == ("theta_deg,value,status\n"
                              "119.000000000,0.960000000,Found\n"
                              "120.000000000,,UndefinedSpecialAngle\n")


def test_write_table_custom_key():
    out = io.StringIO()
    write_table([(0.5, -0.25, '')], out, key='r')
    assert out.getvalue().splitlines() == ['r,value,status', '0.500000000,-0.250000000,']


def test_sweep_table_columns():
    out = io.StringIO()
    write_sweep_table(sweep(ExtremeKind.TOP, 134.0, 136.0, 1.0), out)
    lines = out.getvalue().splitlines()
    assert lines[0] == 'theta_deg,value,status,method,numerator,sign_changes'
    assert lines[2].startswith('135.000000000,0.707106781,Found,closed-form,')
    assert len(lines) == 4


def test_write_document_to_path(tmp_path):
    target = tmp_path / "scene.svg"
    write_document("<svg/>", str(target))
    assert target.read_text(encoding='utf-8') == "<svg/>"


@pytest.mark.parametrize("theta", [0.0, 200.0])
def test_difference_samples_reject_bad_angle(theta):
    with pytest.raises(InvalidParamsError):
        difference_samples(ExtremeKind.TOP, theta)

"""SVG scenes of trees and function plots, and the CSV tables behind them.

Documents are assembled from the templates in ``config.svg_templates`` with
every number pre-formatted (round-half-even), so identical inputs give
byte-identical output.
"""
import contextlib
import csv
import logging
import math
import re
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from config import svg_templates as tpl
from src.address import format_address
from src.config import get_setting
from src.critical import sweep_angles
from src.errors import DepthRangeError, RenderError
from src.extremal import difference, extent, numerator
from src.oracle import BranchSegments
from src.tipcalc import partial_path
from src.utils import fmt_fixed

logger = logging.getLogger(__name__)

MIN_CANVAS = 64
SCENE_MAX_DEPTH = 16
COORD_DECIMALS = 6
TABLE_DECIMALS = 9
MIN_STROKE_PX = 0.05
_COLOR_PATTERN = re.compile(r'^(#[0-9a-fA-F]{3}|#[0-9a-fA-F]{6}|[a-zA-Z]+)$')


def _fmt(value):
    return fmt_fixed(value, COORD_DECIMALS)


@dataclass(frozen=True)
class SceneSpec:
    params: object
    depth: int
    highlights: tuple = ()
    width: int = None
    height: int = None
    margin: int = None

    def __post_init__(self):
        for name, key in (('width', 'canvas_width'), ('height', 'canvas_height'),
                          ('margin', 'canvas_margin')):
            if getattr(self, name) is None:
                object.__setattr__(self, name, get_setting(key))
        object.__setattr__(self, 'highlights', tuple(self.highlights))
        if not 0 <= self.depth <= SCENE_MAX_DEPTH:
            raise DepthRangeError(f"scene depth must lie in [0, {SCENE_MAX_DEPTH}], got {self.depth}")
        if min(self.width, self.height) < MIN_CANVAS:
            raise RenderError(f"canvas must be at least {MIN_CANVAS} px on each side, "
                              f"got {self.width}x{self.height}")
        if self.margin < 0 or 2 * self.margin >= min(self.width, self.height):
            raise RenderError(f"margin {self.margin} does not fit a "
                              f"{self.width}x{self.height} canvas")
        for _, color in self.highlights:
            if not _COLOR_PATTERN.match(color):
                raise RenderError(f"unsupported colour {color!r}")


@dataclass(frozen=True)
class _Viewport:
    scale: float
    tx: float
    ty: float

    @classmethod
    def fit(cls, box, spec):
        xmin, xmax, ymin, ymax = box
        span_x = max(xmax - xmin, 1e-12)
        span_y = max(ymax - ymin, 1e-12)
        scale = min((spec.width - 2 * spec.margin) / span_x,
                    (spec.height - 2 * spec.margin) / span_y)
        return cls(scale,
                   spec.width / 2.0 - scale * (xmin + xmax) / 2.0,
                   spec.height / 2.0 + scale * (ymin + ymax) / 2.0)


def _union(box, xs, ys):
    xmin, xmax, ymin, ymax = box
    return (min(xmin, float(np.min(xs))), max(xmax, float(np.max(xs))),
            min(ymin, float(np.min(ys))), max(ymax, float(np.max(ys))))


def _highlight_depth(p, a, pixels_per_unit):
    """Deep enough that the unseen tail is under highlight_pixel_tail pixels."""
    if a.is_finite:
        return len(a.prefix)
    limit = get_setting('max_expansion_depth')
    depth = min(get_setting('highlight_min_depth'), limit)
    while depth < limit and p.tail_bound(depth) * pixels_per_unit >= get_setting('highlight_pixel_tail'):
        depth += 1
    return depth


def _highlight_path(p, a, pixels_per_unit):
    points, _ = partial_path(p, a, _highlight_depth(p, a, pixels_per_unit))
    return np.array([pt.x for pt in points]), np.array([pt.y for pt in points])


def render_tree(spec):
    """Every branch to ``spec.depth`` as one <line>, highlighted paths drawn on top."""
    p = spec.params
    seg = BranchSegments(p, spec.depth)
    ext = extent(p)
    box = (ext.left, ext.right, min(ext.bottom, 0.0), max(ext.top, 1.0))
    box = _union(box, np.concatenate([seg.sx, seg.ex]), np.concatenate([seg.sy, seg.ey]))
    rough = _Viewport.fit(box, spec)

    paths = []
    for a, color in spec.highlights:
        xs, ys = _highlight_path(p, a, rough.scale)
        paths.append((a, color, xs, ys))
        box = _union(box, xs, ys)
    view = _Viewport.fit(box, spec)

    stroke = get_setting('stroke_width')
    parts = [tpl.SVG_HEADER.format(width=spec.width, height=spec.height),
             tpl.TREE_GROUP.format(tx=_fmt(view.tx), ty=_fmt(view.ty),
                                   scale=_fmt(view.scale), neg_scale=_fmt(-view.scale))]
    for level in range(spec.depth + 1):
        width_px = max(stroke * p.r ** level, MIN_STROKE_PX)
        parts.append(tpl.LEVEL_GROUP.format(color=tpl.TREE_COLOR,
                                            width=fmt_fixed(width_px / view.scale, TABLE_DECIMALS)))
        rows = seg.level(level)
        for x1, y1, x2, y2 in zip(seg.sx[rows], seg.sy[rows], seg.ex[rows], seg.ey[rows]):
            parts.append(tpl.LINE.format(x1=_fmt(x1), y1=_fmt(y1), x2=_fmt(x2), y2=_fmt(y2)))
        parts.append(tpl.GROUP_END)

    highlight_width = fmt_fixed(0.75 * stroke / view.scale, TABLE_DECIMALS)
    for a, color, xs, ys in paths:
        logger.debug(f"Highlighting {format_address(a)} with {len(xs)} points in {color}")
        points = ' '.join(f"{_fmt(x)},{_fmt(y)}" for x, y in zip(xs, ys))
        parts.append(tpl.POLYLINE.format(points=points, color=color, width=highlight_width))
    parts.append(tpl.GROUP_END)
    parts.append(tpl.SVG_FOOTER)
    logger.info(f"Rendered tree theta={p.theta}, r={p.r}, depth={spec.depth} "
                f"({len(seg)} branches, {len(paths)} highlights)")
    return ''.join(parts)


def _nice_ticks(lo, hi, target=5):
    raw = (hi - lo) / target
    magnitude = 10.0 ** math.floor(math.log10(raw))
    step = next(m * magnitude for m in (1, 2, 5, 10) if raw <= m * magnitude)
    decimals = max(0, -int(math.floor(math.log10(step))))
    first = math.ceil(lo / step)
    ticks = []
    k = first
    while k * step <= hi + step * 1e-9:
        ticks.append(k * step)
        k += 1
    return ticks, decimals


def _runs(points):
    """Split (x, y-or-None) samples into runs of consecutive finite values."""
    run = []
    for x, y in points:
        if y is None:
            if run:
                yield run
            run = []
        else:
            run.append((x, y))
    if run:
        yield run


def plot_function(samples, x_label, y_label, title=None, width=None, height=None):
    """Axis-annotated line plot; undefined samples (None or non-finite) break the curve."""
    width = get_setting('canvas_width') if width is None else width
    height = get_setting('canvas_height') if height is None else height
    if min(width, height) < MIN_CANVAS:
        raise RenderError(f"canvas must be at least {MIN_CANVAS} px on each side")
    points = []
    for x, y in samples:
        y = None if y is None or not math.isfinite(y) else float(y)
        points.append((float(x), y))
    finite = [pt for pt in points if pt[1] is not None]
    if len(finite) < 2:
        raise RenderError("a plot needs at least two defined samples")

    x0, x1 = min(x for x, _ in points), max(x for x, _ in points)
    y0, y1 = min(y for _, y in finite), max(y for _, y in finite)
    if x1 == x0:
        raise RenderError("samples span no x range")
    if y1 == y0:
        pad = 0.1 * max(abs(y0), 1.0)
        y0, y1 = y0 - pad, y1 + pad

    m = tpl.PLOT_MARGINS
    plot_w = width - m['left'] - m['right']
    plot_h = height - m['top'] - m['bottom']

    def px(x, y):
        return (m['left'] + (x - x0) / (x1 - x0) * plot_w,
                m['top'] + (y1 - y) / (y1 - y0) * plot_h)

    parts = [tpl.SVG_HEADER.format(width=width, height=height)]
    left, right, top, bottom = m['left'], width - m['right'], m['top'], height - m['bottom']

    def line(xa, ya, xb, yb, color, stroke, dash=''):
        parts.append(tpl.PLOT_LINE.format(x1=_fmt(xa), y1=_fmt(ya), x2=_fmt(xb), y2=_fmt(yb),
                                          color=color, width=stroke, dash=dash))

    def text(x, y, label, size=12, anchor='middle', extra=''):
        parts.append(tpl.TEXT.format(x=_fmt(x), y=_fmt(y), size=size, anchor=anchor,
                                     extra=extra, text=escape(label)))

    xticks, x_decimals = _nice_ticks(x0, x1)
    for t in xticks:
        X, _ = px(t, y0)
        line(X, top, X, bottom, tpl.GRID_COLOR, 1)
        text(X, bottom + 16, fmt_fixed(t, x_decimals))
    yticks, y_decimals = _nice_ticks(y0, y1)
    for t in yticks:
        _, Y = px(x0, t)
        line(left, Y, right, Y, tpl.GRID_COLOR, 1)
        text(left - 6, Y + 4, fmt_fixed(t, y_decimals), anchor='end')
    if y0 < 0.0 < y1:
        _, Y = px(x0, 0.0)
        line(left, Y, right, Y, tpl.AXIS_COLOR, 1, dash=' stroke-dasharray="4 3"')
    line(left, bottom, right, bottom, tpl.AXIS_COLOR, 1)
    line(left, top, left, bottom, tpl.AXIS_COLOR, 1)

    for run in _runs(points):
        pixels = [px(x, y) for x, y in run]
        if len(pixels) == 1:
            parts.append(tpl.PLOT_DOT.format(x=_fmt(pixels[0][0]), y=_fmt(pixels[0][1]),
                                             color=tpl.CURVE_COLOR))
        else:
            coords = ' '.join(f"{_fmt(X)},{_fmt(Y)}" for X, Y in pixels)
            parts.append(tpl.POLYLINE.format(points=coords, color=tpl.CURVE_COLOR, width=1.5))

    text((left + right) / 2.0, height - 12, x_label, size=14)
    text(18, (top + bottom) / 2.0, y_label, size=14,
         extra=f' transform="rotate(-90 18 {_fmt((top + bottom) / 2.0)})"')
    if title:
        text(width / 2.0, 20, title, size=15)
    parts.append(tpl.SVG_FOOTER)
    return ''.join(parts)


def numerator_samples(kind, start=0.25, stop=179.75, step=0.25):
    return [(theta, numerator(kind, theta)) for theta in sweep_angles(start, stop, step)]


def difference_samples(kind, theta, count=99):
    r = np.linspace(0.01, 0.99, count)
    return list(zip(r.tolist(), np.asarray(difference(kind, theta, r)).tolist()))


def critical_samples(rows):
    return [(row.theta, row.result.r_value) for row in rows]


@contextlib.contextmanager
def _output(out):
    if hasattr(out, 'write'):
        yield out
    else:
        with open(out, 'w', encoding='utf-8', newline='') as f:
            yield f


def write_document(text, out):
    with _output(out) as f:
        f.write(text)


def write_table(rows, out, key='theta_deg'):
    """CSV key,value,status (key is theta_deg unless stated); a None value is an empty field."""
    with _output(out) as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow([key, 'value', 'status'])
        for x, value, status in rows:
            writer.writerow([fmt_fixed(x, TABLE_DECIMALS), fmt_fixed(value, TABLE_DECIMALS), status])


def write_sweep_table(rows, out):
    """Sweep rows with the solver method, N(θ) and the scan's sign-change count."""
    with _output(out) as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(['theta_deg', 'value', 'status', 'method', 'numerator', 'sign_changes'])
        for row in rows:
            result = row.result
            writer.writerow([fmt_fixed(row.theta, TABLE_DECIMALS),
                             fmt_fixed(result.r_value, TABLE_DECIMALS),
                             result.status.value, result.method.value,
                             fmt_fixed(row.numerator, TABLE_DECIMALS), result.sign_changes])

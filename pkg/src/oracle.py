"""Brute-force checks on finite truncations of the tree.

Branches are heap-numbered: 0 is the trunk and the children of branch i are
2i+1 (L) and 2i+2 (R). Within one level the offset of a branch, read as a
binary number with R = 1, spells its turn sequence.
"""
import logging
import math
import multiprocessing
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

import numpy as np

from src.address import Turn, address_from_index
from src.config import get_setting
from src.errors import DepthRangeError, InvalidParamsError
from src.extremal import Extent, extent
from src.tipcalc import TipPoint

logger = logging.getLogger(__name__)

ENUMERATION_MAX_DEPTH = 24
CLASSIFY_MAX_DEPTH = 16
CROSSING_EPS = 1e-12
# endpoints and the analytic extent are computed along different float paths
ROUNDING_SLACK = 1e-12
SPLIT_LEVEL = 4


def _check_depth(depth, upper):
    if isinstance(depth, bool) or not isinstance(depth, (int, np.integer)):
        raise DepthRangeError(f"depth must be an integer, got {depth!r}")
    if not 1 <= depth <= upper:
        raise DepthRangeError(f"depth must lie in [1, {upper}], got {depth}")


def _rotation_tables(radians, depth):
    """cos(hθ), sin(hθ) for headings h = -depth..depth, indexed by h + depth.

    Negative headings reuse the positive entries so mirrored branches come out
    as exact negations.
    """
    h = np.arange(depth + 1)
    cos_pos = np.cos(h * radians)
    sin_pos = np.sin(h * radians)
    cos_t = np.concatenate([cos_pos[:0:-1], cos_pos])
    sin_t = np.concatenate([-sin_pos[:0:-1], sin_pos])
    return cos_t, sin_t


def _grow(r, tables, offset, x, y, heading, start_level, stop_level):
    """Advance branch ends from ``start_level`` to ``stop_level``, L child before R."""
    cos_t, sin_t = tables
    for level in range(start_level + 1, stop_level + 1):
        heading = np.stack([heading + 1, heading - 1], axis=1).ravel()
        scale = r ** level
        x = np.repeat(x, 2) - scale * sin_t[heading + offset]
        y = np.repeat(y, 2) + scale * cos_t[heading + offset]
    return x, y, heading


@dataclass(frozen=True, eq=False)
class Endpoints:
    """All branch endpoints at one depth, in turn-code order."""
    depth: int
    x: np.ndarray
    y: np.ndarray

    def __len__(self):
        return len(self.x)

    def turns(self, offset):
        return tuple(Turn.R if (offset >> (self.depth - 1 - j)) & 1 else Turn.L
                     for j in range(self.depth))

    def point(self, offset):
        return TipPoint(float(self.x[offset]), float(self.y[offset]))

    def __iter__(self):
        for offset in range(len(self)):
            yield self.turns(offset), self.point(offset)


def enumerate_tips(p, depth):
    """Every depth-``depth`` branch endpoint, 2^depth of them."""
    _check_depth(depth, ENUMERATION_MAX_DEPTH)
    tables = _rotation_tables(p.radians, depth)
    x, y, _ = _grow(p.r, tables, depth, np.zeros(1), np.ones(1), np.zeros(1, dtype=np.int64),
                    0, depth)
    logger.debug(f"Enumerated {len(x)} endpoints at depth {depth}")
    return Endpoints(depth, x, y)


@dataclass(frozen=True)
class Interval:
    low: float
    high: float
    best: float

    def contains(self, value):
        return self.low <= value <= self.high

    @property
    def width(self):
        return self.high - self.low


@dataclass(frozen=True)
class CertifiedBox:
    top: Interval
    bottom: Interval
    right: Interval
    depth: int
    tail: float
    analytic: Extent
    consistent: bool

    @property
    def left(self):
        return Interval(-self.right.high, -self.right.low, -self.right.best)


def _subtree_extremes(task):
    theta_r, r, depth, split, x0, y0, h0 = task
    tables = _rotation_tables(theta_r, depth)
    x, y, _ = _grow(r, tables, depth, np.array([x0]), np.array([y0]),
                    np.array([h0], dtype=np.int64), split, depth)
    return float(y.max()), float(y.min()), float(x.max())


def certify_extent(p, depth, workers=1):
    """Interval box around the true extremes of all tips, checked against extent().

    The depth-``depth`` endpoints are enumerated subtree by subtree below a
    fixed split level; the max/min reduction does not depend on the split.
    """
    _check_depth(depth, ENUMERATION_MAX_DEPTH)
    split = min(depth, SPLIT_LEVEL)
    tables = _rotation_tables(p.radians, depth)
    x, y, h = _grow(p.r, tables, depth, np.zeros(1), np.ones(1), np.zeros(1, dtype=np.int64),
                    0, split)
    tasks = [(p.radians, p.r, depth, split, float(x[i]), float(y[i]), int(h[i]))
             for i in range(len(x))]
    if workers > 1:
        with multiprocessing.Pool(processes=workers) as pool:
            parts = pool.map(_subtree_extremes, tasks)
    else:
        parts = [_subtree_extremes(task) for task in tasks]

    tail = p.tail_bound(depth)
    pad = tail + ROUNDING_SLACK

    def around(best):
        return Interval(best - pad, best + pad, best)

    top = around(max(part[0] for part in parts))
    bottom = around(min(part[1] for part in parts))
    right = around(max(part[2] for part in parts))
    analytic = extent(p)
    consistent = (top.contains(analytic.top) and bottom.contains(analytic.bottom)
                  and right.contains(analytic.right))
    if not consistent:
        logger.warning(f"Analytic extent at theta={p.theta}, r={p.r} falls outside "
                       f"the depth-{depth} certificate")
    return CertifiedBox(top, bottom, right, depth, tail, analytic, consistent)


def certified_extent(p, depth, workers=1):
    box = certify_extent(p, depth, workers)
    return replace(box.analytic, certified=box.consistent)


class OverlapKind(Enum):
    SELF_AVOIDING = 'SelfAvoiding'
    NEAR_CONTACT = 'NearContact'
    OVERLAPPING = 'Overlapping'


@dataclass(frozen=True)
class OverlapClass:
    kind: OverlapKind
    depth: int
    min_separation: Optional[float] = None
    witness_pair: Optional[tuple] = None
    # shallowest truncation depth at which a crossing shows up
    crossing_level: Optional[int] = None


class BranchSegments:
    """Start and end points of every branch down to ``depth``, heap-indexed."""

    def __init__(self, p, depth):
        n = 2 ** (depth + 1) - 1
        self.sx = np.zeros(n)
        self.sy = np.zeros(n)
        self.ex = np.zeros(n)
        self.ey = np.zeros(n)
        self.ey[0] = 1.0
        heading = np.zeros(n, dtype=np.int64)
        cos_t, sin_t = _rotation_tables(p.radians, depth)
        for level in range(1, depth + 1):
            idx = np.arange(2 ** level - 1, 2 ** (level + 1) - 1)
            parent = (idx - 1) // 2
            heading[idx] = heading[parent] + np.where(idx % 2 == 1, 1, -1)
            scale = p.r ** level
            self.sx[idx] = self.ex[parent]
            self.sy[idx] = self.ey[parent]
            self.ex[idx] = self.sx[idx] - scale * sin_t[heading[idx] + depth]
            self.ey[idx] = self.sy[idx] + scale * cos_t[heading[idx] + depth]
        self.depth = depth

    def __len__(self):
        return len(self.sx)

    @staticmethod
    def level(level):
        """Index range of the branches at ``level``."""
        return slice(2 ** level - 1, 2 ** (level + 1) - 1)


def _point_segment(px, py, ax, ay, ux, uy):
    t = np.clip(((px - ax) * ux + (py - ay) * uy) / (ux * ux + uy * uy), 0.0, 1.0)
    return np.hypot(px - ax - t * ux, py - ay - t * uy)


def _segment_gap(seg, i, j):
    """Separation of segments i and j (zero when they cross) and the crossing mask."""
    ax, ay, bx, by = seg.sx[i], seg.sy[i], seg.ex[i], seg.ey[i]
    cx, cy, dx, dy = seg.sx[j], seg.sy[j], seg.ex[j], seg.ey[j]
    ux, uy = bx - ax, by - ay
    vx, vy = dx - cx, dy - cy
    len_u = np.hypot(ux, uy)
    len_v = np.hypot(vx, vy)
    eps = CROSSING_EPS * np.maximum(len_u, len_v)

    # signed distances of each endpoint from the other segment's line
    d1 = (ux * (cy - ay) - uy * (cx - ax)) / len_u
    d2 = (ux * (dy - ay) - uy * (dx - ax)) / len_u
    d3 = (vx * (ay - cy) - vy * (ax - cx)) / len_v
    d4 = (vx * (by - cy) - vy * (bx - cx)) / len_v
    straddle_u = ((d1 > eps) & (d2 < -eps)) | ((d1 < -eps) & (d2 > eps))
    straddle_v = ((d3 > eps) & (d4 < -eps)) | ((d3 < -eps) & (d4 > eps))
    proper = straddle_u & straddle_v

    collinear = (np.abs(d1) <= eps) & (np.abs(d2) <= eps)
    t_c = ((cx - ax) * ux + (cy - ay) * uy) / len_u
    t_d = ((dx - ax) * ux + (dy - ay) * uy) / len_u
    shared = (np.minimum(np.maximum(t_c, t_d), len_u)
              - np.maximum(np.minimum(t_c, t_d), 0.0))
    crossing = proper | (collinear & (shared > eps))

    gap = np.minimum.reduce([
        _point_segment(cx, cy, ax, ay, ux, uy),
        _point_segment(dx, dy, ax, ay, ux, uy),
        _point_segment(ax, ay, cx, cy, vx, vy),
        _point_segment(bx, by, cx, cy, vx, vy),
    ])
    return np.where(crossing, 0.0, gap), crossing


def _first_pair(i, j):
    """Lexicographically smallest (low, high) index pair."""
    low = np.minimum(i, j)
    high = np.maximum(i, j)
    k = np.lexsort((high, low))[0]
    return int(low[k]), int(high[k])


def _children(nodes):
    return 2 * nodes + 1, 2 * nodes + 2


def classify_overlap(p, depth=None, contact_tol=None):
    """Self-avoiding, near-contact or overlapping, decided on the depth-``depth`` truncation.

    Pairs of disjoint subtrees and (branch, subtree) pairs are refined one level
    at a time; a subtree rooted at level l lies in the disk of radius
    r^l/(1−r) around its base, which prunes pairs that cannot beat the best
    separation found so far. Parent/child and sibling pairs share a vertex by
    construction and are never tested.
    """
    depth = get_setting('classify_depth') if depth is None else depth
    contact_tol = get_setting('contact_tol') if contact_tol is None else contact_tol
    _check_depth(depth, CLASSIFY_MAX_DEPTH)
    if not contact_tol > 0.0:
        raise InvalidParamsError(f"contact tolerance must be positive, got {contact_tol}")

    seg = BranchSegments(p, depth)
    empty = np.zeros(0, dtype=np.int64)
    pair_a, pair_b = empty, empty      # disjoint subtree pairs
    probe_u, probe_n = empty, empty    # branch u against the subtree of n
    best = math.inf
    best_pair = None

    for level in range(1, depth + 1):
        first = 2 ** level - 1
        radius = p.r ** level / (1.0 - p.r)
        left = np.arange(first, 2 ** (level + 1) - 1, 2)
        pair_a = np.concatenate([pair_a, left])
        pair_b = np.concatenate([pair_b, left + 1])
        if level >= 2:
            grand = np.arange(first, 2 ** (level + 1) - 1)
            probe_u = np.concatenate([probe_u, ((grand - 1) // 2 - 1) // 2])
            probe_n = np.concatenate([probe_n, grand])

        centre_gap = np.hypot(seg.sx[pair_a] - seg.sx[pair_b], seg.sy[pair_a] - seg.sy[pair_b])
        keep = centre_gap - 2.0 * radius <= best
        pair_a, pair_b = pair_a[keep], pair_b[keep]
        reach = _point_segment(seg.sx[probe_n], seg.sy[probe_n], seg.sx[probe_u], seg.sy[probe_u],
                               seg.ex[probe_u] - seg.sx[probe_u], seg.ey[probe_u] - seg.sy[probe_u])
        keep = reach - radius <= best
        probe_u, probe_n = probe_u[keep], probe_n[keep]

        cousins = (pair_a - 1) // 2 != (pair_b - 1) // 2
        test_i = np.concatenate([pair_a[cousins], probe_u])
        test_j = np.concatenate([pair_b[cousins], probe_n])
        logger.debug(f"Level {level}: {len(pair_a)} subtree pairs, {len(probe_u)} probes, "
                     f"{len(test_i)} segment tests")
        if test_i.size:
            gap, crossing = _segment_gap(seg, test_i, test_j)
            if crossing.any():
                i, j = _first_pair(test_i[crossing], test_j[crossing])
                logger.info(f"Crossing at level {level} between branches {i} and {j}")
                return OverlapClass(OverlapKind.OVERLAPPING, depth,
                                    witness_pair=(address_from_index(i), address_from_index(j)),
                                    crossing_level=level)
            smallest = gap.min()
            if smallest < best:
                at = gap == smallest
                best = float(smallest)
                best_pair = _first_pair(test_i[at], test_j[at])

        if level < depth:
            a_left, a_right = _children(pair_a)
            b_left, b_right = _children(pair_b)
            n_left, n_right = _children(probe_n)
            probe_u = np.concatenate([probe_u, probe_u, pair_a, pair_a, pair_b, pair_b])
            probe_n = np.concatenate([n_left, n_right, b_left, b_right, a_left, a_right])
            pair_a = np.concatenate([a_left, a_left, a_right, a_right])
            pair_b = np.concatenate([b_left, b_right, b_left, b_right])

    if best < contact_tol:
        i, j = best_pair
        return OverlapClass(OverlapKind.NEAR_CONTACT, depth, min_separation=best,
                            witness_pair=(address_from_index(i), address_from_index(j)))
    return OverlapClass(OverlapKind.SELF_AVOIDING, depth, min_separation=best)

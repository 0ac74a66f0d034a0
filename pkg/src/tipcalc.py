"""Exact positions of branch tips and partial paths.

The trunk is the complex number i (base at the origin, top at (0, 1)); a
branch at depth j whose path has turned e_j times net to the left
(L = +1, R = -1) is the vector i r^j α^{e_j} with α = e^{iθ}.
A tip point (x, y) is the complex number x + iy.
"""
import cmath
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from src.address import Address, format_address
from src.errors import InvalidParamsError, NearSingularError

logger = logging.getLogger(__name__)

SINGULAR_TOL = 1e-14


@dataclass(frozen=True)
class TreeParams:
    theta: float
    r: float
    radians: float = field(init=False, repr=False, compare=False)
    alpha: complex = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        theta = float(self.theta)
        r = float(self.r)
        if not math.isfinite(theta) or not 0.0 < theta < 180.0:
            raise InvalidParamsError(f"theta must lie in (0, 180) degrees, got {self.theta}")
        if not math.isfinite(r) or not 0.0 < r < 1.0:
            raise InvalidParamsError(f"r must lie in (0, 1), got {self.r}")
        object.__setattr__(self, 'theta', theta)
        object.__setattr__(self, 'r', r)
        object.__setattr__(self, 'radians', math.radians(theta))
        object.__setattr__(self, 'alpha', cmath.rect(1.0, math.radians(theta)))

    def tail_bound(self, depth):
        """Total length of every branch below depth ``depth`` along one path."""
        return self.r ** (depth + 1) / (1.0 - self.r)


@dataclass(frozen=True)
class TipPoint:
    x: float
    y: float

    @classmethod
    def from_complex(cls, z):
        return cls(float(z.real), float(z.imag))

    def to_complex(self):
        return complex(self.x, self.y)

    def distance(self, other):
        return abs(self.to_complex() - other.to_complex())


def _turn_sum(p, turns):
    """Σ r^j α^{e_j} over j = 1..len(turns), without the trunk factor i; also the final heading."""
    total = 0j
    heading = 0
    for j, turn in enumerate(turns, start=1):
        heading += turn.sign
        total += p.r ** j * cmath.rect(1.0, heading * p.radians)
    return total, heading


def tip_position(p, a):
    """Limit point of ``a`` (end of the last branch for a finite address)."""
    partial, heading = _turn_sum(p, a.prefix)
    z = 1j * (1.0 + partial)
    if a.cycle:
        period, net = _turn_sum(p, a.cycle)
        denominator = 1.0 - p.r ** len(a.cycle) * cmath.rect(1.0, net * p.radians)
        if abs(denominator) < SINGULAR_TOL:
            raise NearSingularError(
                f"cycle {format_address(Address((), a.cycle))} is near-singular "
                f"at theta={p.theta}, r={p.r}")
        # the periodic part starts in the frame left by the prefix
        frame = 1j * p.r ** len(a.prefix) * cmath.rect(1.0, heading * p.radians)
        z += frame * period / denominator
    return TipPoint.from_complex(z)


def same_tip(p, a, b, tol=1e-12):
    return tip_position(p, a).distance(tip_position(p, b)) <= tol


def _one_minus_r2(r):
    return (1.0 - r) * (1.0 + r)


def wound_y(theta, r, k):
    """y of R^k(LR)^∞ for raw theta (degrees) and 0 <= r < 1; r may be a numpy array."""
    t = math.radians(theta)
    r = np.asarray(r, dtype=float)
    total = sum(r ** n * math.cos(n * t) for n in range(k + 1))
    total = total + (r ** (k + 1) * math.cos((k - 1) * t)
                     + r ** (k + 2) * math.cos(k * t)) / _one_minus_r2(r)
    return total if np.ndim(total) else float(total)


def wound_x(theta, r, k):
    """x of R^k(LR)^∞, same conventions as wound_y."""
    t = math.radians(theta)
    r = np.asarray(r, dtype=float)
    total = sum(r ** n * math.sin(n * t) for n in range(1, k + 1))
    total = total + (r ** (k + 1) * math.sin((k - 1) * t)
                     + r ** (k + 2) * math.sin(k * t)) / _one_minus_r2(r)
    return total if np.ndim(total) else float(total)


def y_lr_inf(p):
    """Height of the alternating tip (LR)^∞: (1 + r cos θ)/(1 - r²)."""
    return (1.0 + p.r * math.cos(p.radians)) / _one_minus_r2(p.r)


def y_rk_lr_inf(p, k):
    if k < 0:
        raise InvalidParamsError(f"k must be non-negative, got {k}")
    return wound_y(p.theta, p.r, k)


def x_rk_lr_inf(p, k):
    if k < 1:
        raise InvalidParamsError(f"k must be at least 1, got {k}")
    return wound_x(p.theta, p.r, k)


def partial_path(p, a, depth):
    """Joints of the path truncated after ``depth`` branches, and the tail bound.

    Points start at the trunk base (0, 0) and the trunk top (0, 1); the true tip
    lies within ``tail_bound`` of the last point.
    """
    turns = a.expand(depth)
    z = 1j
    heading = 0
    points = [TipPoint(0.0, 0.0), TipPoint(0.0, 1.0)]
    for j, turn in enumerate(turns, start=1):
        heading += turn.sign
        z += 1j * p.r ** j * cmath.rect(1.0, heading * p.radians)
        points.append(TipPoint.from_complex(z))
    return points, p.tail_bound(depth)

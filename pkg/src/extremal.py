"""Candidate extremal tips and the difference functions that compare them.

Every extremal direction compares two members of the R^k(LR)^∞ family:

    Top     (LR)^∞            vs R^k(LR)^∞,  kθ ≥ 360°
    Bottom  R^k(LR)^∞, kθ≥180° vs R^m(LR)^∞,  mθ ≥ 540°
    Side    R^k(LR)^∞, kθ≥90°  vs R^m(LR)^∞,  mθ ≥ 450°

f_θ(r) is (challenger − classical) written over the common denominator 1 − r²;
N(θ) is that numerator at r = 1 and decides the sign of f as r → 1⁻.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.address import Address, Turn, wound_address
from src.errors import InvalidParamsError
from src.tipcalc import wound_x, wound_y, y_lr_inf

logger = logging.getLogger(__name__)

INTEGER_GUARD = 1e-9
NUMERATOR_ZERO = 1e-12


class ExtremeKind(Enum):
    TOP = 'top'
    BOTTOM = 'bottom'
    SIDE = 'side'

    @property
    def threshold(self):
        return {ExtremeKind.TOP: 360.0, ExtremeKind.BOTTOM: 180.0, ExtremeKind.SIDE: 90.0}[self]

    @property
    def second_threshold(self):
        # the top's challenger is (LR)^∞ itself, not a rewound path
        return None if self is ExtremeKind.TOP else self.threshold + 360.0

    @classmethod
    def parse(cls, text):
        return cls(text.strip().lower())


def _guarded_ceiling(q):
    n = round(q)
    if abs(q - n) < INTEGER_GUARD:
        return int(n)
    return math.ceil(q)


def check_theta(theta):
    if not math.isfinite(theta) or not 0.0 < theta < 180.0:
        raise InvalidParamsError(f"theta must lie in (0, 180) degrees, got {theta}")


def turn_count(kind, theta):
    """Smallest k with kθ ≥ threshold(kind)."""
    check_theta(theta)
    return _guarded_ceiling(kind.threshold / theta)


def second_turn_count(kind, theta):
    """Smallest m with mθ ≥ threshold(kind) + 360°."""
    check_theta(theta)
    if kind.second_threshold is None:
        raise ValueError("the top has no rewound second candidate")
    return _guarded_ceiling(kind.second_threshold / theta)


def _one_minus_r2(r):
    return (1.0 - r) * (1.0 + r)


def _rewound_difference(trig, theta, r, k, m):
    """Σ_{n=k+1}^{m} r^n g(nθ) + (r^{m+1}g((m−1)θ) + r^{m+2}g(mθ) − r^{k+1}g((k−1)θ) − r^{k+2}g(kθ))/(1−r²)."""
    t = math.radians(theta)
    r = np.asarray(r, dtype=float)
    total = sum(r ** n * trig(n * t) for n in range(k + 1, m + 1))
    numerator = (r ** (m + 1) * trig((m - 1) * t) + r ** (m + 2) * trig(m * t)
                 - r ** (k + 1) * trig((k - 1) * t) - r ** (k + 2) * trig(k * t))
    total = total + numerator / _one_minus_r2(r)
    return total if np.ndim(total) else float(total)


def f_top(theta, r):
    """y_k − y_0; positive when R^k(LR)^∞ rises above (LR)^∞."""
    k = turn_count(ExtremeKind.TOP, theta)
    t = math.radians(theta)
    r = np.asarray(r, dtype=float)
    total = sum(r ** n * math.cos(n * t) for n in range(k + 1))
    numerator = (r ** (k + 1) * math.cos((k - 1) * t) + r ** (k + 2) * math.cos(k * t)
                 - 1.0 - r * math.cos(t))
    total = total + numerator / _one_minus_r2(r)
    return total if np.ndim(total) else float(total)


def f_bottom(theta, r):
    """y_m − y_k; negative when R^m(LR)^∞ drops below the classical bottom."""
    return _rewound_difference(math.cos, theta, r,
                               turn_count(ExtremeKind.BOTTOM, theta),
                               second_turn_count(ExtremeKind.BOTTOM, theta))


def f_side(theta, r):
    """x_m − x_k; positive when R^m(LR)^∞ reaches further right."""
    return _rewound_difference(math.sin, theta, r,
                               turn_count(ExtremeKind.SIDE, theta),
                               second_turn_count(ExtremeKind.SIDE, theta))


def n_top(theta):
    k = turn_count(ExtremeKind.TOP, theta)
    t = math.radians(theta)
    return math.cos((k - 1) * t) + math.cos(k * t) - 1.0 - math.cos(t)


def _rewound_numerator(trig, kind, theta):
    k = turn_count(kind, theta)
    m = second_turn_count(kind, theta)
    t = math.radians(theta)
    return trig((m - 1) * t) + trig(m * t) - trig((k - 1) * t) - trig(k * t)


def n_bottom(theta):
    return _rewound_numerator(math.cos, ExtremeKind.BOTTOM, theta)


def n_side(theta):
    return _rewound_numerator(math.sin, ExtremeKind.SIDE, theta)


_DIFFERENCES = {ExtremeKind.TOP: f_top, ExtremeKind.BOTTOM: f_bottom, ExtremeKind.SIDE: f_side}
_NUMERATORS = {ExtremeKind.TOP: n_top, ExtremeKind.BOTTOM: n_bottom, ExtremeKind.SIDE: n_side}


def difference(kind, theta, r):
    return _DIFFERENCES[kind](theta, r)


def numerator(kind, theta):
    return _NUMERATORS[kind](theta)


def limit_at_one(kind, theta):
    """lim f_θ(r) as r → 1⁻.

    Infinite with the sign of N(θ) unless N vanishes; then L'Hôpital gives the
    finite value (−(k/2)(1 + cos θ) for the top at θ = 360°/k).
    """
    n_value = numerator(kind, theta)
    if abs(n_value) > NUMERATOR_ZERO:
        return math.copysign(math.inf, n_value)
    t = math.radians(theta)
    if kind is ExtremeKind.TOP:
        k = turn_count(kind, theta)
        head = sum(math.cos(n * t) for n in range(k + 1))
        slope = (k + 1) * math.cos((k - 1) * t) + (k + 2) * math.cos(k * t) - math.cos(t)
        return head - slope / 2.0
    trig = math.cos if kind is ExtremeKind.BOTTOM else math.sin
    k = turn_count(kind, theta)
    m = second_turn_count(kind, theta)
    head = sum(trig(n * t) for n in range(k + 1, m + 1))
    slope = ((m + 1) * trig((m - 1) * t) + (m + 2) * trig(m * t)
             - (k + 1) * trig((k - 1) * t) - (k + 2) * trig(k * t))
    return head - slope / 2.0


def small_r_law(kind, theta):
    """Leading term (coefficient, power) of f_θ(r) as r → 0⁺."""
    t = math.radians(theta)
    if kind is ExtremeKind.TOP:
        return math.cos(2 * t) - 1.0, 2
    k = turn_count(kind, theta)
    exact = abs(k * theta - kind.threshold) < INTEGER_GUARD * theta
    if kind is ExtremeKind.BOTTOM:
        if exact:
            return 1.0 - math.cos(2 * t), k + 2
        return -2.0 * math.sin(t) * math.sin(k * t), k + 1
    if exact:
        return -2.0 * math.sin(t) ** 2, k + 2
    return 2.0 * math.sin(t) * math.cos(k * t), k + 1


@dataclass(frozen=True)
class Extent:
    top: float
    bottom: float
    right: float
    left: float
    witness_top: Address
    witness_bottom: Address
    witness_right: Address
    certified: bool = False

    @property
    def witness_left(self):
        return self.witness_right.mirror()


LR_INF = Address((), (Turn.L, Turn.R))


def extent(p):
    """Extremes of the branch tips over the candidate addresses.

    The classical candidate wins ties; ``certified`` is left to the oracle.
    """
    k_top = turn_count(ExtremeKind.TOP, p.theta)
    y_zero = y_lr_inf(p)
    y_wound = wound_y(p.theta, p.r, k_top)
    if y_wound > y_zero:
        top, witness_top = y_wound, wound_address(k_top)
    else:
        top, witness_top = y_zero, LR_INF

    k_bot = turn_count(ExtremeKind.BOTTOM, p.theta)
    m_bot = second_turn_count(ExtremeKind.BOTTOM, p.theta)
    y_k = wound_y(p.theta, p.r, k_bot)
    y_m = wound_y(p.theta, p.r, m_bot)
    if y_m < y_k:
        bottom, witness_bottom = y_m, wound_address(m_bot)
    else:
        bottom, witness_bottom = y_k, wound_address(k_bot)

    k_side = turn_count(ExtremeKind.SIDE, p.theta)
    m_side = second_turn_count(ExtremeKind.SIDE, p.theta)
    x_k = wound_x(p.theta, p.r, k_side)
    x_m = wound_x(p.theta, p.r, m_side)
    if x_m > x_k:
        right, witness_right = x_m, wound_address(m_side)
    else:
        right, witness_right = x_k, wound_address(k_side)

    result = Extent(top=top, bottom=bottom, right=right, left=-right,
                    witness_top=witness_top, witness_bottom=witness_bottom,
                    witness_right=witness_right)
    logger.debug(f"Extent at theta={p.theta}, r={p.r}: {result}")
    return result

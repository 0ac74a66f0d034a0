"""Critical scaling factors r_T, r_B and r_S.

Above the critical factor the rewound candidate R^k(LR)^∞ (top) or
R^m(LR)^∞ (bottom, side) overtakes the classical extremal tip. Closed forms
are used where they exist; elsewhere the root of f_θ is located by a sign
scan over (0, 1) and refined with a bracketed solver.
"""
import logging
import math
import multiprocessing
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from src.config import get_setting
from src.errors import InvalidParamsError
from src.extremal import INTEGER_GUARD, ExtremeKind, check_theta, difference, numerator

logger = logging.getLogger(__name__)

CROSS_CHECK_TOL = 1e-8
RESIDUAL_TOL = 1e-10


class CriticalStatus(Enum):
    FOUND = 'Found'
    NO_SOLUTION_BELOW_ONE = 'NoSolutionBelowOne'
    UNDEFINED_SPECIAL_ANGLE = 'UndefinedSpecialAngle'


class SolveMethod(Enum):
    CLOSED_FORM = 'closed-form'
    NUMERIC = 'numeric'


@dataclass(frozen=True)
class CriticalResult:
    kind: ExtremeKind
    theta: float
    status: CriticalStatus
    method: SolveMethod
    r_value: Optional[float] = None
    residual: Optional[float] = None
    # sign changes of f_θ seen by the scan; more than one flags extra roots
    sign_changes: int = 0
    # False when |f_θ(r_value)| stays above RESIDUAL_TOL (roots pressed against r = 1)
    precise: bool = True

    @property
    def found(self):
        return self.status is CriticalStatus.FOUND

    @property
    def symbol(self):
        return {ExtremeKind.TOP: 'r_T', ExtremeKind.BOTTOM: 'r_B', ExtremeKind.SIDE: 'r_S'}[self.kind]


def is_case1_angle(theta):
    """k when θ = 360°/k (within 1e-9 in 360/θ), else None."""
    check_theta(theta)
    q = 360.0 / theta
    k = round(q)
    if abs(q - k) < INTEGER_GUARD:
        return int(k)
    return None


def _scan(kind, theta):
    """First bracket [a, b] (or exact zero) of f_θ on the scan grid, and the sign-change count."""
    step = get_setting('scan_step')
    ceiling = get_setting('r_ceiling')
    grid = np.arange(1, int(round(1.0 / step))) * step
    grid = np.append(grid[grid < ceiling], ceiling)
    values = difference(kind, theta, grid)
    signs = np.sign(values)
    nonzero = signs[signs != 0]
    changes = int(np.count_nonzero(nonzero[:-1] != nonzero[1:]))

    crossings = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    zeros = np.nonzero(signs == 0)[0]
    first_crossing = crossings[0] if crossings.size else None
    first_zero = zeros[0] if zeros.size else None
    if first_zero is not None and (first_crossing is None or first_zero <= first_crossing):
        return (grid[first_zero], grid[first_zero]), max(changes, 1)
    if first_crossing is not None:
        return (grid[first_crossing], grid[first_crossing + 1]), changes
    return None, changes


def _found(kind, theta, r_value, method, sign_changes):
    residual = float(abs(difference(kind, theta, r_value)))
    precise = residual < RESIDUAL_TOL
    if not precise:
        logger.warning(f"f_{kind.value} at theta={theta} leaves residual {residual:.3e} "
                       f"at r={float(r_value):.12f}, above {RESIDUAL_TOL}")
    return CriticalResult(kind, theta, CriticalStatus.FOUND, method,
                          r_value=float(r_value), residual=residual,
                          sign_changes=sign_changes, precise=precise)


def solve_numeric(kind, theta):
    """Smallest root of f_θ in (0, 1 − 1e-9) by scan and bracketed refinement."""
    check_theta(theta)
    bracket, changes = _scan(kind, theta)
    if bracket is None:
        return CriticalResult(kind, theta, CriticalStatus.NO_SOLUTION_BELOW_ONE,
                              SolveMethod.NUMERIC, sign_changes=changes)
    a, b = bracket
    if a == b:
        root = a
    else:
        root = brentq(lambda r: difference(kind, theta, r), a, b,
                      xtol=get_setting('root_xtol'), maxiter=200)
    if changes > 1:
        logger.info(f"f_{kind.value} at theta={theta} changes sign {changes} times on (0, 1)")
    return _found(kind, theta, root, SolveMethod.NUMERIC, changes)


def _closed_form_top(theta):
    c = math.cos(math.radians(theta))
    if 90.0 < theta < 120.0:
        return -(c + math.sqrt(1.0 - 3.0 * c * c)) / (4.0 * c * c - 1.0)
    if 120.0 < theta < 180.0:
        return -1.0 / (2.0 * c)
    return None


def r_top(theta):
    """r_T: where R^k(LR)^∞ overtakes (LR)^∞ as the top."""
    k = is_case1_angle(theta)
    if k is not None:
        return CriticalResult(ExtremeKind.TOP, theta, CriticalStatus.UNDEFINED_SPECIAL_ANGLE,
                              SolveMethod.CLOSED_FORM)
    closed = _closed_form_top(theta)
    if closed is None:
        return solve_numeric(ExtremeKind.TOP, theta)
    _, changes = _scan(ExtremeKind.TOP, theta)
    return _found(ExtremeKind.TOP, theta, closed, SolveMethod.CLOSED_FORM, changes)


def r_bottom(theta):
    """r_B: where R^m(LR)^∞ drops below R^k(LR)^∞ as the bottom."""
    check_theta(theta)
    # at 144 degrees N_B vanishes and the closed form lands on r = 1
    if theta < 144.0 - INTEGER_GUARD:
        return solve_numeric(ExtremeKind.BOTTOM, theta)
    c = math.cos(math.radians(theta))
    closed = 2.0 * c / (1.0 - 4.0 * c * c)
    numeric = solve_numeric(ExtremeKind.BOTTOM, theta)
    if not 0.0 < closed < get_setting('r_ceiling'):
        return CriticalResult(ExtremeKind.BOTTOM, theta, CriticalStatus.NO_SOLUTION_BELOW_ONE,
                              SolveMethod.CLOSED_FORM, sign_changes=numeric.sign_changes)
    if not numeric.found or abs(numeric.r_value - closed) > CROSS_CHECK_TOL:
        logger.warning(f"r_B closed form {closed} disagrees with numeric root "
                       f"{numeric.r_value} at theta={theta}")
    return _found(ExtremeKind.BOTTOM, theta, closed, SolveMethod.CLOSED_FORM, numeric.sign_changes)


def r_side(theta):
    """r_S: where R^m(LR)^∞ reaches further right than R^k(LR)^∞ (numeric only)."""
    return solve_numeric(ExtremeKind.SIDE, theta)


_SOLVERS = {ExtremeKind.TOP: r_top, ExtremeKind.BOTTOM: r_bottom, ExtremeKind.SIDE: r_side}


def critical_factor(kind, theta):
    return _SOLVERS[kind](theta)


@dataclass(frozen=True)
class SweepRow:
    theta: float
    result: CriticalResult
    numerator: float


def _sweep_row(args):
    kind, theta = args
    return SweepRow(theta, critical_factor(kind, theta), numerator(kind, theta))


def sweep_angles(theta_min, theta_max, step):
    if not 0.0 < theta_min < theta_max < 180.0:
        raise InvalidParamsError(
            f"sweep needs 0 < from < to < 180, got from={theta_min}, to={theta_max}")
    if not step > 0.0:
        raise InvalidParamsError(f"sweep step must be positive, got {step}")
    count = int(math.floor((theta_max - theta_min) / step + 1e-9)) + 1
    return [round(theta_min + i * step, 10) for i in range(count)]


def sweep(kind, theta_min, theta_max, step, workers=1):
    """One row per sampled θ, ordered by θ whatever the worker count."""
    thetas = sweep_angles(theta_min, theta_max, step)
    tasks = [(kind, theta) for theta in thetas]
    logger.info(f"Sweeping {kind.value} over {len(thetas)} angles with {workers} worker(s)")
    if workers > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=workers) as pool:
            rows = pool.map(_sweep_row, tasks)
    else:
        rows = [_sweep_row(task) for task in tasks]
    return rows

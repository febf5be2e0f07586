"""
Position of alpha relative to the parabola {(1 + i w)^2 : w real}.
"""

from dataclasses import dataclass

import numpy as np
from loguru import logger
from scipy.optimize import minimize_scalar

from src.enums.kinds_enum import Region

BOUNDARY_TOLERANCE = 1e-12
SCAN_POINTS = 4001


@dataclass(frozen=True)
class RegionClass:
    region: Region
    distance: float
    omega_star: float
    tests_agree: bool = True


def _parabola_gap(alpha: complex, omega):
    return np.abs(alpha - (1 + 1j * np.asarray(omega)) ** 2)


def closest_parabola_point(alpha: complex) -> tuple[float, float]:
    """
    Returns (omega*, distance). Critical points of |alpha - (1 + i w)^2|^2 are the
    real roots of w^3 + (alpha_R + 1) w - alpha_I; a dense scan guards the choice.
    """
    alpha = complex(alpha)
    if not (np.isfinite(alpha.real) and np.isfinite(alpha.imag)):
        raise ValueError(f"alpha must be finite, got {alpha}")

    roots = np.roots([1.0, 0.0, alpha.real + 1.0, -alpha.imag])
    candidates = np.append(roots.real, 0.0)
    # one Newton step on each candidate
    cubic = candidates**3 + (alpha.real + 1.0) * candidates - alpha.imag
    slope = 3 * candidates**2 + alpha.real + 1.0
    slope = np.where(slope == 0, 1.0, slope)
    polished = candidates - cubic / slope
    candidates = np.concatenate([candidates, polished])
    gaps = _parabola_gap(alpha, candidates)
    best = int(np.argmin(gaps))
    omega, distance = float(candidates[best]), float(gaps[best])

    span = 2.0 + 2.0 * np.sqrt(abs(alpha))
    scan = np.linspace(-span, span, SCAN_POINTS)
    scan_gaps = _parabola_gap(alpha, scan)
    k = int(np.argmin(scan_gaps))
    if scan_gaps[k] < distance * (1 - 1e-9):
        logger.debug(f"Cubic critical points missed the minimum for alpha={alpha}; refining scan")
        lo, hi = scan[max(k - 1, 0)], scan[min(k + 1, SCAN_POINTS - 1)]
        result = minimize_scalar(
            lambda w: _parabola_gap(alpha, w),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-13},
        )
        omega, distance = float(result.x), float(result.fun)
    return omega, distance


def parabola_distance(alpha: complex) -> float:
    """
    Distance from alpha to the parabola (1 + i R)^2.

    Examples:
        parabola_distance(0.25) == 0.75, parabola_distance(-3 + 4j) == 0.
    """
    return closest_parabola_point(alpha)[1]


def region_classify(alpha: complex, tolerance: float = BOUNDARY_TOLERANCE) -> RegionClass:
    """
    inside: |Re sqrt(alpha)| < 1, equivalently alpha_R + |alpha| < 2.
    boundary: within ``tolerance`` of the parabola.
    """
    alpha = complex(alpha)
    omega, distance = closest_parabola_point(alpha)
    cartesian_inside = alpha.real + abs(alpha) < 2
    branch_inside = abs(np.sqrt(alpha).real) < 1
    agree = cartesian_inside == branch_inside

    if distance <= tolerance:
        region = Region.BOUNDARY
    else:
        region = Region.INSIDE if cartesian_inside else Region.OUTSIDE
        if not agree:
            logger.warning(
                f"Region tests disagree at alpha={alpha} (distance {distance:.3e})"
            )
    return RegionClass(region, distance, omega, agree or region == Region.BOUNDARY)

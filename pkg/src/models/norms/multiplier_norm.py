import numpy as np
from loguru import logger
from scipy.optimize import minimize_scalar

from .base_norm import NormEstimate, NormEstimator, check_norm_parameter
from src.enums.kinds_enum import NormKind, NormMethod
from src.models.grid import CouplingParameter

SCAN_POINTS = 4001


def _multiplier(alpha: complex, omega):
    return 1.0 / np.abs((1 + 1j * np.asarray(omega)) ** 2 - alpha)


def multiplier_sup(p: CouplingParameter, kind: NormKind = NormKind.Q) -> NormEstimate:
    """
    Supremum over real w of |1 / ((1 + i w)^2 - m^2)|, the Fourier multiplier of
    Q_alpha (and of Z_m) after the dilation to the line.
    """
    check_norm_parameter(p, kind)
    alpha = p.alpha
    span = 4.0 + 2.0 * np.sqrt(abs(alpha))
    omega = np.linspace(-span, span, SCAN_POINTS)
    values = _multiplier(alpha, omega)
    k = int(np.argmax(values))

    lo, hi = omega[max(k - 1, 0)], omega[min(k + 1, SCAN_POINTS - 1)]
    result = minimize_scalar(
        lambda w: -_multiplier(alpha, w),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-12},
    )
    if -result.fun >= values[k]:
        omega_star, value = float(result.x), float(-result.fun)
    else:
        omega_star, value = float(omega[k]), float(values[k])
    logger.debug(f"Multiplier sup at alpha={alpha}: {value:.12g} (w*={omega_star:.6g})")
    return NormEstimate(value, NormMethod.MULTIPLIER_SUP, omega_star=omega_star)


class MultiplierNorm(NormEstimator):
    method = NormMethod.MULTIPLIER_SUP

    def estimate(self, p, kind: NormKind, grid=None) -> NormEstimate:
        return multiplier_sup(p, kind)

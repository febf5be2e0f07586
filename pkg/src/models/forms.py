"""
First-order operators A_rho = d/dx - rho/x and the factorizations

    L_alpha = -A_{-rho} A_rho,  rho = 1/2 + m  or  rho = 1/2 - m,

checked through the bilinear pairing <f, g> = int f g dx on interior bumps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from loguru import logger

from src.enums.kinds_enum import FactorSign, Realization
from src.models.errors import ParameterRegionError
from src.models.grid import (
    CouplingParameter,
    GridFunction,
    RadialGrid,
    apply_bessel,
    differentiate,
)

STENCIL_ACCURACY = 8
EDGE_NODES = 5


@dataclass(frozen=True)
class FirstOrderSpec:
    rho: complex
    realization: Realization = Realization.MIN


@dataclass(frozen=True)
class FormResult:
    m: complex
    sign: FactorSign
    value_plus: Optional[complex]
    value_minus: Optional[complex]
    reference: complex
    deviation_plus: Optional[float]
    deviation_minus: Optional[float]
    composition_residual: float


@dataclass(frozen=True)
class PositivityResult:
    m: float
    value: float
    nonnegative: bool
    extension: str
    reference: float
    deviation: float


def apply_first_order(s: FirstOrderSpec, f: GridFunction) -> GridFunction:
    derivative = differentiate(f, 1, accuracy=STENCIL_ACCURACY)
    return GridFunction(f.grid, derivative.values - s.rho * f.values / f.grid.x)


def bilinear_pairing(f: GridFunction, g: GridFunction) -> complex:
    """int f g dx, no complex conjugation."""
    if f.grid != g.grid:
        raise ValueError("Bilinear pairing of functions on different grids")
    return complex(np.sum(f.grid.weights * f.values * g.values))


def factor_rho(m: complex, sign: FactorSign) -> complex:
    return 0.5 + m if FactorSign(sign) == FactorSign.PLUS else 0.5 - m


def _coupling(m: complex) -> CouplingParameter:
    return CouplingParameter(m, allow_negative=True)


def _check_sign(m: complex, sign: FactorSign):
    if FactorSign(sign) == FactorSign.MINUS and not complex(m).real > 0:
        raise ParameterRegionError(f"The minus factorization needs Re(m) > 0, got m={m}")


def _scaled_gap(value: complex, reference: complex) -> float:
    return abs(value - reference) / max(abs(reference), 1.0)


def composition_residual(m: complex, sign: FactorSign, g: GridFunction) -> float:
    """||-A_{-rho}(A_rho g) - L_alpha g|| / ||L_alpha g|| away from the grid ends."""
    rho = factor_rho(m, sign)
    inner = apply_first_order(FirstOrderSpec(rho, Realization.MAX), g)
    outer = apply_first_order(FirstOrderSpec(-rho, Realization.MIN), inner)
    lg = apply_bessel(_coupling(m), g, accuracy=STENCIL_ACCURACY)

    interior = np.zeros(g.grid.n, dtype=bool)
    interior[EDGE_NODES : g.grid.n - EDGE_NODES] = True
    scale = lg.norm(interior)
    gap = (-outer - lg).norm(interior)
    return gap / scale if scale > 0 else gap


def _form(rho: complex, f: GridFunction, g: GridFunction) -> complex:
    s = FirstOrderSpec(rho)
    return bilinear_pairing(apply_first_order(s, f), apply_first_order(s, g))


def factorization_check(
    m: complex, sign: FactorSign, f: GridFunction, g: GridFunction
) -> FormResult:
    """
    Compares <A_rho f, A_rho g> with <f, L_alpha g> for the requested sign; the
    other sign is filled in whenever it is defined (minus needs Re(m) > 0).
    """
    sign = FactorSign(sign)
    _check_sign(m, sign)
    p = _coupling(m)
    reference = bilinear_pairing(f, apply_bessel(p, g, accuracy=STENCIL_ACCURACY))

    plus = _form(factor_rho(m, FactorSign.PLUS), f, g)
    minus = _form(factor_rho(m, FactorSign.MINUS), f, g) if p.m.real > 0 else None
    result = FormResult(
        m=p.m,
        sign=sign,
        value_plus=plus,
        value_minus=minus,
        reference=reference,
        deviation_plus=_scaled_gap(plus, reference),
        deviation_minus=None if minus is None else _scaled_gap(minus, reference),
        composition_residual=composition_residual(m, sign, g),
    )
    logger.debug(
        f"Factorization m={p.m} {sign.value}: plus dev {result.deviation_plus:.2e}, "
        f"composition {result.composition_residual:.2e}"
    )
    return result


def two_factorizations_agree(m: complex, f: GridFunction, g: GridFunction) -> float:
    """|<A_+ f, A_+ g> - <A_- f, A_- g>| / max(|<A_+ f, A_+ g>|, 1)."""
    _check_sign(m, FactorSign.MINUS)
    plus = _form(factor_rho(m, FactorSign.PLUS), f, g)
    minus = _form(factor_rho(m, FactorSign.MINUS), f, g)
    return abs(plus - minus) / max(abs(plus), 1.0)


def transpose_check(rho: complex, f: GridFunction, g: GridFunction) -> float:
    """<A_rho f, g> = -<f, A_{-rho} g> when no boundary terms survive."""
    left = bilinear_pairing(apply_first_order(FirstOrderSpec(rho), f), g)
    right = -bilinear_pairing(f, apply_first_order(FirstOrderSpec(-rho, Realization.MAX), g))
    return _scaled_gap(left, right)


def homogeneity_check(
    rho: complex,
    f_fn: Callable[[np.ndarray], np.ndarray],
    g_fn: Callable[[np.ndarray], np.ndarray],
    lam: float,
    grid: RadialGrid,
) -> float:
    """
    With f_lam(x) = lam^{1/2} f(lam x), A_rho being homogeneous of degree -1 gives
    <A f_lam, A g_lam> = lam^2 <A f, A g>.
    """
    def dilated(fn):
        return GridFunction.from_callable(grid, lambda x: np.sqrt(lam) * fn(lam * x))

    base = _form(rho, GridFunction.from_callable(grid, f_fn), GridFunction.from_callable(grid, g_fn))
    scaled = _form(rho, dilated(f_fn), dilated(g_fn))
    return _scaled_gap(scaled, lam**2 * base)


def extension_label(m: float) -> str:
    """Which self-adjoint extension of L_{m^2} on C_c^infinity the operator H_m is."""
    m = float(m)
    if m <= -1:
        raise ParameterRegionError(f"H_m is defined for m > -1, got {m}")
    if m >= 1:
        return "essentially self-adjoint on C_c^infinity; form domain H_0^1"
    if m > 0:
        return "Friedrichs extension; form domain H_0^1"
    if m == 0:
        return "Friedrichs and Krein extension"
    return "Krein extension; form domain H_0^1 + C x^(1/2+m) xi"


def positivity_check(m: float, f: GridFunction) -> PositivityResult:
    """
    (A_{1/2+m} f | A_{1/2+m} f) for real m > -1 and real f, together with
    <f, L_alpha f> with L_alpha applied by finite differences, which it must reproduce.
    """
    if np.iscomplexobj(m) and complex(m).imag != 0:
        raise ValueError(f"Positivity is stated for real m, got {m}")
    m = float(np.real(m))
    if np.any(f.values.imag != 0):
        raise ValueError("Positivity check expects a real-valued function")
    extension = extension_label(m)
    af = apply_first_order(FirstOrderSpec(0.5 + m), f)
    value = af.norm() ** 2
    reference = bilinear_pairing(f, apply_bessel(_coupling(m), f, accuracy=STENCIL_ACCURACY)).real
    deviation = _scaled_gap(value, reference)
    if deviation > 1e-6:
        logger.warning(f"Positivity at m={m}: form {value:.8g} vs <f, L f> {reference:.8g}")
    return PositivityResult(m, value, bool(value >= -1e-10), extension, reference, deviation)

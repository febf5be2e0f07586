"""
Numerical checks of the weighted inequalities behind the boundedness of Q_alpha:

- estima:  ||Q_{1/4} f|| <= 4/3 ||f||
- rellich: int |u|^2 / x^4 <= 16/9 int |u''|^2
- hardy:   int |u|^2 / x^2 <= 4 int |u'|^2
- kato_bound: ||x^{-2} f|| <= ||g|| / dist(alpha, (1+iR)^2) for f = G^{a->} g
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from loguru import logger
from scipy.integrate import cumulative_trapezoid

from src.enums.kinds_enum import InequalityKind, KernelKind, Region
from src.models.errors import ParameterRegionError
from src.models.grid import (
    CouplingParameter,
    GridFunction,
    RadialGrid,
    differentiate,
    limit_at_zero,
)
from src.models.kernels import KernelSpec, apply_green
from src.models.region import region_classify

RATIO_SLACK = 1e-6
VANISHING_TOLERANCE = 1e-6

ESTIMA_GRID = RadialGrid(-30.0, 12.0, 4096)
DERIVATIVE_GRID = RadialGrid(-30.0, 6.0, 4096)


@dataclass(frozen=True)
class InequalityRecord:
    kind: InequalityKind
    lhs: float
    rhs: float
    ratio: float
    holds: bool
    detail: Optional[dict] = None


def _record(kind, lhs, rhs, detail=None) -> InequalityRecord:
    ratio = lhs / rhs if rhs > 0 else (0.0 if lhs == 0 else np.inf)
    record = InequalityRecord(kind, float(lhs), float(rhs), float(ratio), bool(ratio <= 1 + RATIO_SLACK), detail)
    if not record.holds:
        logger.warning(f"{kind.value} inequality violated: ratio {ratio:.8g}")
    return record


def _estima_norm_sq(f_fn, grid: RadialGrid) -> float:
    """||Q_{1/4} f||^2 with g = (x F0 - F1) / x^2, F_k(x) = int_0^x y^k f(y) dy."""
    x, t = grid.x, grid.t
    f = np.asarray(f_fn(x), dtype=complex)
    # f is taken constant below the first node
    f0_start = f[0] * x[0]
    f1_start = f[0] * x[0] ** 2 / 2
    F0 = f0_start + cumulative_trapezoid(f * x, t, initial=0)
    F1 = f1_start + cumulative_trapezoid(f * x**2, t, initial=0)
    g = (x * F0 - F1) / x**2
    body = np.sum(grid.weights * np.abs(g) ** 2) + abs(g[0]) ** 2 * x[0]

    # f vanishes beyond the last node, so g = F0/x - F1/x^2 there
    X, a, b = x[-1], F0[-1], F1[-1]
    tail = abs(a) ** 2 / X - np.real(a * np.conj(b)) / X**2 + abs(b) ** 2 / (3 * X**3)
    return float(body + tail)


def estima_check(f_fn: Callable, grid: RadialGrid = ESTIMA_GRID) -> InequalityRecord:
    """
    Both norms are Richardson-extrapolated over the grid and its subdivision.
    """
    fine = grid.subdivided()
    g_sq = (4 * _estima_norm_sq(f_fn, fine) - _estima_norm_sq(f_fn, grid)) / 3

    def f_norm_sq(target):
        return GridFunction.from_callable(target, f_fn).norm() ** 2

    f_sq = (4 * f_norm_sq(fine) - f_norm_sq(grid)) / 3
    return _record(
        InequalityKind.ESTIMA,
        np.sqrt(g_sq),
        4.0 / 3.0 * np.sqrt(f_sq),
        {"g_norm_sq": g_sq, "f_norm_sq": f_sq},
    )


def _check_vanishing(u: GridFunction, orders: int, kind: InequalityKind):
    scale = max(u.norm(), 1.0)
    limits = [limit_at_zero(u)]
    if orders > 1:
        limits.append(limit_at_zero(differentiate(u, 1, accuracy=8)))
    for order, value in enumerate(limits):
        if abs(value) > VANISHING_TOLERANCE * scale:
            raise ValueError(
                f"{kind.value} needs u^({order})(0) = 0, extrapolated value is {abs(value):.3e}"
            )


def rellich_check(u_fn: Callable, grid: RadialGrid = DERIVATIVE_GRID) -> InequalityRecord:
    u = GridFunction.from_callable(grid, u_fn)
    _check_vanishing(u, 2, InequalityKind.RELLICH)
    lhs = GridFunction(grid, u.values / grid.x**2).norm() ** 2
    second = differentiate(u, 2, accuracy=8).norm() ** 2
    return _record(InequalityKind.RELLICH, lhs, 16.0 / 9.0 * second)


def hardy_check(u_fn: Callable, grid: RadialGrid = DERIVATIVE_GRID) -> InequalityRecord:
    u = GridFunction.from_callable(grid, u_fn)
    _check_vanishing(u, 1, InequalityKind.HARDY)
    lhs = GridFunction(grid, u.values / grid.x).norm() ** 2
    first = differentiate(u, 1, accuracy=8).norm() ** 2
    return _record(InequalityKind.HARDY, lhs, 4.0 * first)


def kato_bound_check(
    p: CouplingParameter, g_fn: Callable, a: float, grid: RadialGrid
) -> InequalityRecord:
    """
    ratio = ||x^{-2} f|| dist(alpha) / ||g|| with f = G^{a->} g, at most 1 inside
    the parabola.
    """
    region = region_classify(p.alpha)
    if region.region != Region.INSIDE:
        raise ParameterRegionError(
            f"The x^-2 bound needs alpha inside the parabola; alpha={p.alpha} is {region.region.value}"
        )
    g = GridFunction.from_callable(grid, g_fn).masked(grid.mask(hi=a))
    f = apply_green(KernelSpec(KernelKind.COMPRESSED_FORWARD, p, a), g)
    lhs = GridFunction(grid, f.values / grid.x**2).norm() * region.distance
    return _record(InequalityKind.KATO_BOUND, lhs, g.norm(), {"distance": region.distance})


def inequality_check(kind: InequalityKind, **inputs) -> InequalityRecord:
    """
    Dispatches on kind: estima(f_fn, grid), rellich(u_fn, grid), hardy(u_fn, grid),
    kato_bound(p, g_fn, a, grid).
    """
    checks = {
        InequalityKind.ESTIMA: estima_check,
        InequalityKind.RELLICH: rellich_check,
        InequalityKind.HARDY: hardy_check,
        InequalityKind.KATO_BOUND: kato_bound_check,
    }
    return checks[InequalityKind(kind)](**inputs)

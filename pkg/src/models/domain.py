"""
Membership of functions in the domains of the Bessel operator near the
singular endpoint x = 0.

D(L^min) = H_0^2 (f(0) = f'(0) = 0, f'' in L^2). For |Re m| < 1 the maximal
domain adds C x^{1/2+m} xi + C x^{1/2-m} xi, and D(H_m) keeps only the first
of the two. At m = 0 the pair becomes x^{1/2}, x^{1/2} log x.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np
from loguru import logger

from src.enums.kinds_enum import DomainClass, KernelKind, Region
from src.models.errors import IllConditionedFitError, ParameterRegionError
from src.models.grid import (
    CouplingParameter,
    CutoffSpec,
    GridFunction,
    RadialGrid,
    apply_bessel,
    differentiate,
    limit_at_zero,
)
from src.models.kernels import LOG_BRANCH_THRESHOLD, KernelSpec, apply_green
from src.models.region import region_classify

Sampler = Callable[[RadialGrid], GridFunction]

MEMBERSHIP_TOLERANCE = 1e-4
STABILITY_TOLERANCE = 0.05
GROWTH_TOLERANCE = 0.20
COEFFICIENT_TOLERANCE = 1e-4
PRECONDITION_TOLERANCE = 1e-2
MAX_FIT_CONDITION = 1e8


def function_sampler(fn: Callable[[np.ndarray], np.ndarray]) -> Sampler:
    return lambda grid: GridFunction.from_callable(grid, fn)


def green_sampler(spec: KernelSpec, g_fn: Callable[[np.ndarray], np.ndarray]) -> Sampler:
    """f = G g, re-solved on whatever grid is asked for."""
    return lambda grid: apply_green(spec, GridFunction.from_callable(grid, g_fn))


@dataclass(frozen=True)
class BoundaryCoefficients:
    c_plus: complex
    c_minus: complex
    residual: float
    relative_residual: float
    basis: str
    condition: float
    precondition_residual: float


@dataclass(frozen=True)
class DomainReport:
    f0_limit: complex
    f1_limit: complex
    second_derivative_norm: float
    second_derivative_ratio: float
    second_derivative_growth: list
    second_derivative_diverges: bool
    x2_weighted_norm: float
    x2_growth: list
    h20_member: bool
    classification: Optional[DomainClass] = None


@dataclass(frozen=True)
class DomainDecomposition:
    f0: GridFunction = field(metadata={"serialize": False})
    c_plus: complex
    c_minus: complex
    f0_report: DomainReport
    coefficients: BoundaryCoefficients


def boundary_basis(m: complex, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, str]:
    if abs(m) < LOG_BRANCH_THRESHOLD:
        return np.sqrt(x).astype(complex), np.sqrt(x) * np.log(x) + 0j, "power/log"
    return x ** (0.5 + m), x ** (0.5 - m), "power/power"


def particular_solution_spec(p: CouplingParameter, a: float) -> KernelSpec:
    """Compressed forward Green inside the strip |Re m| < 1, two-sided otherwise."""
    if abs(p.m.real) < 1:
        return KernelSpec(KernelKind.COMPRESSED_FORWARD, p, a)
    return KernelSpec(KernelKind.COMPRESSED_TWO_SIDED, p, a)


def boundary_coefficients(
    p: CouplingParameter,
    f: GridFunction,
    g: GridFunction,
    a: float,
    max_condition: float = MAX_FIT_CONDITION,
    precondition_tolerance: float = PRECONDITION_TOLERANCE,
) -> BoundaryCoefficients:
    """
    Fits f - G^a g = c_plus x^{1/2+m} + c_minus x^{1/2-m} on the window [x_min, a/2]
    by least squares in L^2(dx).

    Raises:
        IllConditionedFitError: If the two basis functions are numerically
            dependent on the window.
    """
    if f.grid != g.grid:
        raise ValueError("f and g live on different grids")
    grid = f.grid
    if not grid.contains(a):
        raise ValueError(f"Cutoff a={a} outside grid range [{grid.x_min}, {grid.x_max}]")
    window = grid.mask(hi=a / 2)
    if window.sum() < 3:
        raise ValueError("Fit window [x_min, a/2] holds fewer than three nodes")

    below_a = grid.mask(hi=a)
    below_a[:3] = False
    below_a[-3:] = False
    lf = apply_bessel(p, f, accuracy=8)
    scale = g.norm(below_a) + GridFunction(grid, f.values / grid.x**2).norm(below_a)
    precondition = (lf - g).norm(below_a) / scale if scale > 0 else 0.0
    if precondition > precondition_tolerance:
        logger.warning(
            f"g differs from L f on (0, a) by {precondition:.2e} relative; coefficients may be off"
        )

    remainder = f.values
    if np.any(g.values[below_a] != 0):
        remainder = remainder - apply_green(particular_solution_spec(p, a), g).values

    b_plus, b_minus, tag = boundary_basis(p.m, grid.x)
    root_w = np.sqrt(grid.weights[window])
    design = np.column_stack([b_plus[window], b_minus[window]]) * root_w[:, None]
    column_norms = np.linalg.norm(design, axis=0)
    design = design / column_norms
    singular = np.linalg.svd(design, compute_uv=False)
    condition = float(singular[0] / singular[-1]) if singular[-1] > 0 else np.inf
    if condition > max_condition:
        raise IllConditionedFitError(
            f"Basis x^(1/2+m), x^(1/2-m) is ill-conditioned on the window (cond {condition:.2e}) at m={p.m}"
        )

    rhs = remainder[window] * root_w
    solution, *_ = np.linalg.lstsq(design, rhs, rcond=None)
    c_plus, c_minus = solution / column_norms
    misfit = float(np.linalg.norm(design @ solution - rhs))
    rhs_norm = float(np.linalg.norm(rhs))
    logger.debug(f"Boundary fit at m={p.m}: c+={c_plus:.6g} c-={c_minus:.6g} cond={condition:.3g}")
    return BoundaryCoefficients(
        c_plus=complex(c_plus),
        c_minus=complex(c_minus),
        residual=misfit,
        relative_residual=misfit / rhs_norm if rhs_norm > 0 else 0.0,
        basis=tag,
        condition=condition,
        precondition_residual=float(precondition),
    )


def _relative_growth(values: list[float]) -> list[float]:
    return [
        (b - a) / a if a > 0 else (np.inf if b > 0 else 0.0)
        for a, b in zip(values, values[1:])
    ]


def h20_membership(
    sampler: Sampler,
    grid: RadialGrid,
    refinements: int = 3,
    reference_norm: Optional[float] = None,
    limit_tolerance: float = MEMBERSHIP_TOLERANCE,
    stability_tolerance: float = STABILITY_TOLERANCE,
    growth_tolerance: float = GROWTH_TOLERANCE,
) -> DomainReport:
    """
    Decides f in H_0^2 from extrapolated f(0), f'(0), the stability of the
    discrete ||f''|| when the spacing is halved, and its behaviour under
    ``refinements`` extensions toward x = 0: growth by at least ``growth_tolerance``
    at every step is read as f'' not in L^2 and rules membership out. With
    ``refinements=0`` only the limits and the stability are used.

    Limits are compared with ``limit_tolerance * reference_norm`` (default ||f||).
    """
    f = sampler(grid)
    scale = f.norm() if reference_norm is None else reference_norm
    f0 = limit_at_zero(f)
    f1 = limit_at_zero(differentiate(f, 1))

    second = differentiate(f, 2).norm()
    second_fine = differentiate(sampler(grid.subdivided()), 2).norm()
    floor = limit_tolerance * scale
    ratio = second_fine / second if second > 0 else 1.0
    stable = (
        abs(second_fine - second) <= stability_tolerance * max(second, second_fine)
        or max(second, second_fine) <= floor
    )

    second_norms, x2_norms = [second], []
    current = grid
    for step in range(refinements + 1):
        sample = f if step == 0 else sampler(current)
        if step > 0:
            second_norms.append(differentiate(sample, 2).norm())
        x2_norms.append(GridFunction(current, sample.values / current.x**2).norm())
        current = current.refined()
    growth = _relative_growth(second_norms)
    diverges = bool(growth) and all(r >= growth_tolerance for r in growth)

    member = bool(abs(f0) < floor and abs(f1) < floor and stable and not diverges)
    logger.debug(
        f"H_0^2 test: f(0)={abs(f0):.2e} f'(0)={abs(f1):.2e} ||f''|| ratio={ratio:.4f} member={member}"
    )
    return DomainReport(
        f0_limit=f0,
        f1_limit=f1,
        second_derivative_norm=second,
        second_derivative_ratio=ratio,
        second_derivative_growth=growth,
        second_derivative_diverges=diverges,
        x2_weighted_norm=x2_norms[0],
        x2_growth=_relative_growth(x2_norms),
        h20_member=member,
        classification=DomainClass.MIN_DOMAIN if member else None,
    )


def _require_inside(p: CouplingParameter):
    region = region_classify(p.alpha).region
    if region != Region.INSIDE:
        raise ParameterRegionError(
            f"Decomposition needs |Re sqrt(alpha)| < 1; alpha={p.alpha} is {region.value}"
        )


def _fit(p, sampler, grid, a) -> BoundaryCoefficients:
    f = sampler(grid)
    return boundary_coefficients(p, f, apply_bessel(p, f, accuracy=8), a)


def domain_decompose(
    p: CouplingParameter,
    sampler: Sampler,
    grid: RadialGrid,
    a: float = 0.5,
    cutoff: CutoffSpec = CutoffSpec(),
    **membership,
) -> DomainDecomposition:
    """
    Splits f = f0 + c_plus x^{1/2+m} xi + c_minus x^{1/2-m} xi and tests f0 for
    H_0^2 membership. Coefficients are fitted on ``grid`` and on its subdivision
    and combined by Richardson extrapolation in the spacing.
    """
    _require_inside(p)
    coarse = _fit(p, sampler, grid, a)
    fine = _fit(p, sampler, grid.subdivided(), a)
    c_plus = (4 * fine.c_plus - coarse.c_plus) / 3
    c_minus = (4 * fine.c_minus - coarse.c_minus) / 3

    def f0_sampler(target: RadialGrid) -> GridFunction:
        b_plus, b_minus, _ = boundary_basis(p.m, target.x)
        xi = cutoff(target.x)
        return sampler(target) - GridFunction(target, (c_plus * b_plus + c_minus * b_minus) * xi)

    reference = sampler(grid).norm()
    # extending the grid would amplify the fit error in c_minus x^{1/2-m}
    report = h20_membership(f0_sampler, grid, refinements=0, reference_norm=reference, **membership)
    return DomainDecomposition(
        f0=f0_sampler(grid),
        c_plus=complex(c_plus),
        c_minus=complex(c_minus),
        f0_report=report,
        coefficients=replace(fine, c_plus=complex(c_plus), c_minus=complex(c_minus)),
    )


def classify_domain(
    p: CouplingParameter,
    sampler: Sampler,
    grid: RadialGrid,
    a: float = 0.5,
    coefficient_tolerance: float = COEFFICIENT_TOLERANCE,
    **membership,
) -> DomainReport:
    """
    min_domain: f in H_0^2. Hm_only: f in D(H_m) but not H_0^2 (c_minus = 0).
    max_only: f in D(L^max) with c_minus != 0. outside: none of these.
    Keyword arguments go to `h20_membership`.
    """
    report = h20_membership(sampler, grid, **membership)
    if report.h20_member:
        return report
    classification = DomainClass.OUTSIDE
    if region_classify(p.alpha).region == Region.INSIDE:
        try:
            parts = domain_decompose(p, sampler, grid, a, **membership)
        except IllConditionedFitError as error:
            logger.warning(f"Domain classification fell back to outside: {error}")
        else:
            if parts.f0_report.h20_member:
                if abs(parts.c_minus) <= coefficient_tolerance:
                    classification = DomainClass.HM_ONLY
                else:
                    classification = DomainClass.MAX_ONLY
    return replace(report, classification=classification)

"""
The Re(m) = 1 line, where D(H_m) is strictly larger than H_0^2 + C x^{1/2+m} xi.

Witnesses are g_tau(x) = x^{-3/2+m} (log 1/x)^{-tau} for 1/2 < tau < 1: the
boundary integral int_x^{1/2} y^{1/2-m} g_tau(y) dy diverges like
(log 1/x)^{1-tau}, so f = G_m^a g_tau has no limit coefficient c_plus.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from loguru import logger
from scipy.integrate import cumulative_trapezoid
from scipy.interpolate import CubicSpline

from src.enums.kinds_enum import KernelKind
from src.models.errors import ParameterRegionError
from src.models.grid import CouplingParameter, GridFunction, RadialGrid
from src.models.kernels import KernelSpec, apply_green

CRITICAL_LINE_TOLERANCE = 1e-12
LOG2 = np.log(2.0)
DRIFT_SPREAD = 1e-3
DRIFT_CORRELATION = 0.99
NORM_GRID = RadialGrid(-30.0, 0.0, 4096)


def _check_tau(tau: float):
    if not 0.5 < tau < 1:
        raise ValueError(f"tau must lie in (1/2, 1), got {tau}")


def _check_critical(m: complex):
    if abs(complex(m).real - 1) > CRITICAL_LINE_TOLERANCE:
        raise ParameterRegionError(f"Re(m) must equal 1, got m={m}")


def _power_log(x, m, tau):
    """x^{-3/2+m} (log 1/x)^{-tau} and its first two derivatives."""
    p = m - 1.5
    ell = -np.log(x)
    q = p + tau / ell
    base = x**p * ell**-tau
    first = base / x * q
    second = base / x**2 * (((p - 1) + tau / ell) * q + tau / ell**2)
    return base, first, second


def g_tau_values(x, tau: float, m: complex) -> np.ndarray:
    """
    Exact on (0, 1/2); on [1/2, 1] the quadratic Taylor polynomial at 1/2 is
    blended to zero with 1 - (10 s^3 - 15 s^4 + 6 s^5); zero beyond 1.
    """
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape, dtype=complex)
    head = x < 0.5
    out[head] = _power_log(x[head], m, tau)[0]

    blend = (x >= 0.5) & (x < 1)
    if np.any(blend):
        v, d1, d2 = _power_log(0.5, m, tau)
        u = x[blend] - 0.5
        s = u / 0.5
        taylor = v + d1 * u + 0.5 * d2 * u**2
        out[blend] = taylor * (1 - s**3 * (10 - 15 * s + 6 * s**2))
    return out


@dataclass(frozen=True)
class TauFunction:
    tau: float
    m: complex
    samples: GridFunction = field(metadata={"serialize": False})

    @property
    def grid(self) -> RadialGrid:
        return self.samples.grid

    def __call__(self, x):
        return g_tau_values(x, self.tau, self.m)


def g_tau(tau: float, m: complex, grid: RadialGrid) -> TauFunction:
    _check_tau(tau)
    _check_critical(m)
    if grid.x_max < 1 or grid.x_min >= 0.5:
        raise ValueError("Grid must cover (0, 1]")
    m = complex(m)
    return TauFunction(tau, m, GridFunction(grid, g_tau_values(grid.x, tau, m)))


@dataclass(frozen=True)
class TauNorm:
    tau: float
    closed_form: float
    quadrature: float
    tail: float
    relative_deviation: float


def _head_integral(grid: RadialGrid, integrand: np.ndarray, lo: float) -> complex:
    """
    int_lo^{1/2} of sampled values, splined in t (dx = x dt) over the nodes below
    1/2 where g_tau is exact. The spline is carried through the last partial cell.
    """
    if not grid.x_min <= lo <= 0.5:
        raise ValueError(f"Lower limit {lo} outside [{grid.x_min}, 1/2]")
    head = grid.x < 0.5
    if head.sum() < 4:
        raise ValueError("Fewer than four nodes below 1/2")
    t = grid.t[head]
    y = integrand[head] * grid.x[head]
    lo_t, hi_t = np.log(lo), -LOG2
    re = CubicSpline(t, y.real).integrate(lo_t, hi_t)
    im = CubicSpline(t, y.imag).integrate(lo_t, hi_t)
    return complex(re, im)


def g_tau_norm_sq(tau: float, grid: RadialGrid = NORM_GRID) -> TauNorm:
    """
    int_0^{1/2} |g_tau|^2 dx = (2 tau - 1)^{-1} (log 2)^{1 - 2 tau}.

    The cross-check integrates the sampled |g_tau|^2 over [x_min, 1/2] and adds
    the exact tail (log 1/x_min)^{1 - 2 tau} / (2 tau - 1) below the grid.
    """
    t = g_tau(tau, 1.0, grid)
    closed = LOG2 ** (1 - 2 * tau) / (2 * tau - 1)
    body = _head_integral(grid, np.abs(t.samples.values) ** 2, grid.x_min).real
    tail = (-grid.t[0]) ** (1 - 2 * tau) / (2 * tau - 1)
    numeric = body + tail
    return TauNorm(tau, closed, numeric, tail, abs(numeric - closed) / closed)


def boundary_integral(x: float, tau: float) -> float:
    """int_x^{1/2} y^{1/2-m} g_tau(y) dy = ((log 1/x)^{1-tau} - (log 2)^{1-tau}) / (1 - tau)."""
    ell = -np.log(x)
    return (ell ** (1 - tau) - LOG2 ** (1 - tau)) / (1 - tau)


def divergence_threshold(tau: float) -> float:
    """Largest x below which |I(x)| >= (log 1/x)^{1-tau} / (2 (1 - tau))."""
    return float(np.exp(-(2 ** (1 / (1 - tau))) * LOG2))


@dataclass(frozen=True)
class DivergenceDiagnostic:
    tau: float
    m: complex
    x_samples: list
    integral_values: list
    quadrature_values: list
    lower_bound_curve: list
    bound_holds: list
    threshold_x: float
    limit_residual: list = field(default_factory=list)


def divergence_profile(t: TauFunction, x_list) -> DivergenceDiagnostic:
    """
    Closed-form I(x) on (0, 1/2], cross-checked by integrating the sampled
    y^{1/2-m} g_tau(y) over [x, 1/2]. Samples below the grid are rejected.
    The integrand collapses to y^{-1} (log 1/y)^{-tau}, so I(x) does not depend on Im(m).
    """
    xs = [float(x) for x in x_list]
    if any(not 0 < x <= 0.5 for x in xs):
        raise ValueError("Divergence samples must lie in (0, 1/2]")
    tau = t.tau
    closed = [boundary_integral(x, tau) for x in xs]
    grid = t.grid
    integrand = grid.x ** (0.5 - t.m) * t.samples.values
    numeric = [_head_integral(grid, integrand, x) for x in xs]
    bound = [(-np.log(x)) ** (1 - tau) / (2 * (1 - tau)) for x in xs]
    holds = [abs(i) >= b for i, b in zip(closed, bound)]
    return DivergenceDiagnostic(
        tau=tau,
        m=t.m,
        x_samples=xs,
        integral_values=closed,
        quadrature_values=numeric,
        lower_bound_curve=bound,
        bound_holds=holds,
        threshold_x=divergence_threshold(tau),
    )


@dataclass(frozen=True)
class LimitResidual:
    x_samples: list
    nodes: list
    residual: list
    local_norm: list


def ellr1_residual(t: TauFunction, a: float, x_list) -> LimitResidual:
    """
    |2m x^{-1/2-m} f(x) - int_x^a y^{1/2-m} g(y) dy| with f = G_m^a g, next to
    ||g||_{L^2(0, x)}, which bounds it. Values are taken at the grid node nearest
    to each requested x.
    """
    grid = t.grid
    m = t.m
    f = apply_green(KernelSpec(KernelKind.COMPRESSED_TWO_SIDED, CouplingParameter(m), a), t.samples)

    inside = grid.mask(hi=a)
    integrand = np.where(inside, grid.x ** (0.5 - m) * t.samples.values * grid.x, 0.0)
    running = cumulative_trapezoid(integrand, grid.t, initial=0)
    upper = running[-1] - running

    # |g|^2 = x^{-1} (log 1/x)^{-2 tau} below the first node
    density = np.abs(t.samples.values) ** 2 * grid.x
    below = (-grid.t[0]) ** (1 - 2 * t.tau) / (2 * t.tau - 1)
    lower = cumulative_trapezoid(density, grid.t, initial=0) + below

    nodes, residual, local = [], [], []
    for x in x_list:
        j = int(np.argmin(np.abs(grid.t - np.log(x))))
        value = 2 * m * grid.x[j] ** (-0.5 - m) * f.values[j] - upper[j]
        nodes.append(float(grid.x[j]))
        residual.append(float(abs(value)))
        local.append(float(np.sqrt(lower[j])))
    logger.debug(f"Limit residual tau={t.tau} m={m}: {residual}")
    return LimitResidual([float(x) for x in x_list], nodes, residual, local)


@dataclass(frozen=True)
class IndependenceReport:
    taus: list
    gram: np.ndarray
    smallest_singular_value: float
    condition_number: float


def independence_gram(tau_set, m: complex, grid: RadialGrid) -> IndependenceReport:
    """Gram matrix (g_i | g_j) of the g_tau over the grid, with its smallest singular value."""
    taus = [float(tau) for tau in tau_set]
    if not taus:
        raise ValueError("Need at least one tau")
    if len(set(taus)) != len(taus):
        raise ValueError(f"Duplicate tau values in {taus}")
    family = [g_tau(tau, m, grid).samples for tau in taus]
    gram = np.array([[a.inner(b) for b in family] for a in family])
    singular = np.linalg.svd(gram, compute_uv=False)
    smallest = float(singular[-1])
    return IndependenceReport(
        taus=taus,
        gram=gram,
        smallest_singular_value=smallest,
        condition_number=float(singular[0] / smallest) if smallest > 0 else np.inf,
    )


def dominance_ratio(tau: float, sigma: float, x: float) -> float:
    """|g_tau / g_sigma|(x) = (log 1/x)^{sigma - tau}."""
    return float((-np.log(x)) ** (sigma - tau))


@dataclass(frozen=True)
class WindowDrift:
    x_samples: list
    candidates: list
    spread: float
    correlation: float
    converged: bool
    divergent: bool


def window_drift(
    p: CouplingParameter,
    f: GridFunction,
    x_list,
    tau: float,
    spread_tolerance: float = DRIFT_SPREAD,
    correlation_tolerance: float = DRIFT_CORRELATION,
) -> WindowDrift:
    """
    Fits f = c x^{1/2+m} on each window [x, 2x]. A limit coefficient shows up as
    candidates that agree; the critical-line pathology as |2m c(x)| tracking
    (log 1/x)^{1-tau}.
    """
    grid = f.grid
    candidates = []
    for x in x_list:
        window = grid.mask(lo=x, hi=2 * x)
        if window.sum() < 2:
            raise ValueError(f"Window [{x}, {2 * x}] holds fewer than two nodes")
        basis = grid.x[window] ** (0.5 + p.m)
        w = grid.weights[window]
        candidates.append(complex(np.sum(w * np.conj(basis) * f.values[window]) / np.sum(w * np.abs(basis) ** 2)))
    candidates = np.array(candidates)

    reference = abs(candidates[-1])
    spread = float(np.max(np.abs(candidates - candidates[-1])) / reference) if reference > 0 else np.inf
    model = (-np.log(np.asarray(x_list, dtype=float))) ** (1 - tau)
    magnitude = np.abs(2 * p.m * candidates)
    correlation = float(np.corrcoef(magnitude, model)[0, 1]) if np.ptp(magnitude) > 0 else 0.0
    converged = spread < spread_tolerance
    return WindowDrift(
        x_samples=[float(x) for x in x_list],
        candidates=candidates.tolist(),
        spread=spread,
        correlation=correlation,
        converged=bool(converged),
        divergent=bool(not converged and correlation >= correlation_tolerance),
    )


def pathology_diagnostic(
    tau: float, m: complex, grid: RadialGrid, x_list, a: float = 1.0
) -> DivergenceDiagnostic:
    """Divergence profile with the limit residual attached, for the CLI and HTTP layers."""
    t = g_tau(tau, m, grid)
    profile = divergence_profile(t, x_list)
    limit = ellr1_residual(t, a, x_list)
    return replace(profile, limit_residual=limit.residual)


def pathology_rows(diagnostic: DivergenceDiagnostic) -> list[dict]:
    residuals = diagnostic.limit_residual or [None] * len(diagnostic.x_samples)
    return [
        {"x": x, "|I|": abs(i), "bound": b, "residual": r}
        for x, i, b, r in zip(
            diagnostic.x_samples,
            diagnostic.integral_values,
            diagnostic.lower_bound_curve,
            residuals,
        )
    ]

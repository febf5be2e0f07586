"""
Integral kernels of the Bessel operator L_alpha = -d^2/dx^2 + (alpha - 1/4) x^{-2}
and their discretizations on log-uniform grids.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from loguru import logger

from src.enums.kinds_enum import KernelKind
from src.models.errors import ParameterRegionError
from src.models.grid import (
    CouplingParameter,
    GridFunction,
    RadialGrid,
    apply_bessel,
)

LOG_BRANCH_THRESHOLD = 1e-6
RESIDUAL_EDGE_NODES = 3


@dataclass(frozen=True)
class KernelSpec:
    kind: KernelKind
    parameter: CouplingParameter
    cutoff: float | None = None

    def __post_init__(self):
        kind = KernelKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind.is_two_sided and self.parameter.m == 0:
            raise ParameterRegionError(f"{kind.value} is not defined at m = 0")
        if kind.is_compressed:
            if self.cutoff is None or not self.cutoff > 0:
                raise ValueError(f"{kind.value} needs a positive cutoff, got {self.cutoff}")
        elif self.cutoff is not None:
            raise ValueError(f"{kind.value} does not take a cutoff")

    @property
    def m(self) -> complex:
        return self.parameter.m


@dataclass(frozen=True, eq=False)
class DiscretizedOperator:
    """M[j, k] = K(x_j, x_k) * w_k, so M @ g approximates the integral operator."""

    spec: KernelSpec
    grid: RadialGrid
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = self.grid.n
        if self.matrix.shape != (n, n):
            raise ValueError(f"Operator matrix must be {n}x{n}, got {self.matrix.shape}")
        if not np.all(np.isfinite(self.matrix)):
            raise ValueError(f"Non-finite entries while discretizing {self.spec.kind.value}")
        self.matrix.flags.writeable = False

    def apply(self, g: GridFunction) -> GridFunction:
        if g.grid != self.grid:
            raise ValueError("Grid function and operator live on different grids")
        return GridFunction(self.grid, self.matrix @ g.values)

    def symmetrized(self) -> np.ndarray:
        """sqrt(w_j) K(x_j, x_k) sqrt(w_k), the matrix of the operator on L^2(dx)."""
        root = np.sqrt(self.grid.weights)
        return self.matrix * (root[:, None] / root[None, :])

    def to_csv(self, path=None) -> str | None:
        n = self.grid.n
        data = {}
        for k in range(n):
            data[f"re_{k}"] = self.matrix[:, k].real
            data[f"im_{k}"] = self.matrix[:, k].imag
        return pd.DataFrame(data).to_csv(
            path, index=False, float_format="%.17g", lineterminator="\n"
        )


def _forward_branch(m: complex, x, y) -> np.ndarray:
    """sqrt(xy) sinh(m log(x/y)) / m on x > y, with the log branch near m = 0."""
    d = np.log(x / y)
    if abs(m) < LOG_BRANCH_THRESHOLD:
        values = np.sqrt(x * y) * d
    else:
        values = np.sqrt(x * y) * np.sinh(m * d) / m
    return np.where(d > 0, values, 0.0)


def _two_sided_branch(m: complex, x, y) -> np.ndarray:
    d = np.abs(np.log(x / y))
    return np.sqrt(x * y) * np.exp(-m * d) / (2 * m)


def _kernel_values(spec: KernelSpec, x, y) -> np.ndarray:
    kind = spec.kind
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if kind.is_forward:
        values = _forward_branch(spec.m, x, y)
    else:
        values = _two_sided_branch(spec.m, x, y)
    if kind in (KernelKind.Q, KernelKind.Z):
        values = values / x**2
    if kind.is_compressed:
        values = np.where((x <= spec.cutoff) & (y <= spec.cutoff), values, 0.0)
    return np.asarray(values, dtype=complex)


def kernel_eval(spec: KernelSpec, x: float, y: float) -> complex:
    """
    Pointwise kernel value.

    ForwardGreen: (x^{1/2+m} y^{1/2-m} - x^{1/2-m} y^{1/2+m}) / (2m) for x > y,
    or sqrt(xy) log(x/y) at m = 0. TwoSidedGreen: sqrt(xy) (x/y)^{-m sgn(x-y)} / (2m).
    Q and Z carry an extra x^{-2}. Compressed kinds vanish once x or y exceeds a.
    """
    if not (x > 0 and y > 0):
        raise ValueError(f"Kernel arguments must be positive, got ({x}, {y})")
    return complex(_kernel_values(spec, x, y))


def discretize(spec: KernelSpec, grid: RadialGrid) -> DiscretizedOperator:
    if spec.kind.is_compressed and not grid.contains(spec.cutoff):
        raise ValueError(
            f"Cutoff a={spec.cutoff} outside grid range [{grid.x_min}, {grid.x_max}]"
        )
    logger.debug(f"Discretizing {spec.kind.value} at m={spec.m} on n={grid.n}")
    values = _kernel_values(spec, grid.x[:, None], grid.x[None, :])
    return DiscretizedOperator(spec, grid, values * grid.weights[None, :])


def kernel_rows(spec: KernelSpec, grid: RadialGrid, rows: np.ndarray) -> np.ndarray:
    """Selected rows of the discretized matrix, without building the rest."""
    rows = np.asarray(rows, dtype=int)
    values = _kernel_values(spec, grid.x[rows][:, None], grid.x[None, :])
    return values * grid.weights[None, :]


def _green_sign(spec: KernelSpec) -> float:
    # the forward kernel solves L f = -g as written
    return -1.0 if spec.kind.is_forward else 1.0


def apply_green(spec: KernelSpec, g: GridFunction) -> GridFunction:
    """
    f with L_alpha f = g. Forward kinds are supported on supp g + R_+.
    """
    if not spec.kind.is_green:
        raise ValueError(f"{spec.kind.value} is not a Green's operator")
    op = discretize(spec, g.grid)
    return _green_sign(spec) * op.apply(g)


def green_residual(spec: KernelSpec, g: GridFunction, accuracy: int = 2) -> float:
    """
    ||L_alpha(G g) - g|| / ||g|| over the interior nodes. Three nodes are dropped
    at each end, and compressed kinds also drop the stencil reach below the cutoff.
    """
    f = apply_green(spec, g)
    grid = g.grid
    residual = apply_bessel(spec.parameter, f, accuracy) - g

    interior = np.zeros(grid.n, dtype=bool)
    interior[RESIDUAL_EDGE_NODES : grid.n - RESIDUAL_EDGE_NODES] = True
    if spec.kind.is_compressed:
        reach = (accuracy // 2 + 1) * grid.h
        interior &= grid.x < spec.cutoff * np.exp(-reach)

    g_norm = g.norm(interior)
    if g_norm == 0:
        return 0.0
    return residual.norm(interior) / g_norm

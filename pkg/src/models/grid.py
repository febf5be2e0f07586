"""
Log-uniform grids on the half-line, functions sampled on them, and the
differential expressions built from them.

All discretization happens in the variable t = log x: nodes are x_j = exp(t_j)
with t_j uniform, and norms use the trapezoid rule in t transported to x by
dx = x dt, with the two end weights corrected so that 1 and 1/x are integrated
exactly. Dilations carry the same t-weights, so (Uf)(t) = e^{t/2} f(e^t) is an
exact isometry of the discrete norms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable

import numpy as np
import pandas as pd
from loguru import logger
from scipy.integrate import trapezoid
from scipy.interpolate import CubicSpline

from src.models.errors import ParameterRegionError

MIN_NODES = 16
MAX_ACCURACY = 8
CSV_COLUMNS = ["x", "re(f)", "im(f)"]


@dataclass(frozen=True)
class CouplingParameter:
    """
    Complex coupling m with alpha = m**2.

    Re(m) >= 0 is enforced unless ``allow_negative`` is set, in which case
    -1 < Re(m) < 0 is also accepted (the range where H_m is still defined).
    """

    m: complex
    allow_negative: bool = False

    def __post_init__(self):
        m = complex(self.m)
        if not (np.isfinite(m.real) and np.isfinite(m.imag)):
            raise ValueError(f"Coupling m must be finite, got {m}")
        if m.real < 0:
            if not self.allow_negative:
                raise ParameterRegionError(
                    f"Re(m) must be >= 0 (got {m}); pass allow_negative for -1 < Re(m) < 0"
                )
            if m.real <= -1:
                raise ParameterRegionError(f"Re(m) must be > -1, got {m}")
        object.__setattr__(self, "m", m)

    @property
    def alpha(self) -> complex:
        return self.m * self.m

    @classmethod
    def from_alpha(cls, alpha: complex) -> "CouplingParameter":
        """Principal square root, so Re(m) >= 0."""
        return cls(complex(np.sqrt(complex(alpha))))

    def conjugate(self) -> "CouplingParameter":
        return CouplingParameter(self.m.conjugate(), self.allow_negative)

    def negated(self) -> "CouplingParameter":
        return CouplingParameter(-self.m, allow_negative=True)


@dataclass(frozen=True)
class RadialGrid:
    """
    Nodes x_j = exp(t_j), t_j = t_min + j h, j = 0..n-1.
    """

    t_min: float
    t_max: float
    n: int

    def __post_init__(self):
        if not (np.isfinite(self.t_min) and np.isfinite(self.t_max)):
            raise ValueError("Grid bounds must be finite")
        if not self.t_min < self.t_max:
            raise ValueError(
                f"Empty interval: t_min={self.t_min} must be < t_max={self.t_max}"
            )
        if int(self.n) != self.n or self.n < MIN_NODES:
            raise ValueError(f"Grid needs at least {MIN_NODES} nodes, got {self.n}")
        object.__setattr__(self, "t_min", float(self.t_min))
        object.__setattr__(self, "t_max", float(self.t_max))
        object.__setattr__(self, "n", int(self.n))

    @cached_property
    def h(self) -> float:
        return (self.t_max - self.t_min) / (self.n - 1)

    @cached_property
    def t(self) -> np.ndarray:
        return _frozen(np.linspace(self.t_min, self.t_max, self.n))

    @cached_property
    def x(self) -> np.ndarray:
        return _frozen(np.exp(self.t))

    @cached_property
    def weights(self) -> np.ndarray:
        """
        x_j h in the interior. The end weights a x_0 and (h - a) x_{n-1} are fixed
        by exactness on 1 and 1/x over [x_min, x_max]; a -> h/2 as h -> 0.
        """
        x, h = self.x, self.h
        w = x * h
        rest = (x[-1] - x[0]) - h * np.sum(x[1:-1])
        a = (h * x[-1] - rest) / (x[-1] - x[0])
        w[0] = a * x[0]
        w[-1] = (h - a) * x[-1]
        return _frozen(w)

    @cached_property
    def t_weights(self) -> np.ndarray:
        """The same rule read in t: weights / x."""
        return _frozen(self.weights / self.x)

    @property
    def x_min(self) -> float:
        return float(self.x[0])

    @property
    def x_max(self) -> float:
        return float(self.x[-1])

    def refined(self) -> "RadialGrid":
        """Same spacing, twice the length, extended toward x -> 0."""
        length = self.t_max - self.t_min
        return RadialGrid(self.t_min - length, self.t_max, 2 * self.n - 1)

    def subdivided(self) -> "RadialGrid":
        """Same interval, half the spacing; the old nodes are kept."""
        return RadialGrid(self.t_min, self.t_max, 2 * self.n - 1)

    def contains(self, x: float) -> bool:
        slack = 1e-12 * max(1.0, abs(x))
        return self.x_min - slack <= x <= self.x_max + slack

    def mask(self, lo: float = 0.0, hi: float = np.inf) -> np.ndarray:
        return (self.x >= lo) & (self.x <= hi)

    def provenance(self) -> dict:
        return {"n": self.n, "t_min": self.t_min, "t_max": self.t_max}


def make_log_grid(t_min: float, t_max: float, n: int) -> RadialGrid:
    return RadialGrid(t_min, t_max, n)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex samples of a function on the nodes of a ``RadialGrid``."""

    grid: RadialGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.grid.n,):
            raise ValueError(
                f"Expected {self.grid.n} samples, got array of shape {values.shape}"
            )
        object.__setattr__(self, "values", _frozen(values))

    @classmethod
    def from_callable(
        cls, grid: RadialGrid, fn: Callable[[np.ndarray], np.ndarray]
    ) -> "GridFunction":
        return cls(grid, np.broadcast_to(fn(grid.x), grid.x.shape))

    @classmethod
    def zeros(cls, grid: RadialGrid) -> "GridFunction":
        return cls(grid, np.zeros(grid.n, dtype=complex))

    def norm(self, mask: np.ndarray | None = None) -> float:
        sq = self.grid.weights * np.abs(self.values) ** 2
        if mask is not None:
            sq = sq[mask]
        return float(np.sqrt(np.sum(sq)))

    def inner(self, other: "GridFunction") -> complex:
        """Sesquilinear product (f|g), antilinear in the first slot."""
        _check_same_grid(self, other)
        return complex(np.sum(self.grid.weights * np.conj(self.values) * other.values))

    def masked(self, mask: np.ndarray) -> "GridFunction":
        return GridFunction(self.grid, np.where(mask, self.values, 0.0))

    def conj(self) -> "GridFunction":
        return GridFunction(self.grid, np.conj(self.values))

    def __add__(self, other):
        return GridFunction(self.grid, self.values + _operand(self, other))

    def __sub__(self, other):
        return GridFunction(self.grid, self.values - _operand(self, other))

    def __mul__(self, other):
        return GridFunction(self.grid, self.values * _operand(self, other))

    __rmul__ = __mul__

    def __neg__(self):
        return GridFunction(self.grid, -self.values)

    def to_csv(self, path=None) -> str | None:
        df = pd.DataFrame(
            {
                CSV_COLUMNS[0]: self.grid.x,
                CSV_COLUMNS[1]: self.values.real,
                CSV_COLUMNS[2]: self.values.imag,
            }
        )
        return df.to_csv(path, index=False, float_format="%.17g", lineterminator="\n")

    @classmethod
    def from_csv(cls, path) -> "GridFunction":
        df = pd.read_csv(path)
        missing = [c for c in CSV_COLUMNS if c not in df.columns]
        if missing:
            raise ValueError(f"CSV is missing columns {missing}; header row is mandatory")
        t = np.log(df[CSV_COLUMNS[0]].to_numpy(dtype=float))
        grid = RadialGrid(t[0], t[-1], len(t))
        if not np.allclose(t, grid.t, rtol=0, atol=1e-9 * max(1.0, np.abs(t).max())):
            raise ValueError("CSV nodes are not log-uniform")
        values = df[CSV_COLUMNS[1]].to_numpy() + 1j * df[CSV_COLUMNS[2]].to_numpy()
        return cls(grid, values)


@dataclass(frozen=True, eq=False)
class LineFunction:
    """Samples over uniform t, measured with dt (plain trapezoid unless ``weights`` are given)."""

    t: np.ndarray
    values: np.ndarray
    weights: np.ndarray | None = None

    def norm(self) -> float:
        sq = np.abs(self.values) ** 2
        if self.weights is None:
            return float(np.sqrt(trapezoid(sq, self.t)))
        return float(np.sqrt(np.sum(self.weights * sq)))


@dataclass(frozen=True)
class CutoffSpec:
    """
    xi = 1 on [0, plateau_end], 0 on [support_end, inf), quintic C^2 blend between.
    """

    plateau_end: float = 0.5
    support_end: float = 1.0
    smoothness: int = field(default=2, metadata={"serialize": False})

    def __post_init__(self):
        if not 0 < self.plateau_end < self.support_end:
            raise ValueError("Cutoff needs 0 < plateau_end < support_end")

    def __call__(self, x):
        s = np.clip(
            (np.asarray(x, dtype=float) - self.plateau_end)
            / (self.support_end - self.plateau_end),
            0.0,
            1.0,
        )
        return 1.0 - s**3 * (10.0 - 15.0 * s + 6.0 * s**2)


def dilation_transform(f: GridFunction) -> LineFunction:
    """(Uf)(t) = e^{t/2} f(e^t)."""
    return LineFunction(f.grid.t, np.exp(f.grid.t / 2) * f.values, f.grid.t_weights)


def inverse_dilation(u: LineFunction) -> GridFunction:
    t = np.asarray(u.t, dtype=float)
    grid = RadialGrid(t[0], t[-1], len(t))
    return GridFunction(grid, np.exp(-grid.t / 2) * u.values)


def integrate(f: GridFunction, lo: float, hi: float) -> complex:
    """
    Integral of f over [lo, hi] from a not-a-knot cubic spline of the samples in x.
    """
    grid = f.grid
    if not (grid.contains(lo) and grid.contains(hi)):
        raise ValueError(
            f"Limits [{lo}, {hi}] outside grid range [{grid.x_min}, {grid.x_max}]"
        )
    lo, hi = np.clip([lo, hi], grid.x_min, grid.x_max)
    re = CubicSpline(grid.x, f.values.real).integrate(lo, hi)
    im = CubicSpline(grid.x, f.values.imag).integrate(lo, hi)
    return complex(re, im)


@lru_cache(maxsize=None)
def _fornberg(offsets: tuple, order: int) -> np.ndarray:
    """Finite-difference weights at 0 for unit-spaced offsets (Fornberg's recursion)."""
    z = np.asarray(offsets, dtype=float)
    n = len(z)
    c = np.zeros((n, order + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = z[0]
    for i in range(1, n):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = z[i]
        for j in range(i):
            c3 = z[i] - z[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    weights = c[:, order]
    weights.flags.writeable = False
    return weights


def _derivative_t(u: np.ndarray, h: float, order: int, accuracy: int) -> np.ndarray:
    """d^order u / dt^order with central stencils, one-sided near both ends."""
    half = accuracy // 2
    width = accuracy + order
    n = len(u)
    if n < width:
        raise ValueError(f"Need at least {width} nodes for this stencil, got {n}")
    out = np.empty(n, dtype=complex)

    central = _fornberg(tuple(range(-half, half + 1)), order)
    out[half : n - half] = sum(
        c * u[half + k : n - half + k] for k, c in zip(range(-half, half + 1), central)
    )
    for j in range(half):
        left = _fornberg(tuple(range(-j, width - j)), order)
        out[j] = np.dot(left, u[:width])
        right = _fornberg(tuple(range(-(width - 1 - j), j + 1)), order)
        out[n - 1 - j] = np.dot(right, u[n - width :])
    return out / h**order


def differentiate(f: GridFunction, order: int, accuracy: int = 2) -> GridFunction:
    """
    First or second x-derivative: stencils in t, then f' = e^{-t} u_t and
    f'' = e^{-2t} (u_tt - u_t) with u = f o exp.
    """
    if order not in (1, 2):
        raise ValueError(f"Derivative order must be 1 or 2, got {order}")
    if accuracy % 2 or not 2 <= accuracy <= MAX_ACCURACY:
        raise ValueError(f"Accuracy must be an even number in [2, {MAX_ACCURACY}]")
    grid = f.grid
    u_t = _derivative_t(f.values, grid.h, 1, accuracy)
    if order == 1:
        return GridFunction(grid, u_t / grid.x)
    u_tt = _derivative_t(f.values, grid.h, 2, accuracy)
    return GridFunction(grid, (u_tt - u_t) / grid.x**2)


def apply_bessel(p: CouplingParameter, f: GridFunction, accuracy: int = 2) -> GridFunction:
    """
    L_alpha f = -f'' + (alpha - 1/4) x^{-2} f. The caller guarantees f is
    smooth enough for the stencil.
    """
    f2 = differentiate(f, 2, accuracy)
    grid = f.grid
    return GridFunction(grid, -f2.values + (p.alpha - 0.25) * f.values / grid.x**2)


def limit_at_zero(f: GridFunction) -> complex:
    """Quadratic extrapolation to x = 0 from the three smallest nodes."""
    x0, x1, x2 = f.grid.x[:3]
    v0, v1, v2 = f.values[:3]
    l0 = x1 * x2 / ((x0 - x1) * (x0 - x2))
    l1 = x0 * x2 / ((x1 - x0) * (x1 - x2))
    l2 = x0 * x1 / ((x2 - x0) * (x2 - x1))
    return complex(l0 * v0 + l1 * v1 + l2 * v2)


def windowed_polynomial(
    center: float, width: float, coefficients=(1.0,), cutoff: float = 1e-14
) -> Callable[[np.ndarray], np.ndarray]:
    """
    Gaussian-windowed polynomial in s = (log x - log center) / width, set to zero
    where the window drops below ``cutoff``.
    """
    if center <= 0 or width <= 0:
        raise ValueError("Bump center and width must be positive")
    coefficients = np.asarray(coefficients, dtype=complex)
    s_max = np.sqrt(-2.0 * np.log(cutoff))

    def bump(x):
        s = (np.log(np.asarray(x, dtype=float)) - np.log(center)) / width
        window = np.where(np.abs(s) < s_max, np.exp(-0.5 * s**2), 0.0)
        return np.polyval(coefficients[::-1], s) * window

    logger.debug(f"Windowed polynomial at x={center} width={width} degree={len(coefficients) - 1}")
    return bump


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


def _check_same_grid(a: GridFunction, b: GridFunction):
    if a.grid != b.grid:
        raise ValueError("Grid functions live on different grids")


def _operand(f: GridFunction, other):
    if isinstance(other, GridFunction):
        _check_same_grid(f, other)
        return other.values
    return other

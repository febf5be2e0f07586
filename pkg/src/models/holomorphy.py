"""
Matrix-scale checks of the relatively bounded perturbation theorem, and
analyticity of alpha -> G_alpha^{a->} g as a proxy for the holomorphy of the
minimal Bessel family.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from loguru import logger
from scipy.linalg import eigh, qr, solve, svdvals

from src.enums.kinds_enum import KernelKind, Region
from src.models.errors import ParameterRegionError
from src.models.grid import CouplingParameter, GridFunction
from src.models.kernels import KernelSpec, kernel_eval, kernel_rows
from src.models.region import region_classify

RANK_TOLERANCE = 1e-12
SAMPLE_NODES = 16
CONTOUR_POINTS = 64
TAYLOR_TERMS = 8


@dataclass(frozen=True)
class MatrixFamily:
    """A + zB with ||B v|| <= c ||A v||; holomorphic for |z| < 1/c."""

    A: np.ndarray = field(repr=False, metadata={"serialize": False})
    B: np.ndarray = field(repr=False, metadata={"serialize": False})
    c: float

    @property
    def radius(self) -> float:
        return np.inf if self.c == 0 else 1.0 / self.c

    @property
    def size(self) -> int:
        return self.A.shape[1]


def _check_rank(A: np.ndarray):
    singular = svdvals(A)
    if singular[-1] <= RANK_TOLERANCE * singular[0]:
        raise ValueError(
            f"A is rank-deficient (smallest singular value {singular[-1]:.3e})"
        )


def _perturbation_ratio(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """B A^{-1}, or B A^+ for tall A."""
    if A.shape[0] == A.shape[1]:
        return solve(A.T, B.T).T
    return B @ np.linalg.pinv(A)


def relative_bound(
    A: np.ndarray, B: np.ndarray, samples: int = 10_000, seed: int = 0
) -> tuple[float, float]:
    """
    Smallest c with ||B v|| <= c ||A v||, i.e. ||B A^{-1}||. Returns (c, sampled
    maximum of ||B v|| / ||A v|| over random v).
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape[1] != B.shape[1]:
        raise ValueError(f"A and B act on different spaces: {A.shape} vs {B.shape}")
    _check_rank(A)
    c = float(svdvals(_perturbation_ratio(A, B))[0])

    rng = np.random.default_rng(seed)
    v = rng.standard_normal((A.shape[1], samples)) + 1j * rng.standard_normal((A.shape[1], samples))
    sampled = float(np.max(np.linalg.norm(B @ v, axis=0) / np.linalg.norm(A @ v, axis=0)))
    if sampled > c + 1e-10:
        logger.warning(f"Sampled ratio {sampled:.12g} exceeds the bound {c:.12g}")
    return c, sampled


def make_family(A: np.ndarray, B: np.ndarray) -> MatrixFamily:
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    c, _ = relative_bound(A, B, samples=256)
    return MatrixFamily(A, B, c)


def random_family(n: int = 50, c: float = 0.5, seed: int = 0) -> MatrixFamily:
    """B = c V A with V unitary, so ||B A^{-1}|| = c exactly."""
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) + 2 * np.sqrt(n) * np.eye(n)
    V, _ = qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    return make_family(A, c * V @ A)


def _graph_factor(A: np.ndarray) -> np.ndarray:
    """(A* A + I)^{-1/2}."""
    values, vectors = eigh(A.conj().T @ A + np.eye(A.shape[1]))
    return (vectors / np.sqrt(values)) @ vectors.conj().T


def bounded_representative(fam: MatrixFamily, z: complex, factor=None) -> np.ndarray:
    """M(z) = (A + zB)(A* A + I)^{-1/2}."""
    factor = _graph_factor(fam.A) if factor is None else factor
    return (fam.A + z * fam.B) @ factor


@dataclass(frozen=True)
class ContourSample:
    z: complex
    polynomial_residual: float
    cauchy_riemann_residual: float
    ratio_min: float
    ratio_max: float
    lower: float
    upper: float
    within: bool


@dataclass(frozen=True)
class KatoRellichReport:
    c: float
    radius: float
    samples: list
    passed: bool


def kato_rellich_check(
    fam: MatrixFamily, z_samples, n_vectors: int = 200, seed: int = 0, step: float = 1e-6
) -> KatoRellichReport:
    """
    For each z: M(z) is the degree-one polynomial M(0) + z (M(1) - M(0)), its
    difference quotients satisfy Cauchy-Riemann, and the graph norms of A + zB
    and A stay within [(1 - |z| c)^2, (1 + |z| c)^2] of each other.
    """
    z_samples = [complex(z) for z in z_samples]
    for z in z_samples:
        if abs(z) >= fam.radius:
            raise ParameterRegionError(f"|z| = {abs(z):.6g} is outside the disk of radius {fam.radius:.6g}")

    factor = _graph_factor(fam.A)
    m0 = bounded_representative(fam, 0, factor)
    m1 = bounded_representative(fam, 1, factor)
    scale = max(np.abs(m0).max(), np.abs(m1 - m0).max())

    rng = np.random.default_rng(seed)
    vectors = rng.standard_normal((fam.size, n_vectors)) + 1j * rng.standard_normal((fam.size, n_vectors))
    base_sq = np.linalg.norm(vectors, axis=0) ** 2
    graph_a = base_sq + np.linalg.norm(fam.A @ vectors, axis=0) ** 2

    samples = []
    for z in z_samples:
        mz = bounded_representative(fam, z, factor)
        polynomial = float(np.abs(mz - (m0 + z * (m1 - m0))).max() / scale)
        d_real = (bounded_representative(fam, z + step, factor) - bounded_representative(fam, z - step, factor)) / (2 * step)
        d_imag = (bounded_representative(fam, z + 1j * step, factor) - bounded_representative(fam, z - 1j * step, factor)) / (2 * step)
        cauchy_riemann = float(np.abs(d_real + 1j * d_imag).max() / scale)

        graph_z = base_sq + np.linalg.norm((fam.A + z * fam.B) @ vectors, axis=0) ** 2
        ratios = graph_z / graph_a
        q = abs(z) * fam.c
        lower, upper = (1 - q) ** 2, (1 + q) ** 2
        within = bool(ratios.min() >= lower - 1e-8 and ratios.max() <= upper + 1e-8)
        samples.append(
            ContourSample(z, polynomial, cauchy_riemann, float(ratios.min()), float(ratios.max()), lower, upper, within)
        )

    passed = all(s.polynomial_residual <= 1e-12 and s.cauchy_riemann_residual <= 1e-7 and s.within for s in samples)
    return KatoRellichReport(fam.c, fam.radius, samples, passed)


@dataclass(frozen=True)
class EdgeWitness:
    z: complex
    scaled_modulus: float
    kernel_residual: float
    vector: np.ndarray = field(repr=False, metadata={"serialize": False})


def edge_witness(fam: MatrixFamily) -> EdgeWitness:
    """
    z* = -1/lambda for the eigenvalue lambda of B A^{-1} of largest modulus; then
    A + z* B annihilates f = A^{-1} v. |z*| c = 1 exactly when B A^{-1} is normal.
    """
    values, vectors = np.linalg.eig(_perturbation_ratio(fam.A, fam.B))
    k = int(np.argmax(np.abs(values)))
    if values[k] == 0:
        raise ValueError("B vanishes: the family is entire in z")
    z = -1.0 / values[k]
    f = solve(fam.A, vectors[:, k])
    residual = np.linalg.norm((fam.A + z * fam.B) @ f) / np.linalg.norm(fam.A @ f)
    return EdgeWitness(complex(z), float(abs(z) * fam.c), float(residual), f)


@dataclass(frozen=True)
class AnalyticityReport:
    alpha0: complex
    radius: float
    inverse_distance: float
    sample_x: list
    center_values: list
    contour_residual: float
    taylor_coefficients: list
    contour_points: int


def family_analyticity(
    alpha0: complex,
    r: float,
    g: GridFunction,
    a: float,
    nodes: int = SAMPLE_NODES,
    contour_points: int = CONTOUR_POINTS,
) -> AnalyticityReport:
    """
    Cauchy mean-value test for alpha -> (G_alpha^{a->} g)(x_p) at ``nodes`` grid points
    below a: the average over |alpha - alpha0| = r must reproduce the value at alpha0.
    Scaled Taylor coefficients r^k F^(k)(alpha0)/k! come from the FFT of the contour
    samples.
    """
    alpha0 = complex(alpha0)
    region = region_classify(alpha0)
    if region.region != Region.INSIDE or region.distance <= r:
        raise ParameterRegionError(
            f"Disk |alpha - {alpha0}| <= {r} leaves the region (distance {region.distance:.6g})"
        )
    grid = g.grid
    if not grid.contains(a):
        raise ValueError(f"Cutoff a={a} outside grid range")
    below = np.flatnonzero(grid.x <= a)
    rows = below[np.linspace(0, len(below) - 1, nodes).round().astype(int)]

    def green_at(alpha):
        spec = KernelSpec(KernelKind.COMPRESSED_FORWARD, CouplingParameter.from_alpha(alpha), a)
        return -kernel_rows(spec, grid, rows) @ g.values

    center = green_at(alpha0)
    theta = 2 * np.pi * np.arange(contour_points) / contour_points
    contour = np.array([green_at(alpha0 + r * np.exp(1j * angle)) for angle in theta])
    mean = contour.mean(axis=0)
    scale = max(np.abs(center).max(), np.finfo(float).tiny)
    residual = float(np.abs(mean - center).max() / scale)

    coefficients = np.fft.fft(contour, axis=0) / contour_points
    taylor = np.abs(coefficients[:TAYLOR_TERMS]).max(axis=1) / scale
    logger.debug(f"Analyticity at alpha0={alpha0}, r={r}: residual {residual:.3e}")
    return AnalyticityReport(
        alpha0=alpha0,
        radius=r,
        inverse_distance=1.0 / region.distance,
        sample_x=grid.x[rows].tolist(),
        center_values=center.tolist(),
        contour_residual=residual,
        taylor_coefficients=taylor.tolist(),
        contour_points=contour_points,
    )


def conjugation_symmetry(spec: KernelSpec, samples: int = 100, seed: int = 0, spread: float = 3.0) -> float:
    """max |K_{conj m}(x, y) - conj K_m(x, y)| / max(|K_m|, 1) over random (x, y)."""
    rng = np.random.default_rng(seed)
    conjugate = KernelSpec(spec.kind, spec.parameter.conjugate(), spec.cutoff)
    points = np.exp(rng.uniform(-spread, spread, size=(samples, 2)))
    worst = 0.0
    for x, y in points:
        value = kernel_eval(spec, x, y)
        gap = abs(kernel_eval(conjugate, x, y) - np.conj(value)) / max(abs(value), 1.0)
        worst = max(worst, gap)
    return worst

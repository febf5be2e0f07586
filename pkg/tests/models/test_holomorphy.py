import numpy as np
import pytest

from src.enums.kinds_enum import KernelKind
from src.models.errors import ParameterRegionError
from src.models.grid import CouplingParameter, GridFunction, RadialGrid, windowed_polynomial
from src.models.holomorphy import (
    bounded_representative,
    conjugation_symmetry,
    edge_witness,
    family_analyticity,
    kato_rellich_check,
    make_family,
    random_family,
    relative_bound,
)
from src.models.kernels import KernelSpec


@pytest.fixture
def family():
    return random_family(20, 0.5, seed=7)


def test_random_family_has_requested_bound(family):
    c, sampled = relative_bound(family.A, family.B, samples=2000, seed=1)
    assert c == pytest.approx(0.5, rel=1e-10)
    assert sampled <= c + 1e-10
    assert family.radius == pytest.approx(2.0, rel=1e-10)


def test_rank_deficient_a_is_rejected():
    A = np.diag([1.0, 1.0, 0.0])
    with pytest.raises(ValueError):
        relative_bound(A, np.eye(3))


def test_mismatched_shapes_are_rejected():
    with pytest.raises(ValueError):
        relative_bound(np.eye(3), np.eye(4))


def test_explicit_family_bound():
    A = np.diag([1.0, 2.0, 4.0])
    fam = make_family(A, 0.5 * A)
    assert fam.c == pytest.approx(0.5)


def test_perturbation_checks_inside_disk(family):
    angles = 2 * np.pi * np.arange(8) / 8
    report = kato_rellich_check(family, 0.9 * family.radius * np.exp(1j * angles), seed=3)
    assert report.passed
    for sample in report.samples:
        assert sample.lower <= sample.ratio_min <= sample.ratio_max <= sample.upper + 1e-8


def test_perturbation_checks_reject_points_outside_disk(family):
    with pytest.raises(ParameterRegionError):
        kato_rellich_check(family, [1.01 * family.radius])


def test_bounded_representative_is_affine(family):
    m0 = bounded_representative(family, 0)
    m1 = bounded_representative(family, 1)
    z = 0.3 - 0.7j
    np.testing.assert_allclose(bounded_representative(family, z), m0 + z * (m1 - m0), atol=1e-12)


def test_edge_witness_sits_on_the_circle(family):
    edge = edge_witness(family)
    assert edge.scaled_modulus == pytest.approx(1.0, rel=1e-10)
    assert edge.kernel_residual < 1e-10


def test_green_family_is_analytic_inside_parabola():
    grid = RadialGrid(-12.0, 3.0, 512)
    g = GridFunction.from_callable(grid, windowed_polynomial(0.1, 0.5))
    report = family_analyticity(0.25, 0.1, g, 1.0)
    assert report.contour_residual <= 1e-6
    assert len(report.sample_x) == 16
    assert report.inverse_distance == pytest.approx(4.0 / 3.0)
    # scaled Taylor coefficients decay like (r / dist)^k
    assert report.taylor_coefficients[6] < report.taylor_coefficients[1]


def test_disk_leaving_the_region_is_rejected():
    grid = RadialGrid(-12.0, 3.0, 128)
    g = GridFunction.from_callable(grid, windowed_polynomial(0.1, 0.5))
    with pytest.raises(ParameterRegionError):
        family_analyticity(0.9, 0.5, g, 1.0)
    with pytest.raises(ParameterRegionError):
        family_analyticity(4.0, 0.1, g, 1.0)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_fifty_by_fifty_families(seed):
    fam = random_family(50, 0.5, seed=seed)
    angles = 2 * np.pi * np.arange(12) / 12
    report = kato_rellich_check(fam, 0.95 * fam.radius * np.exp(1j * angles), seed=seed)
    assert report.passed
    assert max(sample.polynomial_residual for sample in report.samples) <= 1e-12
    assert all(sample.within for sample in report.samples)


@pytest.mark.parametrize("alpha0", [0.25, 0.0, 0.5j])
def test_green_family_is_analytic_around(alpha0):
    grid = RadialGrid(-12.0, 3.0, 512)
    g = GridFunction.from_callable(grid, windowed_polynomial(0.1, 0.5))
    report = family_analyticity(alpha0, 0.1, g, 1.0)
    assert report.contour_residual <= 1e-6


@pytest.mark.parametrize(
    "kind, cutoff",
    [
        (KernelKind.FORWARD_GREEN, None),
        (KernelKind.TWO_SIDED_GREEN, None),
        (KernelKind.Q, None),
        (KernelKind.Z, None),
        (KernelKind.COMPRESSED_FORWARD, 2.0),
        (KernelKind.COMPRESSED_TWO_SIDED, 2.0),
    ],
)
def test_kernels_commute_with_conjugation(kind, cutoff):
    spec = KernelSpec(kind, CouplingParameter(1.3 - 0.8j), cutoff)
    assert conjugation_symmetry(spec, seed=11) <= 1e-14

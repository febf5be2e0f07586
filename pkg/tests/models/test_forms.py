import numpy as np
import pytest

from src.enums.kinds_enum import FactorSign
from src.models.errors import ParameterRegionError
from src.models.forms import (
    bilinear_pairing,
    composition_residual,
    extension_label,
    factor_rho,
    factorization_check,
    homogeneity_check,
    positivity_check,
    transpose_check,
    two_factorizations_agree,
)
from src.models.grid import GridFunction, windowed_polynomial


@pytest.fixture
def bumps(form_grid, bump):
    f = GridFunction.from_callable(form_grid, bump(1.5, 0.4, (1.0, 0.3)))
    g = GridFunction.from_callable(form_grid, bump(1.2, 0.4, (1.0, -0.2, 0.1)))
    return f, g


def test_factor_rho():
    assert factor_rho(0.3, FactorSign.PLUS) == pytest.approx(0.8)
    assert factor_rho(0.3, "minus") == pytest.approx(0.2)


@pytest.mark.parametrize("m", [0.5, 1.5, 0.3 + 0.4j, -0.5])
def test_plus_factorization_reproduces_bessel_pairing(bumps, m):
    f, g = bumps
    result = factorization_check(m, FactorSign.PLUS, f, g)
    assert result.deviation_plus <= 1e-6
    assert result.composition_residual <= 1e-5


def test_minus_factorization_needs_positive_real_part(bumps):
    f, g = bumps
    with pytest.raises(ParameterRegionError):
        factorization_check(-0.5, FactorSign.MINUS, f, g)
    assert factorization_check(-0.5, FactorSign.PLUS, f, g).value_minus is None


def test_two_factorizations_agree(bumps):
    f, g = bumps
    assert two_factorizations_agree(0.5, f, g) <= 1e-6
    assert two_factorizations_agree(0.7 + 0.2j, f, g) <= 1e-6


def test_pairing_is_bilinear(bumps):
    f, g = bumps
    assert bilinear_pairing(1j * f, g) == pytest.approx(1j * bilinear_pairing(f, g))


def test_transpose_identity(bumps):
    f, g = bumps
    assert transpose_check(0.3 + 0.1j, f, g) <= 1e-6


def test_homogeneity_under_dilation(form_grid, bump):
    assert homogeneity_check(0.8, bump(1.5, 0.4), bump(1.2, 0.4, (1.0, 0.5)), 2.0, form_grid) <= 1e-6


@pytest.mark.parametrize(
    "m, fragment",
    [(1.5, "essentially self-adjoint"), (0.5, "Friedrichs"), (0.0, "Krein"), (-0.5, "Krein")],
)
def test_extension_labels(m, fragment):
    assert fragment in extension_label(m)


def test_extension_label_rejects_m_below_minus_one():
    with pytest.raises(ParameterRegionError):
        extension_label(-1.0)


def test_positivity_for_real_m(form_grid, bump):
    f = GridFunction.from_callable(form_grid, lambda x: bump(1.0, 0.5)(x).real)
    for m in (-0.5, 0.0, 0.5, 1.0, 2.0):
        result = positivity_check(m, f)
        assert result.nonnegative
        assert result.value > 0
        assert result.reference == pytest.approx(result.value, rel=1e-6)
        assert result.deviation <= 1e-6


def test_positivity_rejects_complex_input(form_grid, bump):
    f = GridFunction.from_callable(form_grid, bump(1.0, 0.5))
    with pytest.raises(ValueError):
        positivity_check(0.5 + 0.1j, f)
    with pytest.raises(ValueError):
        positivity_check(0.5, 1j * f)


def test_composition_matches_bessel_operator(bumps):
    _, g = bumps
    assert composition_residual(0.5, FactorSign.MINUS, g) <= 1e-5


def test_positivity_near_nullspace_of_first_order_factor(form_grid):
    # x^{1/2+m} is annihilated by A_{1/2+m}, so only the window edges contribute
    m = 0.5
    window = windowed_polynomial(1.0, 1.2)
    f = GridFunction.from_callable(form_grid, lambda x: (x ** (0.5 + m) * window(x)).real)
    result = positivity_check(m, f)
    assert result.nonnegative
    assert result.value < f.norm() ** 2
    assert result.reference == pytest.approx(result.value, rel=1e-6)


@pytest.mark.parametrize("m", [1.0, 1.5, 2.0])
def test_factorizations_agree_for_real_m_at_least_one(bumps, m):
    # Hardy-type identity: both factors give the same quadratic form of H_m
    f, _ = bumps
    assert two_factorizations_agree(m, f, f) <= 1e-6
    assert two_factorizations_agree(m, f.conj(), f) <= 1e-6


@pytest.mark.parametrize("m", [0.3 + 0.5j, 1.2 - 0.7j, 2.0 + 1.0j])
def test_factorizations_agree_for_complex_m(bumps, m):
    f, g = bumps
    assert two_factorizations_agree(m, f, g) <= 1e-6

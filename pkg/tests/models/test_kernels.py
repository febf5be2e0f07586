import io

import numpy as np
import pandas as pd
import pytest

from src.enums.kinds_enum import KernelKind
from src.models.errors import ParameterRegionError
from src.models.grid import CouplingParameter, GridFunction, RadialGrid, windowed_polynomial
from src.models.holomorphy import conjugation_symmetry
from src.models.kernels import (
    KernelSpec,
    apply_green,
    discretize,
    green_residual,
    kernel_eval,
    kernel_rows,
)


def spec(kind, m, cutoff=None):
    return KernelSpec(kind, CouplingParameter(m), cutoff)


def test_forward_kernel_value():
    # (2^{1} 1^{0} - 2^{0} 1^{1}) / 1
    assert kernel_eval(spec(KernelKind.FORWARD_GREEN, 0.5), 2.0, 1.0) == pytest.approx(1.0)
    assert kernel_eval(spec(KernelKind.FORWARD_GREEN, 0.5), 1.0, 2.0) == 0


def test_forward_kernel_log_branch_is_continuous():
    near_zero = kernel_eval(spec(KernelKind.FORWARD_GREEN, 1e-4), 3.0, 0.5)
    at_zero = kernel_eval(spec(KernelKind.FORWARD_GREEN, 0.0), 3.0, 0.5)
    assert at_zero == pytest.approx(np.sqrt(1.5) * np.log(6.0))
    assert abs(near_zero - at_zero) < 1e-7


def test_two_sided_kernel_is_symmetric():
    k = spec(KernelKind.TWO_SIDED_GREEN, 1.5 + 0.5j)
    assert kernel_eval(k, 0.3, 2.0) == pytest.approx(kernel_eval(k, 2.0, 0.3))
    assert kernel_eval(k, 1.0, 1.0) == pytest.approx(1 / (2 * (1.5 + 0.5j)))


def test_two_sided_kinds_need_nonzero_m():
    with pytest.raises(ParameterRegionError):
        spec(KernelKind.TWO_SIDED_GREEN, 0.0)


def test_compressed_kinds_need_cutoff():
    with pytest.raises(ValueError):
        spec(KernelKind.COMPRESSED_FORWARD, 0.5)
    with pytest.raises(ValueError):
        spec(KernelKind.FORWARD_GREEN, 0.5, cutoff=1.0)


def test_compressed_kernel_vanishes_beyond_cutoff():
    k = spec(KernelKind.COMPRESSED_FORWARD, 0.5, cutoff=1.0)
    assert kernel_eval(k, 2.0, 0.5) == 0
    assert kernel_eval(k, 0.9, 0.5) == kernel_eval(spec(KernelKind.FORWARD_GREEN, 0.5), 0.9, 0.5)


def test_q_carries_inverse_square():
    q = kernel_eval(spec(KernelKind.Q, 0.3 + 0.1j), 2.5, 0.7)
    g = kernel_eval(spec(KernelKind.FORWARD_GREEN, 0.3 + 0.1j), 2.5, 0.7)
    assert q == pytest.approx(g / 2.5**2)


def test_kernel_arguments_must_be_positive():
    with pytest.raises(ValueError):
        kernel_eval(spec(KernelKind.Q, 0.5), 0.0, 1.0)


def test_discretize_and_rows_agree(small_grid):
    k = spec(KernelKind.TWO_SIDED_GREEN, 1.2)
    op = discretize(k, small_grid)
    rows = np.array([0, 17, 200])
    np.testing.assert_allclose(kernel_rows(k, small_grid, rows), op.matrix[rows])
    with pytest.raises(ValueError):
        op.matrix[0, 0] = 1.0


def test_discretize_rejects_cutoff_outside_grid():
    grid = RadialGrid(-4.0, -1.0, 64)
    with pytest.raises(ValueError):
        discretize(spec(KernelKind.COMPRESSED_FORWARD, 0.5, cutoff=1.0), grid)


def test_apply_green_rejects_q(small_grid):
    with pytest.raises(ValueError):
        apply_green(spec(KernelKind.Q, 0.5), GridFunction.zeros(small_grid))


def test_forward_green_of_indicator():
    # at m = 1/2, f = G 1 solves -f'' = 1 with f(0) = f'(0) = 0
    grid = RadialGrid(-14.0, 1.0, 2048)
    g = GridFunction.from_callable(grid, lambda x: np.ones_like(x))
    f = apply_green(spec(KernelKind.FORWARD_GREEN, 0.5), g)
    expected = -(grid.x**2) / 2
    np.testing.assert_allclose(f.values.real[-200:], expected[-200:], rtol=1e-4)


@pytest.mark.slow
@pytest.mark.parametrize(
    "alpha, kind",
    [
        (0.25 + 1j, KernelKind.FORWARD_GREEN),
        (0.5, KernelKind.FORWARD_GREEN),
        (0.5, KernelKind.TWO_SIDED_GREEN),
        (1.0, KernelKind.TWO_SIDED_GREEN),
        (4.0, KernelKind.TWO_SIDED_GREEN),
        (2.25 + 2j, KernelKind.TWO_SIDED_GREEN),
        (-3 + 4j, KernelKind.TWO_SIDED_GREEN),
    ],
)
def test_green_identity_residual(alpha, kind):
    grid = RadialGrid(-12.0, 12.0, 2048)
    coarse = RadialGrid(-12.0, 12.0, 1024)
    bump = windowed_polynomial(1.0, 1.0)
    k = KernelSpec(kind, CouplingParameter.from_alpha(alpha))
    fine_residual = green_residual(k, GridFunction.from_callable(grid, bump))
    coarse_residual = green_residual(k, GridFunction.from_callable(coarse, bump))
    assert fine_residual <= 1e-3
    # second-order stencil and quadrature
    assert np.log2(coarse_residual / fine_residual) >= 1.5


def test_conjugation_symmetry_of_kernels():
    for kind in (KernelKind.FORWARD_GREEN, KernelKind.TWO_SIDED_GREEN, KernelKind.Q):
        deviation = conjugation_symmetry(KernelSpec(kind, CouplingParameter(0.4 + 0.7j)), seed=3)
        assert deviation <= 1e-13


@pytest.mark.parametrize("kind", [KernelKind.FORWARD_GREEN, KernelKind.Q])
def test_forward_kinds_are_even_in_m(rng, kind):
    m = rng.uniform(0.0, 0.9, 100) + 1j * rng.uniform(-2.0, 2.0, 100)
    points = np.exp(rng.uniform(-3.0, 3.0, size=(100, 2)))
    for value, (x, y) in zip(m, points):
        p = CouplingParameter(complex(value))
        plus = kernel_eval(KernelSpec(kind, p), x, y)
        minus = kernel_eval(KernelSpec(kind, p.negated()), x, y)
        assert minus == pytest.approx(plus, rel=1e-14, abs=1e-300)
        if x < y:
            assert plus == 0


@pytest.mark.parametrize("m", [1e-4, 1e-5, 1e-4j, 5e-5 + 5e-5j])
@pytest.mark.parametrize("x, y", [(3.0, 0.5), (1.5, 1.0), (20.0, 0.1), (0.01, 0.002)])
def test_forward_kernel_is_continuous_at_zero_coupling(m, x, y):
    at_zero = kernel_eval(spec(KernelKind.FORWARD_GREEN, 0.0), x, y)
    near_zero = kernel_eval(spec(KernelKind.FORWARD_GREEN, m), x, y)
    # sinh(m d) / m - d = m^2 d^3 / 6 + ...
    d = np.log(x / y)
    assert abs(near_zero - at_zero) <= abs(m) ** 2 * d**3 * np.sqrt(x * y)


def test_operator_csv_layout():
    grid = RadialGrid(-2.0, 1.0, 16)
    op = discretize(spec(KernelKind.TWO_SIDED_GREEN, 0.7 + 0.4j), grid)
    frame = pd.read_csv(io.StringIO(op.to_csv()), float_precision="round_trip")
    assert list(frame.columns[:4]) == ["re_0", "im_0", "re_1", "im_1"]
    assert frame.shape == (grid.n, 2 * grid.n)
    restored = frame.filter(like="re_").to_numpy() + 1j * frame.filter(like="im_").to_numpy()
    np.testing.assert_array_equal(restored, op.matrix)

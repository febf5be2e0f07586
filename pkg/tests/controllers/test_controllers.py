import numpy as np
import pytest

from config.app_config import GridConfigModel
from src.controllers import (
    CriticalLineController,
    DomainController,
    FormsController,
    HolomorphyController,
    KernelController,
    NormController,
)
from src.enums.kinds_enum import DomainClass, FactorSign, KernelKind, NormKind, Region
from src.models.errors import ParameterRegionError


def test_base_controller_builds_configured_grid(config):
    grid = NormController(config).grid()
    assert (grid.t_min, grid.t_max, grid.n) == (-12.0, 12.0, 512)


def test_default_config_is_loaded_from_yaml():
    controller = NormController()
    assert controller.app_config.app.name == "Bessel Operator Domain Lab"
    assert controller.seed == 20240101


def test_region_report(config):
    report = NormController(config).region(-3 + 4j)
    assert report.classification.region == Region.BOUNDARY
    assert report.sqrt_alpha == pytest.approx(1 + 2j)


def test_norm_outside_parabola_is_rejected(config):
    with pytest.raises(ParameterRegionError):
        NormController(config).norm(4.0, NormKind.Q)


def test_default_green_kind(config):
    controller = KernelController(config)
    assert controller.default_kind(0.25 + 1j) == KernelKind.FORWARD_GREEN
    assert controller.default_kind(4.0) == KernelKind.TWO_SIDED_GREEN
    with pytest.raises(ValueError):
        controller.green_check(0.25, KernelKind.Q)


def test_green_check_report(config):
    report = KernelController(config).green_check(4.0)
    assert report.kind == KernelKind.TWO_SIDED_GREEN
    assert report.region == Region.OUTSIDE
    assert report.coarse_residual > report.residual


def test_green_check_writes_kernel_matrix(config, tmp_path):
    path = tmp_path / "two_sided.csv"
    report = KernelController(config).green_check(4.0, matrix_out=str(path))
    assert report.matrix_path == str(path)
    header = path.read_text().splitlines()[0].split(",")
    assert len(header) == 2 * 512
    assert header[-2:] == ["re_511", "im_511"]
    assert KernelController(config).green_check(4.0).matrix_path is None


def test_inequality_checks_hold(config):
    controller = DomainController(config)
    for kind in ("rellich", "hardy", "kato_bound"):
        assert controller.check(kind).holds


def test_boundary_report_recovers_inputs(config):
    report = DomainController(config).boundary(0.1, c_plus=1.0, c_minus=0.5)
    assert report.coefficients.c_plus == pytest.approx(1.0, abs=1e-4)
    assert report.coefficients.c_minus == pytest.approx(0.5, abs=1e-4)
    assert report.domain.classification == DomainClass.MAX_ONLY


def test_factorize(config):
    finer = config.model_copy(update={"grid": GridConfigModel(t_min=-12.0, t_max=12.0, n=1024)})
    result = FormsController(finer).factorize(0.5, FactorSign.PLUS)
    assert result.deviation_plus <= 1e-6
    assert result.deviation_minus <= 1e-6


def test_pathology_report(config):
    report = CriticalLineController(config).pathology(0.75, 1.0)
    xs = report.diagnostic.x_samples
    assert xs and all(x >= np.exp(-12.0) * 4 for x in xs)
    assert report.norm.relative_deviation < 1e-3
    assert len(CriticalLineController(config).rows(report)) == len(xs)


def test_holo_report(config):
    report = HolomorphyController(config).holo(0.25, 0.1, size=20)
    assert report.analyticity.contour_residual <= 1e-6
    assert report.kato_rellich.passed
    assert report.conjugation_deviation <= 1e-14

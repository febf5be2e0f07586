import numpy as np
import pytest

from src.enums.kinds_enum import NormKind, NormMethod
from src.models.errors import ParameterRegionError
from src.models.grid import CouplingParameter, RadialGrid
from src.helpers.serialization_helper import to_jsonable
from src.models.norms import (
    DistanceNorm,
    MultiplierNorm,
    SvdNorm,
    get_estimator,
    multiplier_sup,
    norm_report,
)


def test_closed_form_at_quarter():
    estimate = DistanceNorm().estimate(CouplingParameter.from_alpha(0.25), NormKind.Q)
    assert estimate.value == pytest.approx(4.0 / 3.0)
    assert estimate.method == NormMethod.DISTANCE_CLOSED_FORM


def test_multiplier_sup_matches_closed_form(rng):
    m = rng.uniform(0.0, 0.95, 50) + 1j * rng.uniform(-2.0, 2.0, 50)
    for value in m:
        p = CouplingParameter(complex(value))
        closed = DistanceNorm().estimate(p, NormKind.Q).value
        assert multiplier_sup(p).value == pytest.approx(closed, rel=1e-8)


def test_z_norm_for_large_re_m():
    p = CouplingParameter(1.5 + 0.3j)
    closed = DistanceNorm().estimate(p, NormKind.Z).value
    assert MultiplierNorm().estimate(p, NormKind.Z).value == pytest.approx(closed, rel=1e-8)


def test_unbounded_parameters_are_rejected():
    with pytest.raises(ParameterRegionError):
        DistanceNorm().estimate(CouplingParameter(1.5), NormKind.Q)
    with pytest.raises(ParameterRegionError):
        multiplier_sup(CouplingParameter(0.5), NormKind.Z)
    with pytest.raises(ParameterRegionError):
        DistanceNorm().estimate(CouplingParameter.from_alpha(-3 + 4j), NormKind.Q)


def test_get_estimator_by_name():
    assert isinstance(get_estimator("discretized_svd"), SvdNorm)
    with pytest.raises(ValueError):
        get_estimator("power_iteration")


def test_svd_needs_grid():
    with pytest.raises(ValueError):
        SvdNorm().estimate(CouplingParameter(0.5), NormKind.Q)


@pytest.mark.slow
def test_svd_sections_approach_norm_from_below():
    grid = RadialGrid(-12.0, 12.0, 512)
    estimate = SvdNorm().estimate(CouplingParameter(0.5), NormKind.Q, grid)
    coarse, fine = (step["value"] for step in estimate.refinement)
    exact = 4.0 / 3.0
    assert coarse <= fine <= exact * (1 + 1e-6)
    assert abs(estimate.best - exact) < abs(coarse - exact)
    assert estimate.refinement[1]["n"] == 2 * grid.n - 1


@pytest.mark.slow
def test_norm_report_collects_three_methods():
    report = norm_report(CouplingParameter.from_alpha(0.25), NormKind.Q, RadialGrid(-12.0, 12.0, 512))
    assert set(report.estimates) == {method.value for method in NormMethod}
    assert report.distance == pytest.approx(0.75)
    assert np.isfinite(report.max_relative_deviation)


def test_serialized_estimate_names_the_compared_value():
    estimate = DistanceNorm().estimate(CouplingParameter.from_alpha(0.25), NormKind.Q)
    data = to_jsonable(estimate)
    assert data["best"] == data["value"] == pytest.approx(4.0 / 3.0)
    assert data["extrapolated"] is None


def test_closed_forms_at_quarter_agree_tightly():
    p = CouplingParameter.from_alpha(0.25)
    assert DistanceNorm().estimate(p, NormKind.Q).value == pytest.approx(4.0 / 3.0, rel=1e-10)
    assert multiplier_sup(p).value == pytest.approx(4.0 / 3.0, rel=1e-10)


@pytest.mark.slow
def test_svd_norm_at_quarter_on_default_grid():
    estimate = SvdNorm().estimate(
        CouplingParameter.from_alpha(0.25), NormKind.Q, RadialGrid(-12.0, 12.0, 1024)
    )
    assert estimate.best == estimate.extrapolated
    assert estimate.best == pytest.approx(4.0 / 3.0, rel=0.02)
    assert estimate.value <= estimate.best
    assert to_jsonable(estimate)["best"] == estimate.best


@pytest.mark.slow
@pytest.mark.parametrize("m", [1.5, 2.0, 2.0 + 3.0j])
def test_z_norm_methods_agree(m):
    report = norm_report(CouplingParameter(m), NormKind.Z, RadialGrid(-12.0, 12.0, 1024))
    assert report.max_relative_deviation <= 0.03
    closed = report.estimates[NormMethod.DISTANCE_CLOSED_FORM.value].value
    assert report.estimates[NormMethod.MULTIPLIER_SUP.value].value == pytest.approx(closed, rel=1e-8)
    svd = report.estimates[NormMethod.DISCRETIZED_SVD.value]
    assert svd.value <= svd.best * (1 + 1e-6)


@pytest.mark.slow
def test_svd_cross_checks_seeded_parameters(rng):
    grid = RadialGrid(-12.0, 12.0, 512)
    m = rng.uniform(0.1, 0.6, 5) + 1j * rng.uniform(-0.5, 0.5, 5)
    for value in m:
        p = CouplingParameter(complex(value))
        closed = DistanceNorm().estimate(p, NormKind.Q).value
        assert SvdNorm().estimate(p, NormKind.Q, grid).best == pytest.approx(closed, rel=0.03)

from dataclasses import dataclass
from itertools import combinations

from loguru import logger

from .base_norm import NormEstimate, NormEstimator, check_norm_parameter
from .distance_norm import DistanceNorm
from .multiplier_norm import MultiplierNorm
from .svd_norm import SvdNorm
from src.enums.kinds_enum import NormKind, NormMethod
from src.models.grid import CouplingParameter, RadialGrid
from src.models.region import region_classify

ESTIMATORS = {
    NormMethod.DISTANCE_CLOSED_FORM: DistanceNorm,
    NormMethod.MULTIPLIER_SUP: MultiplierNorm,
    NormMethod.DISCRETIZED_SVD: SvdNorm,
}


def get_estimator(method) -> NormEstimator:
    return ESTIMATORS[NormMethod(method)]()


@dataclass(frozen=True)
class NormReport:
    m: complex
    alpha: complex
    kind: NormKind
    distance: float
    estimates: dict
    max_relative_deviation: float


def norm_report(p: CouplingParameter, kind: NormKind, grid: RadialGrid) -> NormReport:
    """
    All three estimates of ||Q_alpha|| or ||Z_m|| and their largest pairwise
    relative deviation (the SVD estimate enters through its extrapolated value).
    """
    kind = NormKind(kind)
    check_norm_parameter(p, kind)
    estimates: dict[NormMethod, NormEstimate] = {
        method: get_estimator(method).estimate(p, kind, grid) for method in ESTIMATORS
    }
    deviation = max(
        abs(a.best - b.best) / max(a.best, b.best)
        for a, b in combinations(estimates.values(), 2)
    )
    logger.debug(f"Norm report {kind.value} m={p.m}: max deviation {deviation:.3e}")
    return NormReport(
        m=p.m,
        alpha=p.alpha,
        kind=kind,
        distance=region_classify(p.alpha).distance,
        estimates={method.value: estimate for method, estimate in estimates.items()},
        max_relative_deviation=deviation,
    )

from .base_norm import NormEstimate, NormEstimator, check_norm_parameter
from .distance_norm import DistanceNorm
from .multiplier_norm import MultiplierNorm, multiplier_sup
from .report import NormReport, get_estimator, norm_report
from .svd_norm import SvdNorm, operator_norm_svd

__all__ = [
    "NormEstimate",
    "NormEstimator",
    "NormReport",
    "DistanceNorm",
    "MultiplierNorm",
    "SvdNorm",
    "check_norm_parameter",
    "get_estimator",
    "multiplier_sup",
    "norm_report",
    "operator_norm_svd",
]

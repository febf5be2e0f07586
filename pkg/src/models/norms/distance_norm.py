from .base_norm import NormEstimate, NormEstimator, check_norm_parameter
from src.enums.kinds_enum import NormKind, NormMethod
from src.models.region import closest_parabola_point


class DistanceNorm(NormEstimator):
    """
    ||Q_alpha|| = ||Z_m|| = 1 / dist(alpha, (1 + iR)^2).
    """

    method = NormMethod.DISTANCE_CLOSED_FORM

    def estimate(self, p, kind: NormKind, grid=None) -> NormEstimate:
        check_norm_parameter(p, kind)
        omega, distance = closest_parabola_point(p.alpha)
        return NormEstimate(1.0 / distance, self.method, omega_star=omega)

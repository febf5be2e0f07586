from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional

from src.enums.kinds_enum import NormKind, NormMethod, Region
from src.models.errors import ParameterRegionError
from src.models.grid import CouplingParameter, RadialGrid
from src.models.region import region_classify


@dataclass(frozen=True)
class NormEstimate:
    """
    ``value`` is the figure the method computes on its own grid (the raw
    section value for SVD); ``best`` is what norm agreement is judged on, the
    extrapolated value when there is one and ``value`` otherwise.
    """

    value: float
    method: NormMethod
    grid: Optional[dict] = None
    omega_star: Optional[float] = None
    refinement: list = field(default_factory=list)
    extrapolated: Optional[float] = None
    best: Optional[float] = None

    def __post_init__(self):
        if self.best is None:
            best = self.value if self.extrapolated is None else self.extrapolated
            object.__setattr__(self, "best", best)


def check_norm_parameter(p: CouplingParameter, kind: NormKind):
    """
    Q_alpha is bounded for alpha strictly inside the parabola, Z_m for Re(m) > 1.

    Raises:
        ParameterRegionError: If the operator is unbounded at this parameter.
    """
    kind = NormKind(kind)
    if kind == NormKind.Q:
        region = region_classify(p.alpha).region
        if region != Region.INSIDE:
            raise ParameterRegionError(
                f"Q is bounded only inside the parabola; alpha={p.alpha} is {region.value}"
            )
    elif not p.m.real > 1:
        raise ParameterRegionError(f"Z needs Re(m) > 1, got m={p.m}")


class NormEstimator(ABC):
    """
    Abstract base class for estimating the L^2 norm of Q_alpha or Z_m.
    """

    method: NormMethod

    @abstractmethod
    def estimate(
        self, p: CouplingParameter, kind: NormKind, grid: Optional[RadialGrid] = None
    ) -> NormEstimate:
        """
        Estimates the operator norm for the given parameter.
        """
        pass

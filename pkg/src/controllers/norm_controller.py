from dataclasses import dataclass

from loguru import logger

from src.controllers.base_controller import BaseController
from src.enums.kinds_enum import NormKind
from src.models.grid import CouplingParameter
from src.models.norms import NormReport, norm_report
from src.models.region import RegionClass, region_classify


@dataclass(frozen=True)
class RegionReport:
    alpha: complex
    sqrt_alpha: complex
    classification: RegionClass


class NormController(BaseController):
    """
    Controller for region classification and operator norms of Q_alpha and Z_m.
    """

    def region(self, alpha: complex) -> RegionReport:
        classification = region_classify(alpha, self.tolerances.boundary)
        logger.info(f"alpha={alpha} classified as {classification.region.value}")
        return RegionReport(complex(alpha), CouplingParameter.from_alpha(alpha).m, classification)

    def norm(self, alpha: complex, kind: NormKind = NormKind.Q) -> NormReport:
        """
        Runs all three norm estimators on the configured grid.

        Raises:
            ParameterRegionError: If the operator is unbounded at alpha.
        """
        p = CouplingParameter.from_alpha(alpha)
        report = norm_report(p, NormKind(kind), self.grid())
        logger.info(
            f"Norm of {report.kind.value} at alpha={alpha}: max deviation {report.max_relative_deviation:.3e}"
        )
        return report

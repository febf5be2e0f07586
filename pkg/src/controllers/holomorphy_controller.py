from dataclasses import dataclass

import numpy as np
from loguru import logger

from src.controllers.base_controller import BaseController
from src.enums.kinds_enum import KernelKind
from src.models.grid import CouplingParameter, GridFunction, windowed_polynomial
from src.models.holomorphy import (
    AnalyticityReport,
    EdgeWitness,
    KatoRellichReport,
    conjugation_symmetry,
    edge_witness,
    family_analyticity,
    kato_rellich_check,
    random_family,
)
from src.models.kernels import KernelSpec


@dataclass(frozen=True)
class HoloReport:
    analyticity: AnalyticityReport
    kato_rellich: KatoRellichReport
    edge: EdgeWitness
    conjugation_deviation: float


class HolomorphyController(BaseController):
    """
    Controller for the analyticity proxy and the matrix-scale perturbation checks.
    """

    def holo(self, alpha0: complex, r: float = 0.1, c: float = 0.5, size: int = 50) -> HoloReport:
        grid = self.grid()
        g = GridFunction.from_callable(grid, windowed_polynomial(0.1, 0.5))
        analyticity = family_analyticity(alpha0, r, g, 1.0)

        family = random_family(size, c, self.seed)
        angles = 2 * np.pi * np.arange(8) / 8
        kato = kato_rellich_check(family, 0.9 * family.radius * np.exp(1j * angles), seed=self.seed)
        edge = edge_witness(family)

        spec = KernelSpec(KernelKind.FORWARD_GREEN, CouplingParameter.from_alpha(alpha0))
        conjugation = conjugation_symmetry(spec, seed=self.seed)
        logger.info(
            f"Holomorphy at alpha0={alpha0}: contour residual {analyticity.contour_residual:.3e}, "
            f"perturbation checks passed={kato.passed}"
        )
        return HoloReport(analyticity, kato, edge, conjugation)

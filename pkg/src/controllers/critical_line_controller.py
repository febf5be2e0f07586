from dataclasses import dataclass
from typing import Optional

import numpy as np
from loguru import logger

from src.controllers.base_controller import BaseController
from src.enums.kinds_enum import KernelKind
from src.models.critical_line import (
    DivergenceDiagnostic,
    TauNorm,
    WindowDrift,
    g_tau,
    g_tau_norm_sq,
    pathology_diagnostic,
    pathology_rows,
    window_drift,
)
from src.models.grid import CouplingParameter
from src.models.kernels import KernelSpec, apply_green

DEFAULT_SAMPLES = (1e-2, 1e-3, 1e-4, 1e-5)


@dataclass(frozen=True)
class PathologyReport:
    diagnostic: DivergenceDiagnostic
    norm: TauNorm
    drift: WindowDrift


class CriticalLineController(BaseController):
    """
    Controller for the Re(m) = 1 witnesses g_tau.
    """

    def samples(self, x_list: Optional[list] = None) -> list[float]:
        grid = self.grid()
        x_list = DEFAULT_SAMPLES if x_list is None else x_list
        return [x for x in x_list if grid.x_min * 4 <= x <= 0.5]

    def pathology(self, tau: float, m: complex, x_list: Optional[list] = None) -> PathologyReport:
        grid = self.grid()
        xs = self.samples(x_list)
        if not xs:
            raise ValueError(f"No sample points inside the grid (x_min={grid.x_min:.3e})")
        diagnostic = pathology_diagnostic(tau, m, grid, xs)

        t = g_tau(tau, m, grid)
        f = apply_green(KernelSpec(KernelKind.COMPRESSED_TWO_SIDED, CouplingParameter(m), 1.0), t.samples)
        drift_x = np.geomspace(1e-2, max(xs[-1], grid.x_min * 4), 9)
        drift = window_drift(CouplingParameter(m), f, drift_x, tau, correlation_tolerance=self.tolerances.correlation)
        logger.info(
            f"Pathology tau={tau} m={m}: drift correlation {drift.correlation:.4f}, divergent={drift.divergent}"
        )
        return PathologyReport(diagnostic, g_tau_norm_sq(tau, grid), drift)

    def rows(self, report: PathologyReport) -> list[dict]:
        return pathology_rows(report.diagnostic)

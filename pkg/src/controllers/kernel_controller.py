from dataclasses import dataclass
from typing import Optional

from loguru import logger

from src.controllers.base_controller import BaseController
from src.enums.kinds_enum import KernelKind, Region
from src.models.grid import CouplingParameter, GridFunction, RadialGrid, windowed_polynomial
from src.models.kernels import KernelSpec, discretize, green_residual
from src.models.region import region_classify


@dataclass(frozen=True)
class GreenCheckReport:
    alpha: complex
    m: complex
    kind: KernelKind
    region: Region
    grid: dict
    residual: float
    coarse_residual: float
    convergence_ratio: float
    passed: bool
    matrix_path: Optional[str] = None


class KernelController(BaseController):
    """
    Controller for the Green's identity L_alpha G g = g on Gaussian bumps.
    """

    def default_kind(self, alpha: complex) -> KernelKind:
        """Forward Green strictly inside the parabola, two-sided elsewhere."""
        inside = region_classify(alpha, self.tolerances.boundary).region == Region.INSIDE
        return KernelKind.FORWARD_GREEN if inside else KernelKind.TWO_SIDED_GREEN

    def green_check(
        self,
        alpha: complex,
        kind: Optional[KernelKind] = None,
        center: float = 1.0,
        width: float = 1.0,
        matrix_out: Optional[str] = None,
    ) -> GreenCheckReport:
        """
        With ``matrix_out`` the discretized kernel on the configured grid is also
        written there as CSV, one re_k and im_k column pair per grid column.
        """
        p = CouplingParameter.from_alpha(alpha)
        kind = KernelKind(kind) if kind else self.default_kind(alpha)
        if not kind.is_green or kind.is_compressed:
            raise ValueError(f"green-check runs ForwardGreen or TwoSidedGreen, not {kind.value}")
        spec = KernelSpec(kind, p)
        bump = windowed_polynomial(center, width)

        grid = self.grid()
        coarse = RadialGrid(grid.t_min, grid.t_max, (grid.n + 1) // 2)
        residual = green_residual(spec, GridFunction.from_callable(grid, bump))
        coarse_residual = green_residual(spec, GridFunction.from_callable(coarse, bump))
        ratio = coarse_residual / residual if residual > 0 else float("inf")
        if matrix_out:
            discretize(spec, grid).to_csv(matrix_out)
            logger.info(f"Wrote {kind.value} matrix n={grid.n} to {matrix_out}")
        passed = residual <= self.tolerances.green_residual
        if not passed:
            logger.warning(f"Green residual {residual:.3e} above tolerance at alpha={alpha}")
        logger.info(f"Green check {kind.value} alpha={alpha}: residual {residual:.3e}, ratio {ratio:.2f}")
        return GreenCheckReport(
            alpha=complex(alpha),
            m=p.m,
            kind=kind,
            region=region_classify(alpha, self.tolerances.boundary).region,
            grid=grid.provenance(),
            residual=residual,
            coarse_residual=coarse_residual,
            convergence_ratio=ratio,
            passed=passed,
            matrix_path=matrix_out,
        )

from dataclasses import dataclass
from typing import Optional

import numpy as np
from loguru import logger

from src.controllers.base_controller import BaseController
from src.enums.kinds_enum import InequalityKind
from src.models.domain import (
    BoundaryCoefficients,
    DomainReport,
    boundary_coefficients,
    classify_domain,
    function_sampler,
)
from src.models.grid import CouplingParameter, CutoffSpec, apply_bessel, windowed_polynomial
from src.models.inequalities import InequalityRecord, inequality_check


@dataclass(frozen=True)
class BoundaryReport:
    m: complex
    a: float
    c_plus_input: complex
    c_minus_input: complex
    smooth_weight: float
    coefficients: BoundaryCoefficients
    domain: DomainReport


def canonical_inputs(kind: InequalityKind, alpha: Optional[complex], grid) -> dict:
    """Reference inputs for each inequality."""
    if kind == InequalityKind.ESTIMA:
        return {"f_fn": lambda x: np.heaviside(1 - x, 0.5)}
    if kind == InequalityKind.RELLICH:
        return {"u_fn": lambda x: x**2 * np.exp(-x)}
    if kind == InequalityKind.HARDY:
        return {"u_fn": lambda x: x * np.exp(-x)}
    return {
        "p": CouplingParameter.from_alpha(0.25 + 0.5j if alpha is None else alpha),
        "g_fn": windowed_polynomial(0.1, 0.5),
        "a": 1.0,
        "grid": grid,
    }


class DomainController(BaseController):
    """
    Controller for boundary coefficients, domain classification and the
    inequality suite.
    """

    def boundary(
        self,
        m: complex,
        c_plus: complex = 1.0,
        c_minus: complex = 0.0,
        smooth: float = 0.0,
        a: float = 0.5,
    ) -> BoundaryReport:
        """
        Builds f = (c_plus x^{1/2+m} + c_minus x^{1/2-m}) xi + smooth x^2 e^{-x},
        recovers the coefficients and classifies f.
        """
        p = CouplingParameter(m, allow_negative=True)
        xi = CutoffSpec()

        def f_fn(x):
            return (c_plus * x ** (0.5 + p.m) + c_minus * x ** (0.5 - p.m)) * xi(x) + smooth * x**2 * np.exp(-x)

        sampler = function_sampler(f_fn)
        grid = self.grid()
        f = sampler(grid)
        tol = self.tolerances
        coefficients = boundary_coefficients(
            p, f, apply_bessel(p, f, accuracy=8), a, precondition_tolerance=tol.bessel_precondition
        )
        domain = classify_domain(
            p,
            sampler,
            grid,
            a,
            tol.coefficient,
            limit_tolerance=tol.membership,
            stability_tolerance=tol.stability,
            growth_tolerance=tol.growth,
        )
        logger.info(
            f"Boundary coefficients at m={p.m}: c+={coefficients.c_plus:.6g}, "
            f"c-={coefficients.c_minus:.6g}, class {domain.classification.value}"
        )
        return BoundaryReport(p.m, a, complex(c_plus), complex(c_minus), smooth, coefficients, domain)

    def check(self, kind: InequalityKind, alpha: Optional[complex] = None) -> InequalityRecord:
        kind = InequalityKind(kind)
        record = inequality_check(kind, **canonical_inputs(kind, alpha, self.grid()))
        logger.info(f"{kind.value}: lhs={record.lhs:.10g} rhs={record.rhs:.10g} ratio={record.ratio:.10g}")
        return record

import numpy as np
from loguru import logger

from src.controllers.base_controller import BaseController
from src.controllers.domain_controller import DomainController
from src.controllers.forms_controller import FormsController
from src.controllers.holomorphy_controller import HolomorphyController
from src.controllers.kernel_controller import KernelController
from src.controllers.norm_controller import NormController
from src.enums.kinds_enum import FactorSign, InequalityKind, NormKind, Region
from src.models.critical_line import g_tau_norm_sq
from src.models.grid import CouplingParameter
from src.models.norms import DistanceNorm, multiplier_sup
from src.models.region import region_classify

RANDOM_ALPHAS = 50


class ReportController(BaseController):
    """
    Runs a reduced acceptance suite with the configured grid and seed.
    """

    def _share(self, controller_class):
        return controller_class(self.app_config)

    def regions(self) -> dict:
        expected = {"0.25": Region.INSIDE, "4": Region.OUTSIDE, "-3+4i": Region.BOUNDARY}
        alphas = {"0.25": 0.25, "4": 4.0, "-3+4i": -3 + 4j}
        found = {key: region_classify(alpha, self.tolerances.boundary).region for key, alpha in alphas.items()}
        return {"classes": found, "passed": found == expected}

    def norm_formulas(self) -> dict:
        rng = np.random.default_rng(self.seed)
        m = rng.uniform(0.0, 0.95, RANDOM_ALPHAS) + 1j * rng.uniform(-2.0, 2.0, RANDOM_ALPHAS)
        worst = 0.0
        for value in m:
            p = CouplingParameter(complex(value))
            closed = DistanceNorm().estimate(p, NormKind.Q).value
            worst = max(worst, abs(multiplier_sup(p).value - closed) / closed)
        return {"samples": RANDOM_ALPHAS, "max_relative_deviation": worst, "passed": worst <= 1e-8}

    def svd_norm(self) -> dict:
        report = self._share(NormController).norm(0.25, NormKind.Q)
        svd = report.estimates["discretized_svd"]
        gap = abs(svd.best - 4.0 / 3.0) / (4.0 / 3.0)
        return {
            "raw": svd.value,
            "extrapolated": svd.extrapolated,
            "compared": svd.best,
            "relative_gap": gap,
            "passed": gap <= 0.02,
        }

    def green(self) -> dict:
        report = self._share(KernelController).green_check(0.25 + 1j)
        return {"residual": report.residual, "ratio": report.convergence_ratio, "passed": report.passed}

    def inequalities(self) -> dict:
        controller = self._share(DomainController)
        records = {kind.value: controller.check(kind) for kind in InequalityKind}
        return {"records": records, "passed": all(r.holds for r in records.values())}

    def critical_line(self) -> dict:
        norms = [g_tau_norm_sq(tau) for tau in (0.6, 0.75, 0.9)]
        worst = max(n.relative_deviation for n in norms)
        return {"norms": norms, "max_relative_deviation": worst, "passed": worst <= 1e-6}

    def forms(self) -> dict:
        result = self._share(FormsController).factorize(0.5, FactorSign.PLUS)
        worst = max(result.deviation_plus, result.deviation_minus)
        return {
            "deviation_plus": result.deviation_plus,
            "deviation_minus": result.deviation_minus,
            "passed": worst <= self.tolerances.form,
        }

    def holomorphy(self) -> dict:
        report = self._share(HolomorphyController).holo(0.25, 0.1)
        passed = (
            report.kato_rellich.passed
            and report.analyticity.contour_residual <= 1e-6
            and report.conjugation_deviation <= 1e-14
        )
        return {
            "contour_residual": report.analyticity.contour_residual,
            "perturbation_passed": report.kato_rellich.passed,
            "edge_scaled_modulus": report.edge.scaled_modulus,
            "conjugation_deviation": report.conjugation_deviation,
            "passed": passed,
        }

    def report(self) -> dict:
        sections = {
            "regions": self.regions(),
            "norm_formulas": self.norm_formulas(),
            "svd_norm": self.svd_norm(),
            "green_identity": self.green(),
            "inequalities": self.inequalities(),
            "critical_line": self.critical_line(),
            "factorizations": self.forms(),
            "holomorphy": self.holomorphy(),
        }
        passed = all(section["passed"] for section in sections.values())
        logger.info(f"Acceptance report finished: passed={passed}")
        return {
            "grid": self.grid().provenance(),
            "seed": self.seed,
            "sections": sections,
            "passed": passed,
        }

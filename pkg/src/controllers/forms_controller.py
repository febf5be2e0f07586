from loguru import logger

from src.controllers.base_controller import BaseController
from src.enums.kinds_enum import FactorSign
from src.models.forms import FormResult, factorization_check
from src.models.grid import GridFunction, windowed_polynomial


class FormsController(BaseController):
    """
    Controller for the two factorizations of H_m on interior bumps.
    """

    def factorize(self, m: complex, sign: FactorSign = FactorSign.PLUS) -> FormResult:
        grid = self.grid()
        f = GridFunction.from_callable(grid, windowed_polynomial(1.5, 0.4, (1.0, 0.3)))
        g = GridFunction.from_callable(grid, windowed_polynomial(1.2, 0.4, (1.0, -0.2, 0.1)))
        result = factorization_check(m, FactorSign(sign), f, g)
        logger.info(f"Factorization m={m} {result.sign.value}: deviation {result.deviation_plus:.3e}")
        return result

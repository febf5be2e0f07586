"""
Operator norms of discretized Q_alpha and Z_m from singular values.
"""

import numpy as np
from loguru import logger
from scipy.linalg import svdvals
from scipy.sparse.linalg import svds

from .base_norm import NormEstimate, NormEstimator, check_norm_parameter
from src.enums.kinds_enum import KernelKind, NormKind, NormMethod
from src.models.kernels import DiscretizedOperator, KernelSpec, discretize

DENSE_SVD_LIMIT = 2048


def largest_singular_value(matrix: np.ndarray) -> float:
    if matrix.shape[0] <= DENSE_SVD_LIMIT:
        return float(svdvals(matrix, check_finite=False)[0])
    return float(svds(matrix, k=1, return_singular_vectors=False, random_state=0)[0])


def operator_norm_svd(op: DiscretizedOperator, refine: bool = True) -> NormEstimate:
    """
    Largest singular value of sqrt(w_j) K(x_j, x_k) sqrt(w_k).

    With ``refine`` the operator is rebuilt on ``grid.refined()`` (twice the
    section length) and the two values are extrapolated assuming an error
    proportional to 1/L^2. Finite sections approach the norm from below.
    """
    if op.spec.kind not in (KernelKind.Q, KernelKind.Z):
        raise ValueError(f"SVD norms are defined for Q and Z, not {op.spec.kind.value}")
    value = largest_singular_value(op.symmetrized())
    refinement = [{**op.grid.provenance(), "value": value}]
    extrapolated = None
    if refine:
        finer = discretize(op.spec, op.grid.refined())
        finer_value = largest_singular_value(finer.symmetrized())
        refinement.append({**finer.grid.provenance(), "value": finer_value})
        extrapolated = finer_value + (finer_value - value) / 3.0
        logger.debug(
            f"SVD norm {op.spec.kind.value} m={op.spec.m}: {value:.8g} -> {finer_value:.8g}, "
            f"extrapolated {extrapolated:.8g}"
        )
    return NormEstimate(
        value,
        NormMethod.DISCRETIZED_SVD,
        grid=op.grid.provenance(),
        refinement=refinement,
        extrapolated=extrapolated,
    )


class SvdNorm(NormEstimator):
    method = NormMethod.DISCRETIZED_SVD

    def __init__(self, refine: bool = True):
        self.refine = refine

    def estimate(self, p, kind: NormKind, grid=None) -> NormEstimate:
        if grid is None:
            raise ValueError("The SVD estimate needs a grid")
        check_norm_parameter(p, kind)
        spec = KernelSpec(KernelKind(NormKind(kind).value), p)
        return operator_norm_svd(discretize(spec, grid), self.refine)

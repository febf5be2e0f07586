from fastapi import APIRouter, Depends, HTTPException, Query

from src.controllers.critical_line_controller import CriticalLineController
from src.controllers.forms_controller import FormsController
from src.controllers.holomorphy_controller import HolomorphyController
from src.controllers.kernel_controller import KernelController
from src.controllers.norm_controller import NormController
from src.enums.kinds_enum import FactorSign, NormKind
from src.enums.messages_enum import Messages
from src.helpers.log_helper import Logger
from src.helpers.serialization_helper import parse_complex, to_jsonable

analysis_router = APIRouter(prefix="/api/v1/analysis", tags=["api_v1_analysis"])

log_instance = Logger(log_name="api_requests_analysis")
logger = log_instance.get_logger()


def get_norm_controller():
    return NormController()


def get_kernel_controller():
    return KernelController()


def get_critical_line_controller():
    return CriticalLineController()


def get_forms_controller():
    return FormsController()


def get_holomorphy_controller():
    return HolomorphyController()


def _respond(name: str, run):
    """
    Runs a controller call and wraps the report.

    Raises:
        HTTPException: 400 for invalid parameters, 500 for anything else.
    """
    try:
        report = run()
    except ValueError as e:
        logger.error(f"{name}: validation error: {e}")
        raise HTTPException(status_code=400, detail=f"{Messages.PARAMETER_FAILURE.value} {e}")
    except Exception as e:
        logger.error(f"{name}: unexpected error: {e}")
        raise HTTPException(status_code=500, detail=Messages.INTERNAL_FAILURE.value)
    logger.info(f"{name}: {Messages.REPORT_SUCCESS.value}")
    return {"message": Messages.REPORT_SUCCESS.value, "data": to_jsonable(report)}


@analysis_router.get("/region")
async def region(
    alpha: str = Query(..., description="Complex parameter, e.g. -3+4i"),
    controller: NormController = Depends(get_norm_controller),
):
    """
    Classifies alpha against the parabola {alpha_R + |alpha| = 2}.
    """
    return _respond("region", lambda: controller.region(parse_complex(alpha)))


@analysis_router.get("/norm")
async def norm(
    alpha: str = Query(..., description="Complex parameter"),
    kind: NormKind = Query(NormKind.Q),
    controller: NormController = Depends(get_norm_controller),
):
    """
    Norm of Q_alpha or Z_m by the distance formula, the multiplier sup and the
    discretized SVD.
    """
    return _respond("norm", lambda: controller.norm(parse_complex(alpha), kind))


@analysis_router.get("/green-check")
async def green_check(
    alpha: str = Query(..., description="Complex parameter"),
    center: float = Query(1.0, gt=0),
    width: float = Query(1.0, gt=0),
    controller: KernelController = Depends(get_kernel_controller),
):
    return _respond(
        "green-check", lambda: controller.green_check(parse_complex(alpha), None, center, width)
    )


@analysis_router.get("/pathology")
async def pathology(
    tau: float = Query(..., description="Exponent in (1/2, 1)"),
    m: str = Query("1", description="Parameter on the line Re(m) = 1"),
    controller: CriticalLineController = Depends(get_critical_line_controller),
):
    return _respond("pathology", lambda: controller.pathology(tau, parse_complex(m)))


@analysis_router.get("/factorize")
async def factorize(
    m: str = Query(..., description="Parameter with Re(m) > -1"),
    sign: FactorSign = Query(FactorSign.PLUS),
    controller: FormsController = Depends(get_forms_controller),
):
    return _respond("factorize", lambda: controller.factorize(parse_complex(m), sign))


@analysis_router.get("/holo")
async def holo(
    alpha0: str = Query("0.25", description="Center inside the parabola"),
    r: float = Query(0.1, gt=0),
    controller: HolomorphyController = Depends(get_holomorphy_controller),
):
    return _respond("holo", lambda: controller.holo(parse_complex(alpha0), r))

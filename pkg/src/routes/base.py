from fastapi import APIRouter, Depends

from config.app_config import DEFAULT_CONFIG_PATH, load_config
from config.env_config import Settings, get_settings

base_router = APIRouter(prefix="/api/v1", tags=["api_v1"])


@base_router.get("/")
async def welcome(app_settings: Settings = Depends(get_settings)):
    """
    App name and version, plus the grid and tolerances requests run with.
    """
    config = load_config(app_settings.CONFIG_PATH or DEFAULT_CONFIG_PATH)
    return {
        "App_Name": app_settings.APP_NAME,
        "App_Version": app_settings.APP_VERSION,
        "Grid": config.grid.model_dump(),
        "Tolerances": config.tolerances.model_dump(),
    }


@base_router.get("/health")
async def health():
    return {"status": "ok"}

from fastapi import FastAPI

from config.env_config import get_settings
from src.helpers.log_helper import Logger
from src.routes import analysis, base

settings = get_settings()
log_instance = Logger(log_name="app", log_dir=settings.LOG_DIR, level=settings.LOG_LEVEL)
logger = log_instance.get_logger()

app = FastAPI(title=settings.APP_NAME, version=settings.APP_VERSION)

# Register API routes
app.include_router(base.base_router)
app.include_router(analysis.analysis_router)

logger.info("FastAPI application has started.")

if __name__ == "__main__":
    import uvicorn

    uvicorn.run("main:app", host="0.0.0.0", port=8000, reload=True)

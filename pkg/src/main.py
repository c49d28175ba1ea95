"""
qtrace HTTP API main application entry point.
"""
import logging
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from src.application.backend_tracing.registry import BackendRegistry
from src.interfaces.api.models import HealthResponse
from src.interfaces.api.router import router as forensics_router
from src.shared.config import get_settings
from src.shared.exceptions import ForensicsError
from src.shared.logging import setup_logging

# Set up logging
setup_logging()
logger = logging.getLogger(__name__)

# Load settings
settings = get_settings()

# Create FastAPI application
app = FastAPI(
    title="qtrace API",
    description="Coupling-map forensics for transpiled quantum circuits",
    version=settings.VERSION,
    debug=settings.DEBUG,
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Loaded on startup, or lazily by the first request that needs it
backend_registry: Optional[BackendRegistry] = None

app.include_router(forensics_router, prefix="/forensics", tags=["Forensics"])


@app.on_event("startup")
async def startup_event():
    """Load the default backend registry."""
    global backend_registry
    logger.info("Starting qtrace API")
    try:
        backend_registry = await BackendRegistry.load(settings.DEFAULT_REGISTRY_PATH)
    except ForensicsError as e:
        logger.warning(f"Default registry unavailable: {e.message}")


@app.on_event("shutdown")
async def shutdown_event():
    logger.info("Shutting down qtrace API")


@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    """Global exception handler for all unhandled exceptions."""
    logger.error(f"Unhandled exception: {exc}", exc_info=True)
    return JSONResponse(
        status_code=500,
        content={"detail": "An unexpected error occurred."},
    )


@app.exception_handler(ForensicsError)
async def forensics_exception_handler(request: Request, exc: ForensicsError):
    return JSONResponse(
        status_code=exc.status_code,
        content={"error": exc.message, "type": exc.__class__.__name__},
    )


@app.get("/health", response_model=HealthResponse, tags=["Root"])
async def health_check() -> HealthResponse:
    return HealthResponse(service=settings.APP_NAME, status="healthy", message="qtrace API is operating normally")


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        "src.main:app",
        host=settings.HOST,
        port=settings.PORT,
        reload=settings.DEBUG,
        log_level="debug" if settings.DEBUG else "info",
    )

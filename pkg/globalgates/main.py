import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from globalgates.core.catalog import catalog_keys
from globalgates.core.config import get_settings
from globalgates.core.logging_setup import configure_logging
from globalgates.routers.catalog import router as catalog_router
from globalgates.routers.physics import router as physics_router
from globalgates.routers.synthesize import router as synthesize_router
from globalgates.routers.verify import router as verify_router

logger = logging.getLogger(__name__)

# -----------------------------------------------------------------------------
# Settings (load once for app metadata and middleware)
# -----------------------------------------------------------------------------
settings = get_settings()


# -----------------------------------------------------------------------------
# Lifespan: startup / shutdown
# -----------------------------------------------------------------------------
@asynccontextmanager
async def lifespan(app: FastAPI):
    configure_logging()
    logger.info("Config initialized: %s %s", settings.APP_NAME, settings.APP_VERSION)
    # Builds the catalog once, including the unequal-coupling residual check.
    keys = catalog_keys()
    logger.info("Catalog loaded: %d entries", len(keys))
    yield
    logger.info("Shutting down")


# -----------------------------------------------------------------------------
# App
# -----------------------------------------------------------------------------
app = FastAPI(
    title=settings.APP_NAME,
    version=settings.APP_VERSION,
    description="Global entangling-gate circuits: verify, synthesize, and simulate trapped-ion realizations",
    lifespan=lifespan,
)

CORS_ORIGINS: list[str] = ["*"]

app.add_middleware(
    CORSMiddleware,
    allow_origins=CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# -----------------------------------------------------------------------------
# Routers
# -----------------------------------------------------------------------------
app.include_router(verify_router, prefix="/api/v1", tags=["verify"])
app.include_router(synthesize_router, prefix="/api/v1", tags=["synthesize"])
app.include_router(physics_router, prefix="/api/v1", tags=["physics"])
app.include_router(catalog_router, prefix="/api/v1", tags=["catalog"])


# -----------------------------------------------------------------------------
# Global endpoints
# -----------------------------------------------------------------------------
@app.get("/health")
def health():
    """Health check for deployment and monitoring."""
    return {"status": "ok", "version": settings.APP_VERSION}

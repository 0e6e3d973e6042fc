from fastapi import FastAPI
import logging

from app.core.config import get_settings
from app.models.schemas import HealthResponse
from app.services.kashina import build_H
from app.services.suites import SUITE_NAMES
from app.routes import suites, stream

settings = get_settings()

# Configure logging
logging.basicConfig(
    level=settings.log_level.upper(),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)

logger = logging.getLogger(__name__)

# Initialize FastAPI app
app = FastAPI(
    title="Kashina Hopf Algebra Engine",
    description="Exact verification suites for the 16-dimensional Kashina algebra, its double, Nichols algebras and liftings",
    version="1.0.0"
)


# Include routers
app.include_router(suites.router, tags=["Suites"])
app.include_router(stream.router, tags=["Streaming"])


@app.on_event("startup")
async def startup_event():
    """Build H once so the first suite request does not pay for it."""
    logger.info("🚀 Starting Hopf algebra engine...")

    try:
        H = build_H()
        logger.info(f"✅ H ready (dim {H.dim})")
        logger.info("🎉 Engine ready to serve suites!")

    except Exception as e:
        logger.error(f"❌ Startup failed: {e}")
        raise


@app.get("/")
async def root():
    """Root endpoint."""
    return {
        "service": "Kashina Hopf Algebra Engine",
        "version": "1.0.0",
        "status": "online",
        "docs": "/docs"
    }


@app.get("/health", response_model=HealthResponse)
async def health_check():
    """
    Health check endpoint.

    Reports the dimension of the cached H and the available suites.
    """
    H = build_H()
    return HealthResponse(
        status="healthy" if H.dim == 16 else "degraded",
        h_dimension=H.dim,
        suites=SUITE_NAMES
    )


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)

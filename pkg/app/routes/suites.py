from fastapi import APIRouter, Depends, HTTPException, Header
import time
import uuid
import logging

from app.models.schemas import SuiteReport, SuiteRequest
from app.services.suites import SuiteOptions, build_report, run_suite
from app.core.config import get_settings
from app.core.errors import AlgebraError

logger = logging.getLogger(__name__)
router = APIRouter()
settings = get_settings()


def verify_api_key(authorization: str = Header(...)):
    """Verify API key from Authorization header."""
    if not authorization.startswith("Bearer "):
        raise HTTPException(status_code=401, detail="Invalid authorization header")

    token = authorization.replace("Bearer ", "")
    if token != settings.api_key:
        raise HTTPException(status_code=401, detail="Invalid API key")


def options_from(request: SuiteRequest) -> SuiteOptions:
    return SuiteOptions(
        max_degree=request.max_degree,
        cap=request.cap,
        params=request.params,
        tag=request.tag,
        family=request.family,
        action=request.action,
        left=request.left,
        right=request.right,
        witness=request.witness,
        all_modules=request.all_modules,
    )


@router.post("/suites/{name}", response_model=SuiteReport, response_model_by_alias=True)
def run_suite_endpoint(
    name: str,
    request: SuiteRequest,
    _: None = Depends(verify_api_key)
):
    """
    Run one verification suite and return its report.

    Unknown suites, tags or families are rejected with 400.
    """
    trace_id = str(uuid.uuid4())
    start_time = time.time()
    logger.info(f"[{trace_id}] Suite {name} requested")

    try:
        records = run_suite(name, options_from(request))
    except AlgebraError as e:
        logger.error(f"[{trace_id}] ❌ Suite {name} rejected: {e}")
        raise HTTPException(status_code=400, detail=f"{type(e).__name__}: {e}")

    report = build_report(name, records)
    elapsed_ms = (time.time() - start_time) * 1000
    logger.info(f"[{trace_id}] Suite {name} complete in {elapsed_ms:.2f}ms")
    return {**report, "elapsed_ms": elapsed_ms}

from fastapi import APIRouter, Depends, HTTPException
from sse_starlette.sse import EventSourceResponse
from starlette.concurrency import iterate_in_threadpool
import json
import time
import uuid
import logging
from typing import AsyncGenerator

from app.models.schemas import SuiteRequest
from app.routes.suites import options_from, verify_api_key
from app.services.suites import SUITE_NAMES, SuiteOptions, iter_suite, summarize
from app.core.errors import AlgebraError

logger = logging.getLogger(__name__)
router = APIRouter()


async def stream_suite_records(
    name: str,
    options: SuiteOptions,
    trace_id: str
) -> AsyncGenerator[str, None]:
    """
    Yield one JSON event per CheckRecord, then a completion event.

    Each record is computed on the threadpool; the event loop only
    forwards the events.

    Suite errors end the stream with an error event instead of a summary.
    """
    start_time = time.time()
    records = []

    try:
        async for record in iterate_in_threadpool(iter_suite(name, options)):
            records.append(record)
            yield json.dumps(record.to_dict())
    except AlgebraError as e:
        logger.error(f"[{trace_id}] ❌ Suite {name} aborted: {e}")
        yield json.dumps({"error": type(e).__name__, "detail": str(e), "trace_id": trace_id})
        return

    yield json.dumps({
        "complete": True,
        "trace_id": trace_id,
        "suite": name,
        "summary": summarize(records),
        "latency_ms": (time.time() - start_time) * 1000
    })


@router.post("/suites/{name}/stream")
async def stream_suite(
    name: str,
    request: SuiteRequest,
    _: None = Depends(verify_api_key)
):
    """
    Stream a suite's records using Server-Sent Events.

    Returns:
        SSE stream with:
        - one {"suite", "name", "status", "payload"} object per record
        - {"complete": true, "summary": {...}} at the end
    """
    if name not in SUITE_NAMES:
        raise HTTPException(status_code=400, detail=f"UnknownSuite: {name}")

    trace_id = str(uuid.uuid4())
    logger.info(f"[{trace_id}] Streaming suite {name}")

    return EventSourceResponse(
        stream_suite_records(name, options_from(request), trace_id),
        media_type="text/event-stream"
    )

"""
Verification endpoints

Endpoint                      Service
----------------------------  ------------------------------
GET /suites                   verify.suite_catalog()
POST /                        verify.run_verify()

Service error                 Status Codes
----------------------------  --------------------------
InvalidInputError             422(Unprocessable Entity)
BoundExceededError            422(Unprocessable Entity)
ChainComplexError             500(Internal Server Error)
(failing report)              200(OK), `passed: false`
"""

import logging

from fastapi import APIRouter, HTTPException, status
from starlette.concurrency import run_in_threadpool

from app.core.exceptions import ChainComplexError, InvalidInputError
from app.core.logger import get_logger
from app.models.verify import ReportRead, SuiteRead, VerifyRequest
from app.services import verify

logger = get_logger(__name__, logging.INFO)

router: APIRouter = APIRouter()


@router.get(
    "/suites",
    summary="List Verification Suites",
    status_code=status.HTTP_200_OK,
    response_model=list[SuiteRead],
)
async def list_suites() -> list[SuiteRead]:
    return verify.suite_catalog()


@router.post(
    "",
    summary="Run Verification Suite",
    status_code=status.HTTP_200_OK,
    response_model=ReportRead,
    responses={
        200: {"description": "Suite executed; `passed` tells whether every case held"},
        422: {"description": "Invalid parameters or bound exceeded"},
        500: {"description": "Internal server error"},
    },
)
async def run_verify(request: VerifyRequest) -> ReportRead:
    """
    Run one registered suite

    - Grid suites run over all grids of size n <= 3 and over seeded random grids above
    - Cut suites run over every cut unless `cut_k` / `cut_kp` are given
    """

    try:
        report = await run_in_threadpool(verify.run_verify, request)
        if not report.passed:
            logger.warning(f"run_verify: {report.summary()}")
        return verify.report_read(report)

    except HTTPException:
        raise

    except InvalidInputError as e:
        logger.warning(f"run_verify: 422={e.message}")
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=e.message)

    except ChainComplexError as e:
        logger.error(f"run_verify: 500={e.message}")
        raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=e.message)

    except Exception as e:
        msg = "Failed to run verification suite"
        logger.error(f"{msg}: {e}", exc_info=True)
        raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=msg)

"""
Homology endpoint

Endpoint                      Service
----------------------------  ------------------------------
POST /                        homology.homology_table()
"""

import logging

from fastapi import APIRouter, HTTPException, status
from starlette.concurrency import run_in_threadpool

from app.core.exceptions import InvalidInputError
from app.core.logger import get_logger
from app.models.homology import HomologyRead, HomologyRequest
from app.services import homology
from app.services.gradings import Bigrade

logger = get_logger(__name__, logging.INFO)

router: APIRouter = APIRouter()


@router.post(
    "",
    summary="CP^- Homology",
    status_code=status.HTTP_200_OK,
    response_model=HomologyRead,
    responses={
        200: {"description": "F2 dimension of the homology in each bigrade"},
        422: {"description": "Invalid grid or bound exceeded"},
        500: {"description": "Internal server error"},
    },
)
async def compute_homology(request: HomologyRequest) -> HomologyRead:
    """Homology of the planar grid complex over F2[U_1, ..., U_{N-1}], bigrade by bigrade."""

    try:
        grid = request.grid.to_grid()
        window = None if request.window is None else [Bigrade(g.alexander, g.maslov) for g in request.window]
        return await run_in_threadpool(homology.homology_table, grid, window)

    except HTTPException:
        raise

    except InvalidInputError as e:
        logger.warning(f"compute_homology: 422={e.message}")
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=e.message)

    except Exception as e:
        msg = "Failed to compute homology"
        logger.error(f"{msg}: {e}", exc_info=True)
        raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=msg)

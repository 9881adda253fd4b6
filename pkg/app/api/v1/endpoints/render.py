"""
Rendering endpoint

Endpoint                      Service
----------------------------  ------------------------------
POST /                        render.render_request()
"""

import logging

from fastapi import APIRouter, HTTPException, status

from app.core.exceptions import InvalidInputError
from app.core.logger import get_logger
from app.models.homology import RenderRead, RenderRequest
from app.services import render

logger = get_logger(__name__, logging.INFO)

router: APIRouter = APIRouter()


@router.post(
    "",
    summary="Render Object",
    status_code=status.HTTP_200_OK,
    response_model=RenderRead,
    responses={
        200: {"description": "ASCII picture, top row first"},
        422: {"description": "Invalid object description"},
        500: {"description": "Internal server error"},
    },
)
async def render_object(request: RenderRequest) -> RenderRead:
    try:
        return RenderRead(text=render.render_request(request))

    except HTTPException:
        raise

    except InvalidInputError as e:
        logger.warning(f"render_object: 422={e.message}")
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=e.message)

    except Exception as e:
        msg = "Failed to render object"
        logger.error(f"{msg}: {e}", exc_info=True)
        raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=msg)

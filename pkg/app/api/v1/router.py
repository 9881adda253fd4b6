"""
API v1 main router
"""

from fastapi import APIRouter

from app.api.v1.endpoints import homology, render, verify

api_router = APIRouter()

# Include all endpoint routers
api_router.include_router(verify.router, prefix="/verify", tags=["Verify"])
api_router.include_router(homology.router, prefix="/homology", tags=["Homology"])
api_router.include_router(render.router, prefix="/render", tags=["Render"])

from fastapi import APIRouter

from app.api.routes import embed, health, translate, variants

api_router = APIRouter()
api_router.include_router(health.router)
api_router.include_router(embed.router)
api_router.include_router(translate.router)
api_router.include_router(variants.router)

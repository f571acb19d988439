from fastapi import APIRouter, Depends

from app.models.schemas import EmbedIn, EmbedOut
from app.services.embedder_service import EmbedderService, get_reference_embedder

router = APIRouter(prefix="/embed", tags=["embed"])


@router.post("", response_model=EmbedOut)
def embed(payload: EmbedIn, embedder: EmbedderService = Depends(get_reference_embedder)) -> EmbedOut:
    return EmbedOut(vectors=[vector.tolist() for vector in embedder.embed(payload.texts)])

from fastapi import APIRouter, Depends

from app.models.schemas import TranslateIn, TranslateOut
from app.services.translator_service import TranslatorService, get_translator_service

router = APIRouter(prefix="/translate", tags=["translate"])


@router.post("", response_model=TranslateOut)
def translate(payload: TranslateIn, service: TranslatorService = Depends(get_translator_service)) -> TranslateOut:
    return TranslateOut(translation=service.translate(payload.source, payload.src_lang, payload.tgt_lang))

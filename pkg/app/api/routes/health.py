from fastapi import APIRouter, Depends

from app.core.source import LangId
from app.models.schemas import HealthOut
from app.services.exec_service import ExecService, get_exec_service

router = APIRouter(tags=["health"])


@router.get("/health", response_model=HealthOut)
def health(executor: ExecService = Depends(get_exec_service)) -> HealthOut:
    return HealthOut(status="ok", toolchains={lang.value: executor.available(lang) for lang in LangId})

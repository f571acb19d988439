from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from app.api.router import api_router
from app.core.errors import ToolkitError
from app.models.schemas import ErrorOut


async def toolkit_error_handler(request: Request, exc: ToolkitError) -> JSONResponse:
    body = ErrorOut(detail=exc.detail, error_code=exc.error_code)
    return JSONResponse(status_code=exc.status_code, content=body.model_dump())


def create_app() -> FastAPI:
    app = FastAPI(title="Code Translation Robustness API")
    app.add_exception_handler(ToolkitError, toolkit_error_handler)
    app.include_router(api_router)
    return app


app = create_app()

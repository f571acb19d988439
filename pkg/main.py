"""ASGI entry point: ``uvicorn main:app`` or ``python main.py``."""

import os

import uvicorn

from app.main import app

__all__ = ["app"]


if __name__ == "__main__":
    uvicorn.run("main:app", host=os.environ.get("COTR_HOST", "127.0.0.1"), port=int(os.environ.get("COTR_PORT", "8000")))

import pytest

from app.core.config import Config, set_config
from app.services.exec_service import ExecService
from app.storage.memory import RunStore


@pytest.fixture(autouse=True)
def config(monkeypatch):
    monkeypatch.delenv("COTR_CONFIG", raising=False)
    active = Config()
    set_config(active)
    return active


@pytest.fixture
def run_store():
    return RunStore()


@pytest.fixture
def executor(config, run_store):
    return ExecService(config, run_store)

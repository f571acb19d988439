import pytest
from fastapi.testclient import TestClient

import main
from app.core.source import LangId
from app.main import create_app
from app.services.exec_service import get_exec_service
from app.services.translator_service import TranslatorService, get_translator_service
from tests.fixtures import brittle
from tests.support import CLAMP_SUM, BrittleTranslator


@pytest.fixture
def client(executor, run_store):
    app = create_app()
    app.dependency_overrides[get_exec_service] = lambda: executor
    app.dependency_overrides[get_translator_service] = lambda: TranslatorService(BrittleTranslator(brittle.table()), run_store)
    return TestClient(app)


def test_health(client, executor):
    response = client.get("/health")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "ok"
    assert body["toolchains"]["python"] is True
    assert body["toolchains"]["java"] == executor.available(LangId.JAVA)


def test_variants(client):
    response = client.post("/variants", json={"source": CLAMP_SUM, "lang": "python", "rules": "lc"})
    assert response.status_code == 200
    variants = response.json()["variants"]
    assert variants
    assert all(set(v["plan"]) <= {"L", "C"} and v["text"] != CLAMP_SUM for v in variants)


def test_variants_bad_rules(client):
    response = client.post("/variants", json={"source": CLAMP_SUM, "lang": "python", "rules": "LZ"})
    assert response.status_code == 400
    assert response.json()["error_code"] == "usage"


def test_variants_syntax_error(client):
    response = client.post("/variants", json={"source": "def f(:\n", "lang": "python"})
    assert response.status_code == 422
    assert response.json()["error_code"] == "syntax_error"


def test_variants_schema_error(client):
    response = client.post("/variants", json={"source": CLAMP_SUM, "lang": "cobol"})
    assert response.status_code == 422


def test_translate(client):
    sample = brittle.SAMPLES[0]
    response = client.post("/translate", json={"source": sample["java"], "src_lang": "java", "tgt_lang": "python"})
    assert response.status_code == 200
    assert response.json() == {"translation": sample["python"]}


def test_translate_same_language(client):
    response = client.post("/translate", json={"source": "x", "src_lang": "python", "tgt_lang": "python"})
    assert response.status_code == 400
    assert response.json()["error_code"] == "usage"


def test_embed(client):
    response = client.post("/embed", json={"texts": ["a b", "c"]})
    assert response.status_code == 200
    vectors = response.json()["vectors"]
    assert len(vectors) == 2 and len(vectors[0]) == 512


def test_embed_without_tokens(client):
    response = client.post("/embed", json={"texts": ["   "]})
    assert response.status_code == 422
    assert response.json()["error_code"] == "empty_token_stream"


def test_asgi_entry_point():
    assert main.app.title == "Code Translation Robustness API"
    paths = {route.path for route in main.app.routes}
    assert {"/health", "/embed", "/translate", "/variants"} <= paths

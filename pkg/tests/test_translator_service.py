import json
import shlex
import sys
from pathlib import Path

import httpx
import pytest
from fastapi.testclient import TestClient

from app.core.config import TranslatorEndpoint
from app.core.errors import ConfigError, EmptyTranslation, TranslatorTimeout, TransportError, UsageError
from app.core.source import LangId
from app.main import create_app
from app.services.translator_service import (
    ChildProcessTranslator,
    HttpTranslator,
    TranslatorService,
    build_translator,
    get_translator_service,
)
from tests.fixtures import brittle
from tests.support import BrittleTranslator

SCRIPT = Path(__file__).parent / "fixtures" / "brittle_translator.py"
SUM_TO = brittle.SAMPLES[0]


def inline(code, *extra):
    return " ".join([shlex.quote(sys.executable), "-c", shlex.quote(code), *map(shlex.quote, extra)])


@pytest.fixture
def table_path(tmp_path):
    path = tmp_path / "table.json"
    path.write_text(json.dumps(brittle.table()), encoding="utf-8")
    return path


class TestChildProcess:
    def test_translates_through_stdin(self, table_path):
        spec = f"{shlex.quote(sys.executable)} {shlex.quote(str(SCRIPT))} --table {shlex.quote(str(table_path))}"
        translator = build_translator(TranslatorEndpoint(spec=spec))
        assert isinstance(translator, ChildProcessTranslator)
        assert translator.translate(SUM_TO["java"], LangId.JAVA, LangId.PYTHON) == SUM_TO["python"]

    def test_trigger_token_breaks_the_translation(self, table_path):
        spec = f"{shlex.quote(sys.executable)} {shlex.quote(str(SCRIPT))} --table {shlex.quote(str(table_path))}"
        translator = ChildProcessTranslator(TranslatorEndpoint(spec=spec))
        source = SUM_TO["java"].replace("int s = 0;", "int s = 0; // while")
        assert translator.translate(source, LangId.JAVA, LangId.PYTHON) == "def sum_to(*args):\n    return -999"

    def test_timeout(self):
        translator = ChildProcessTranslator(TranslatorEndpoint(spec=inline("import time; time.sleep(10)"), timeout_ms=300))
        with pytest.raises(TranslatorTimeout):
            translator.translate("x", LangId.JAVA, LangId.PYTHON)

    def test_failures_are_retried(self, tmp_path):
        counter = tmp_path / "attempts"
        code = "import sys; open(sys.argv[1], 'a').write('x'); sys.exit(3)"
        translator = ChildProcessTranslator(TranslatorEndpoint(spec=inline(code, str(counter)), max_retries=2))
        with pytest.raises(TransportError):
            translator.translate("x", LangId.JAVA, LangId.PYTHON)
        assert counter.read_text() == "xxx"

    def test_empty_output(self):
        translator = ChildProcessTranslator(TranslatorEndpoint(spec=inline("print()")))
        with pytest.raises(EmptyTranslation):
            translator.translate("x", LangId.JAVA, LangId.PYTHON)

    def test_missing_command(self):
        with pytest.raises(ConfigError):
            ChildProcessTranslator(TranslatorEndpoint(spec="  "))


class TestHttp:
    def test_round_trip_through_the_api(self, run_store):
        app = create_app()
        app.dependency_overrides[get_translator_service] = lambda: TranslatorService(
            BrittleTranslator(brittle.table()), run_store
        )
        endpoint = TranslatorEndpoint(kind="http", spec="http://testserver/translate")
        translator = build_translator(endpoint, client=TestClient(app))
        assert isinstance(translator, HttpTranslator)
        assert translator.translate(SUM_TO["java"], LangId.JAVA, LangId.PYTHON) == SUM_TO["python"]

    def test_server_errors_are_retried(self):
        calls = []

        def failing(request):
            calls.append(json.loads(request.content))
            return httpx.Response(503)

        client = httpx.Client(transport=httpx.MockTransport(failing))
        translator = HttpTranslator(TranslatorEndpoint(kind="http", spec="http://model/translate", max_retries=1), client)
        with pytest.raises(TransportError):
            translator.translate("x", LangId.JAVA, LangId.PYTHON)
        assert calls == [{"source": "x", "src_lang": "java", "tgt_lang": "python"}] * 2

    def test_timeout_is_not_retried(self):
        calls = []

        def slow(request):
            calls.append(request)
            raise httpx.ReadTimeout("slow", request=request)

        client = httpx.Client(transport=httpx.MockTransport(slow))
        translator = HttpTranslator(TranslatorEndpoint(kind="http", spec="http://model/translate"), client)
        with pytest.raises(TranslatorTimeout):
            translator.translate("x", LangId.JAVA, LangId.PYTHON)
        assert len(calls) == 1

    def test_missing_url(self):
        with pytest.raises(ConfigError):
            HttpTranslator(TranslatorEndpoint(kind="http"))


class TestTranslatorService:
    def test_translations_are_cached(self, run_store):
        model = BrittleTranslator(brittle.table())
        service = TranslatorService(model, run_store)
        first = service.translate(SUM_TO["java"], LangId.JAVA, LangId.PYTHON)
        second = service.translate(SUM_TO["java"], LangId.JAVA, LangId.PYTHON)
        assert first == second == SUM_TO["python"]
        assert len(model.calls) == 1
        assert run_store.counters.translation_hits == 1

    def test_same_language_is_rejected(self, run_store):
        service = TranslatorService(BrittleTranslator(brittle.table()), run_store)
        with pytest.raises(UsageError):
            service.translate("x", LangId.PYTHON, LangId.PYTHON)

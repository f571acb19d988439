"""Clients for the translation model under test.

``child_process`` runs ``<spec> --from <lang> --to <lang>`` with the source on
stdin; ``http`` posts ``{"source", "src_lang", "tgt_lang"}`` to the ``translator.spec`` URL.
Transport failures are retried up to ``max_retries``; timeouts are not.
"""

import logging
import shlex
import subprocess
import threading
from typing import Optional, Protocol

import httpx

from app.core.config import TranslatorEndpoint, get_config
from app.core.errors import ConfigError, EmptyTranslation, TranslatorTimeout, TransportError, UsageError
from app.core.source import LangId
from app.storage.memory import RunStore, store

logger = logging.getLogger(__name__)


class Translator(Protocol):
    def translate(self, source: str, src: LangId, tgt: LangId) -> str: ...


def _finish(output: str) -> str:
    if output.endswith("\n"):
        output = output[:-1]
    if not output.strip():
        raise EmptyTranslation("model returned an empty translation")
    return output


class ChildProcessTranslator:
    def __init__(self, endpoint: TranslatorEndpoint) -> None:
        self._argv = shlex.split(endpoint.spec)
        if not self._argv:
            raise ConfigError("translator.spec must name a command for the child_process kind")
        self._endpoint = endpoint
        self._gate = threading.BoundedSemaphore(endpoint.max_concurrency)

    def translate(self, source: str, src: LangId, tgt: LangId) -> str:
        argv = self._argv + ["--from", src.value, "--to", tgt.value]
        failure: Optional[TransportError] = None
        for attempt in range(self._endpoint.max_retries + 1):
            with self._gate:
                try:
                    completed = subprocess.run(
                        argv,
                        input=source.encode("utf-8"),
                        capture_output=True,
                        timeout=self._endpoint.timeout_ms / 1000,
                    )
                except subprocess.TimeoutExpired as exc:
                    raise TranslatorTimeout(f"translator exceeded {self._endpoint.timeout_ms} ms") from exc
                except OSError as exc:
                    failure = TransportError(f"cannot start translator: {exc}")
                    break
            if completed.returncode == 0:
                return _finish(completed.stdout.decode("utf-8", errors="replace"))
            tail = completed.stderr.decode("utf-8", errors="replace").strip().splitlines()[-1:] or [""]
            failure = TransportError(f"translator exited with {completed.returncode}: {tail[0]}")
            logger.warning("translator attempt %d failed: %s", attempt + 1, failure.detail)
        raise failure


class HttpTranslator:
    def __init__(self, endpoint: TranslatorEndpoint, client: Optional[httpx.Client] = None) -> None:
        if not endpoint.spec:
            raise ConfigError("translator.spec must be a URL for the http kind")
        self._endpoint = endpoint
        self._client = client or httpx.Client()
        self._gate = threading.BoundedSemaphore(endpoint.max_concurrency)

    def translate(self, source: str, src: LangId, tgt: LangId) -> str:
        payload = {"source": source, "src_lang": src.value, "tgt_lang": tgt.value}
        failure: Optional[TransportError] = None
        for attempt in range(self._endpoint.max_retries + 1):
            with self._gate:
                try:
                    response = self._client.post(self._endpoint.spec, json=payload, timeout=self._endpoint.timeout_ms / 1000)
                    response.raise_for_status()
                    return _finish(str(response.json()["translation"]))
                except httpx.TimeoutException as exc:
                    raise TranslatorTimeout(f"translator exceeded {self._endpoint.timeout_ms} ms") from exc
                except (httpx.HTTPError, KeyError, ValueError) as exc:
                    failure = TransportError(f"translation request failed: {exc}")
            logger.warning("translator attempt %d failed: %s", attempt + 1, failure.detail)
        raise failure


def build_translator(endpoint: TranslatorEndpoint, client: Optional[httpx.Client] = None) -> Translator:
    if endpoint.kind == "http":
        return HttpTranslator(endpoint, client)
    return ChildProcessTranslator(endpoint)


class TranslatorService:
    """Caches translations per run, keyed by (source text, language pair)."""

    def __init__(self, translator: Translator, store: RunStore) -> None:
        self._translator = translator
        self._store = store

    def translate(self, source: str, src: LangId, tgt: LangId) -> str:
        if src == tgt:
            raise UsageError("source and target languages must differ")
        key = (source, src.value, tgt.value)
        cached = self._store.get_translation(key)
        if cached is not None:
            return cached
        translation = self._translator.translate(source, src, tgt)
        self._store.set_translation(key, translation)
        return translation


_service: Optional[TranslatorService] = None


def get_translator_service() -> TranslatorService:
    global _service
    if _service is None:
        _service = TranslatorService(build_translator(get_config().translator), store)
    return _service

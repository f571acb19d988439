import logging
from typing import List, Optional, Sequence

import httpx
import numpy as np

from app.core.config import EmbedderEndpoint, get_config
from app.core.embedding import hash_embed_all
from app.core.errors import ConfigError, DimensionMismatch, EmptyInput, TransportError

logger = logging.getLogger(__name__)


class EmbedderService:
    def __init__(self, endpoint: EmbedderEndpoint, client: Optional[httpx.Client] = None) -> None:
        if endpoint.kind == "http" and not endpoint.url:
            raise ConfigError("embedder.url is required for the http kind")
        self._endpoint = endpoint
        self._owns_client = client is None and endpoint.kind == "http"
        self._client = httpx.Client() if self._owns_client else client

    def close(self) -> None:
        """Close the HTTP client if this service created it."""
        if self._owns_client:
            self._client.close()

    def __enter__(self) -> "EmbedderService":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()

    @property
    def dim(self) -> int:
        return self._endpoint.dim

    def embed(self, texts: Sequence[str]) -> List[np.ndarray]:
        if not texts:
            raise EmptyInput("nothing to embed")
        if self._endpoint.kind == "builtin_hash":
            return hash_embed_all(texts, self._endpoint.dim)
        return self._embed_remote(list(texts))

    def _embed_remote(self, texts: List[str]) -> List[np.ndarray]:
        try:
            response = self._client.post(self._endpoint.url, json={"texts": texts}, timeout=self._endpoint.timeout_ms / 1000)
            response.raise_for_status()
            rows = response.json()["vectors"]
        except (httpx.HTTPError, KeyError, ValueError) as exc:
            raise TransportError(f"embedding request failed: {exc}") from exc
        if len(rows) != len(texts):
            raise TransportError(f"embedder returned {len(rows)} vectors for {len(texts)} texts")
        vectors = [np.asarray(row, dtype=np.float64) for row in rows]
        for vector in vectors:
            if vector.shape != (self._endpoint.dim,):
                raise DimensionMismatch(f"embedder returned {vector.size} components, expected {self._endpoint.dim}")
            if not np.all(np.isfinite(vector)):
                raise TransportError("embedder returned non-finite components")
        return vectors


def get_reference_embedder() -> EmbedderService:
    """Builtin hash embedder at the configured dimension, served by ``POST /embed``."""
    return EmbedderService(EmbedderEndpoint(kind="builtin_hash", dim=get_config().embedder.dim))

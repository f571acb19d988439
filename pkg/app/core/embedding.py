"""Hashed bag-of-tokens embedding and cosine distance."""

import hashlib
from typing import List, Sequence

import numpy as np

from app.core.errors import DimensionMismatch, EmptyTokenStream, ZeroVector
from app.core.tokens import tokenize


def token_bucket(token: str, dim: int) -> int:
    digest = hashlib.blake2b(token.lower().encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big") % dim


def hash_embed(text: str, dim: int) -> np.ndarray:
    tokens = tokenize(text)
    if not tokens:
        raise EmptyTokenStream("text has no tokens to embed")
    vector = np.zeros(dim, dtype=np.float64)
    for token in tokens:
        vector[token_bucket(token, dim)] += 1.0
    return vector / np.linalg.norm(vector)


def hash_embed_all(texts: Sequence[str], dim: int) -> List[np.ndarray]:
    return [hash_embed(text, dim) for text in texts]


def cosine_distance(u: Sequence[float], v: Sequence[float]) -> float:
    a = np.asarray(u, dtype=np.float64)
    b = np.asarray(v, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot compare vectors of size {a.size} and {b.size}")
    norm_a, norm_b = np.linalg.norm(a), np.linalg.norm(b)
    if norm_a == 0.0 or norm_b == 0.0:
        raise ZeroVector("cosine distance is undefined for an all-zero vector")
    similarity = float(np.dot(a, b) / (norm_a * norm_b))
    return float(min(2.0, max(0.0, 1.0 - similarity)))

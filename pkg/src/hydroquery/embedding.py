"""Text embedding: deterministic hashed bag-of-words plus a remote HTTP embedder.

The hashed embedder is the offline default: lowercase, tokenize on runs of
non-alphanumeric characters, FNV-1a 64-bit hash each token, accumulate counts
into `dimension` bins, L2-normalize. Deterministic across runs and platforms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np
import requests

from .errors import (
    DegenerateVector,
    DimensionMismatch,
    IncompatibleEmbedders,
    ProviderUnavailable,
)

_TOKEN_RE = re.compile(r"[a-z0-9]+")

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF

DEFAULT_DIMENSION = 512


@dataclass(frozen=True)
class EmbedderSpec:
    kind: str = "hashed-bow"  # "hashed-bow" | "remote"
    dimension: int = DEFAULT_DIMENSION
    endpoint: str | None = None
    model_name: str | None = None
    timeout_s: float = 30.0

    def __post_init__(self) -> None:
        if self.kind not in ("hashed-bow", "remote"):
            raise ValueError(f"unknown embedder kind {self.kind!r}")
        if self.dimension < 8:
            raise ValueError("dimension must be >= 8")
        if self.kind == "remote" and not self.endpoint:
            raise ValueError("remote embedder requires an endpoint")

    @property
    def embedder_id(self) -> str:
        if self.kind == "hashed-bow":
            return f"hashed-bow-fnv1a64-v1-d{self.dimension}"
        return f"remote-{self.model_name or 'unnamed'}-d{self.dimension}"


@dataclass(frozen=True)
class EmbeddingVector:
    values: tuple[float, ...]
    embedder_id: str
    degenerate: bool = field(default=False)

    @property
    def dimension(self) -> int:
        return len(self.values)


def fnv1a64(data: bytes) -> int:
    """FNV-1a 64-bit hash."""
    h = _FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    return h


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


def embed_text(text: str, spec: EmbedderSpec) -> EmbeddingVector:
    """Embed a single text; degenerate (zero) vector when no tokens survive."""
    if spec.kind == "hashed-bow":
        return _embed_hashed(text, spec)
    return _embed_remote([text], spec)[0]


def _embed_hashed(text: str, spec: EmbedderSpec) -> EmbeddingVector:
    counts = np.zeros(spec.dimension, dtype=np.float64)
    for token in tokenize(text):
        counts[fnv1a64(token.encode("utf-8")) % spec.dimension] += 1.0
    norm = float(np.linalg.norm(counts))
    if norm == 0.0:
        return EmbeddingVector(
            values=tuple(counts.tolist()), embedder_id=spec.embedder_id, degenerate=True
        )
    return EmbeddingVector(
        values=tuple((counts / norm).tolist()), embedder_id=spec.embedder_id
    )


def _embed_remote(texts: list[str], spec: EmbedderSpec) -> list[EmbeddingVector]:
    try:
        resp = requests.post(
            spec.endpoint, json={"texts": texts}, timeout=spec.timeout_s
        )
        resp.raise_for_status()
        payload = resp.json()
    except requests.RequestException as exc:
        raise ProviderUnavailable(f"embedding endpoint failed: {exc}") from exc
    vectors = payload.get("vectors")
    if not isinstance(vectors, list) or len(vectors) != len(texts):
        raise DimensionMismatch("endpoint returned wrong number of vectors")
    out = []
    for vec in vectors:
        if len(vec) != spec.dimension:
            raise DimensionMismatch(
                f"expected dimension {spec.dimension}, got {len(vec)}"
            )
        arr = np.asarray(vec, dtype=np.float64)
        norm = float(np.linalg.norm(arr))
        if norm == 0.0:
            out.append(
                EmbeddingVector(tuple(arr.tolist()), spec.embedder_id, degenerate=True)
            )
        else:
            out.append(EmbeddingVector(tuple((arr / norm).tolist()), spec.embedder_id))
    return out


def cosine(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """Cosine similarity of two unit vectors (plain dot product)."""
    if a.embedder_id != b.embedder_id:
        raise IncompatibleEmbedders(f"{a.embedder_id} vs {b.embedder_id}")
    if a.degenerate or b.degenerate:
        raise DegenerateVector("cannot compare degenerate vectors")
    return float(np.dot(a.values, b.values))

"""Exact top-k cosine similarity index over embedded method docs.

Brute-force scan, no ANN: the corpus is one toolkit class's methods. The
index persists as JSON Lines with a checksummed header so truncated files
never load as partial indexes.
"""

from __future__ import annotations

import datetime
import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .doc_ingest import DocCorpus, Diagnostic, MethodDoc
from .embedding import EmbedderSpec, EmbeddingVector, embed_text
from .errors import (
    ChecksumMismatch,
    EmptyIndex,
    FormatVersionMismatch,
    IncompatibleEmbedders,
)

FORMAT_VERSION = 1
DEFAULT_TOP_K = 8


@dataclass(frozen=True)
class IndexEntry:
    doc: MethodDoc
    vector: EmbeddingVector


@dataclass(frozen=True)
class Retrieval:
    doc_id: str
    score: float
    rank: int  # 1-based


@dataclass
class VectorIndex:
    embedder_id: str
    dimension: int
    source_label: str
    built_at: str
    entries: list[IndexEntry] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._matrix: np.ndarray | None = None
        self._by_id = {e.doc.id: e for e in self.entries}

    def entry(self, doc_id: str) -> IndexEntry:
        return self._by_id[doc_id]

    def _vectors(self) -> np.ndarray:
        if self._matrix is None:
            self._matrix = np.array([e.vector.values for e in self.entries])
        return self._matrix


def embedding_input(doc: MethodDoc) -> str:
    """The text embedded per doc: signature, newline, description."""
    return doc.signature + "\n" + doc.description


def build_index(
    corpus: DocCorpus, spec: EmbedderSpec
) -> tuple[VectorIndex, list[Diagnostic]]:
    """Embed every doc; degenerate embeddings are excluded with a diagnostic."""
    if not corpus.docs:
        raise EmptyIndex("corpus is empty")
    entries: list[IndexEntry] = []
    diagnostics: list[Diagnostic] = []
    for i, doc in enumerate(corpus.docs):
        vec = embed_text(embedding_input(doc), spec)
        if vec.degenerate:
            diagnostics.append(Diagnostic(i, f"degenerate embedding for {doc.id!r}"))
            continue
        entries.append(IndexEntry(doc=doc, vector=vec))
    if not entries:
        raise EmptyIndex("all docs produced degenerate embeddings")
    index = VectorIndex(
        embedder_id=spec.embedder_id,
        dimension=spec.dimension,
        source_label=corpus.source_label,
        built_at=datetime.datetime.now(datetime.timezone.utc).isoformat(),
        entries=entries,
    )
    return index, diagnostics


def top_k(index: VectorIndex, query_vec: EmbeddingVector, k: int) -> list[Retrieval]:
    """Exact top-k by cosine score, ties broken by ascending doc id.

    The score is the correctly rounded sum of the per-dimension products
    (math.fsum), not a float accumulation. That makes it independent of
    summation order, so mathematically tied docs always compare equal and
    the doc-id tie-break is reproducible across implementations.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not index.entries:
        raise EmptyIndex("index has no entries")
    if query_vec.embedder_id != index.embedder_id:
        raise IncompatibleEmbedders(
            f"query {query_vec.embedder_id} vs index {index.embedder_id}"
        )
    products = index._vectors() * np.asarray(query_vec.values)
    scores = [math.fsum(row) for row in products]
    order = sorted(
        range(len(index.entries)),
        key=lambda i: (-scores[i], index.entries[i].doc.id),
    )
    return [
        Retrieval(doc_id=index.entries[i].doc.id, score=float(scores[i]), rank=r + 1)
        for r, i in enumerate(order[: min(k, len(index.entries))])
    ]


def _header_dict(index: VectorIndex, entry_lines: list[str]) -> dict:
    checksum = hashlib.sha256("\n".join(entry_lines).encode("utf-8")).hexdigest()
    return {
        "format_version": FORMAT_VERSION,
        "embedder_id": index.embedder_id,
        "dimension": index.dimension,
        "source_label": index.source_label,
        "built_at": index.built_at,
        "entry_count": len(index.entries),
        "checksum": checksum,
    }


def _entry_line(entry: IndexEntry) -> str:
    # repr() gives shortest decimal that round-trips a float exactly
    return json.dumps(
        {
            "id": entry.doc.id,
            "name": entry.doc.name,
            "signature": entry.doc.signature,
            "description": entry.doc.description,
            "vector": list(entry.vector.values),
        },
        ensure_ascii=False,
    )


def save_index(index: VectorIndex, path: str | Path) -> None:
    entry_lines = [_entry_line(e) for e in index.entries]
    header = json.dumps(_header_dict(index, entry_lines), ensure_ascii=False)
    Path(path).write_text("\n".join([header] + entry_lines) + "\n", encoding="utf-8")


def load_index(path: str | Path) -> VectorIndex:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ChecksumMismatch("empty index file")
    header = json.loads(lines[0])
    if header.get("format_version") != FORMAT_VERSION:
        raise FormatVersionMismatch(
            f"format_version {header.get('format_version')} != {FORMAT_VERSION}"
        )
    entry_lines = lines[1:]
    if len(entry_lines) != header["entry_count"]:
        raise ChecksumMismatch(
            f"expected {header['entry_count']} entries, found {len(entry_lines)}"
        )
    checksum = hashlib.sha256("\n".join(entry_lines).encode("utf-8")).hexdigest()
    if checksum != header["checksum"]:
        raise ChecksumMismatch("entry checksum does not match header")
    entries = []
    for line in entry_lines:
        obj = json.loads(line)
        doc = MethodDoc(
            id=obj["id"],
            name=obj["name"],
            signature=obj["signature"],
            description=obj["description"],
        )
        vec = EmbeddingVector(
            values=tuple(obj["vector"]), embedder_id=header["embedder_id"]
        )
        entries.append(IndexEntry(doc=doc, vector=vec))
    return VectorIndex(
        embedder_id=header["embedder_id"],
        dimension=header["dimension"],
        source_label=header["source_label"],
        built_at=header["built_at"],
        entries=entries,
    )

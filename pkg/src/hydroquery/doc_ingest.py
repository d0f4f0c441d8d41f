"""Parse toolkit API documentation into retrievable method records.

Two ingestion paths produce the same corpus shape: a plaintext dump
(blank-line-separated entries, signature line + indented description) and a
structured JSON file as emitted by the harness extraction script.
"""

from __future__ import annotations

import datetime
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DuplicateId, EmptyCorpus, SchemaError

_SIGNATURE_RE = re.compile(r"^(?P<name>[A-Za-z_][A-Za-z0-9_]*)\((?P<args>.*)\)\s*$")


@dataclass(frozen=True)
class MethodDoc:
    """One toolkit API method: the unit of retrieval."""

    id: str
    name: str
    signature: str
    description: str

    def validate(self) -> None:
        if self.id != self.name.lower():
            raise SchemaError(f"id {self.id!r} is not lowercased name {self.name!r}")
        if not self.signature.startswith(self.name + "(") or not self.signature.endswith(")"):
            raise SchemaError(f"signature {self.signature!r} malformed for {self.name!r}")
        if not self.description.strip():
            raise SchemaError(f"empty description for {self.name!r}")


@dataclass
class DocCorpus:
    docs: list[MethodDoc]
    source_label: str
    extracted_at: str = field(
        default_factory=lambda: datetime.datetime.now(datetime.timezone.utc).isoformat()
    )


@dataclass(frozen=True)
class Diagnostic:
    entry_index: int
    reason: str


def _split_entries(text: str) -> list[list[str]]:
    entries: list[list[str]] = []
    current: list[str] = []
    for line in text.splitlines():
        if line.strip():
            current.append(line)
        elif current:
            entries.append(current)
            current = []
    if current:
        entries.append(current)
    return entries


def parse_doc_dump(
    text: str, source_label: str = "dump"
) -> tuple[DocCorpus, list[Diagnostic]]:
    """Parse a plaintext documentation dump.

    Entries are separated by blank lines; line 1 is `name(args)`, subsequent
    indented lines form the description. Malformed entries are skipped and
    reported as diagnostics keyed by entry index.
    """
    docs: list[MethodDoc] = []
    diagnostics: list[Diagnostic] = []
    seen: dict[str, str] = {}
    for i, lines in enumerate(_split_entries(text)):
        head = lines[0]
        m = _SIGNATURE_RE.match(head.strip())
        if m is None:
            reason = "missing parameter list" if "(" not in head else "malformed signature line"
            diagnostics.append(Diagnostic(i, reason))
            continue
        description = "\n".join(ln.strip() for ln in lines[1:]).strip()
        if not description:
            diagnostics.append(Diagnostic(i, "empty description"))
            continue
        name = m.group("name")
        doc_id = name.lower()
        if doc_id in seen:
            raise DuplicateId(f"entries {seen[doc_id]!r} and {name!r} both normalize to {doc_id!r}")
        seen[doc_id] = name
        docs.append(MethodDoc(id=doc_id, name=name, signature=head.strip(), description=description))
    if not docs:
        raise EmptyCorpus(f"no well-formed entries in dump {source_label!r}")
    return DocCorpus(docs=docs, source_label=source_label), diagnostics


def load_corpus_structured(records: list[dict], source_label: str = "structured") -> DocCorpus:
    """Build a corpus from structured {name, signature, description} records."""
    if not records:
        raise EmptyCorpus("no records")
    docs: list[MethodDoc] = []
    seen: set[str] = set()
    for i, rec in enumerate(records):
        for key in ("name", "signature", "description"):
            if not isinstance(rec.get(key), str) or not rec[key].strip():
                raise SchemaError(f"record {i}: missing or empty field {key!r}")
        name = rec["name"]
        doc_id = name.lower()
        if doc_id in seen:
            raise DuplicateId(f"record {i}: duplicate id {doc_id!r}")
        seen.add(doc_id)
        doc = MethodDoc(
            id=doc_id,
            name=name,
            signature=rec["signature"],
            description=rec["description"],
        )
        try:
            doc.validate()
        except SchemaError as exc:
            raise SchemaError(f"record {i}: {exc}") from None
        docs.append(doc)
    return DocCorpus(docs=docs, source_label=source_label)


def export_corpus(corpus: DocCorpus) -> dict:
    """Serialize a corpus to the structured JSON shape (round-trips with load)."""
    return {
        "source_label": corpus.source_label,
        "extracted_at": corpus.extracted_at,
        "docs": [
            {"name": d.name, "signature": d.signature, "description": d.description}
            for d in corpus.docs
        ],
    }


def load_corpus_file(path: str | Path) -> DocCorpus:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(data, list):
        return load_corpus_structured(data, source_label=str(path))
    corpus = load_corpus_structured(data["docs"], source_label=data.get("source_label", str(path)))
    if "extracted_at" in data:
        corpus.extracted_at = data["extracted_at"]
    return corpus


def save_corpus_file(corpus: DocCorpus, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(export_corpus(corpus), indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )

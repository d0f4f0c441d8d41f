"""Assemble the four prompt kinds from templates, retrieved docs, and queries.

Templates are data files shipped with the package; template_version is a
content hash over all of them, recorded in every run so prompt drift is
detectable. For fixed inputs, prompt bytes are identical across runs.
"""

from __future__ import annotations

import enum
import hashlib
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .doc_ingest import MethodDoc
from .errors import EmptyGeneration, MalformedFunctionBlock, NoRetrievals

DESCRIPTION_TRUNCATE_AT = 600
TRACEBACK_TAIL_CHARS = 4000
TRUNCATION_MARKER = "…[truncated]"

ID_INDEX_TIP = "difference in the EPANET toolkit between elements ID and elements index"

_TEMPLATE_NAMES = (
    "generate_system_basic.txt",
    "generate_system_complex.txt",
    "generate_user.txt",
    "evaluate_system.txt",
    "evaluate_user.txt",
    "repair_user.txt",
)


class PromptLevel(enum.Enum):
    BASIC = "basic"
    COMPLEX = "complex"


class PromptKind(enum.Enum):
    GENERATE = "generate"
    EVALUATE = "evaluate"
    REPAIR = "repair"


@dataclass(frozen=True)
class PromptBundle:
    system_text: str
    user_text: str
    kind: PromptKind
    template_version: str


class TemplateSet:
    """All prompt templates, loaded once; identified by a content hash."""

    def __init__(self, texts: dict[str, str]):
        missing = set(_TEMPLATE_NAMES) - set(texts)
        if missing:
            raise FileNotFoundError(f"missing templates: {sorted(missing)}")
        self.texts = texts
        digest = hashlib.sha256()
        for name in _TEMPLATE_NAMES:
            digest.update(name.encode("utf-8"))
            digest.update(b"\0")
            digest.update(texts[name].encode("utf-8"))
            digest.update(b"\0")
        self.version = digest.hexdigest()[:16]

    @classmethod
    def bundled(cls) -> "TemplateSet":
        root = resources.files("hydroquery") / "templates"
        return cls({name: (root / name).read_text(encoding="utf-8") for name in _TEMPLATE_NAMES})

    @classmethod
    def from_dir(cls, path: str | Path) -> "TemplateSet":
        root = Path(path)
        return cls(
            {name: (root / name).read_text(encoding="utf-8") for name in _TEMPLATE_NAMES}
        )


def _truncate_description(text: str) -> str:
    if len(text) <= DESCRIPTION_TRUNCATE_AT:
        return text
    return text[:DESCRIPTION_TRUNCATE_AT] + TRUNCATION_MARKER


def format_docs(retrievals: list[tuple[MethodDoc, float]]) -> str:
    lines = []
    for i, (doc, _score) in enumerate(retrievals, start=1):
        desc = _truncate_description(doc.description).replace("\n", "\n   ")
        lines.append(f"{i}. {doc.signature}\n   {desc}")
    return "\n".join(lines)


def build_generation_prompt(
    query: str,
    retrievals: list[tuple[MethodDoc, float]],
    level: PromptLevel,
    templates: TemplateSet,
) -> PromptBundle:
    if not retrievals:
        raise NoRetrievals("generation prompt requires at least one retrieved doc")
    system_name = (
        "generate_system_basic.txt"
        if level is PromptLevel.BASIC
        else "generate_system_complex.txt"
    )
    user_text = (
        templates.texts["generate_user.txt"]
        .replace("{{DOCS}}", format_docs(retrievals))
        .replace("{{QUERY}}", query)
    )
    return PromptBundle(
        system_text=templates.texts[system_name],
        user_text=user_text,
        kind=PromptKind.GENERATE,
        template_version=templates.version,
    )


_DEF_RE = re.compile(r"^def\s", re.MULTILINE)


def _check_function_block(function_block: str) -> None:
    stripped = function_block.strip()
    if not stripped.startswith("def "):
        raise MalformedFunctionBlock("block does not begin with a function definition")
    top_level_defs = [
        ln for ln in function_block.splitlines() if ln.startswith("def ")
    ]
    if len(top_level_defs) != 1:
        raise MalformedFunctionBlock(
            f"expected exactly one top-level definition, found {len(top_level_defs)}"
        )


def build_eval_prompt(
    query: str, function_block: str, templates: TemplateSet
) -> PromptBundle:
    _check_function_block(function_block)
    user_text = (
        templates.texts["evaluate_user.txt"]
        .replace("{{CODE}}", function_block)
        .replace("{{QUERY}}", query)
    )
    return PromptBundle(
        system_text=templates.texts["evaluate_system.txt"],
        user_text=user_text,
        kind=PromptKind.EVALUATE,
        template_version=templates.version,
    )


def _truncate_traceback(traceback: str) -> str:
    if len(traceback) <= TRACEBACK_TAIL_CHARS:
        return traceback
    # keep the tail: the actual error line is at the end
    return TRUNCATION_MARKER + traceback[-TRACEBACK_TAIL_CHARS:]


def build_repair_prompt(
    query: str,
    function_block: str,
    eval_line: str,
    traceback: str,
    level: PromptLevel,
    templates: TemplateSet,
) -> PromptBundle:
    if not traceback.strip():
        raise ValueError("repair prompt requires a non-empty traceback")
    system_name = (
        "generate_system_basic.txt"
        if level is PromptLevel.BASIC
        else "generate_system_complex.txt"
    )
    user_text = (
        templates.texts["repair_user.txt"]
        .replace("{{QUERY}}", query)
        .replace("{{CODE}}", function_block)
        .replace("{{EVAL_LINE}}", eval_line)
        .replace("{{TRACEBACK}}", _truncate_traceback(traceback))
    )
    return PromptBundle(
        system_text=templates.texts[system_name],
        user_text=user_text,
        kind=PromptKind.REPAIR,
        template_version=templates.version,
    )


_FENCE_RE = re.compile(r"```[ \t]*[A-Za-z0-9_+-]*[ \t]*\n(.*?)```", re.DOTALL)


def extract_code_block(model_output: str) -> str:
    """First fenced block wins; prose fallback when no fence exists."""
    m = _FENCE_RE.search(model_output)
    text = m.group(1) if m else model_output
    text = text.strip()
    if not text:
        raise EmptyGeneration("model output contains no code")
    return text

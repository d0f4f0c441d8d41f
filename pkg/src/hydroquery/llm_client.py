"""Chat-completion providers in two roles: generator and evaluator.

Two provider kinds: `http-chat` speaks the standard chat-completion wire
format over HTTP; `scripted` replays a recorded transcript keyed by prompt
content hash, giving byte-deterministic tests. Transport retries (network
hiccups, rate limits) are deliberately separate from the pipeline's
code-repair retry counter.
"""

from __future__ import annotations

import enum
import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

import requests

from .errors import ProviderUnavailable, RateLimited, TranscriptMiss
from .prompting import PromptBundle

TRANSPORT_RETRIES = 3
AUTH_TOKEN_ENV = "HYDROQUERY_API_TOKEN"


class ModelRole(enum.Enum):
    GENERATOR = "generator"
    EVALUATOR = "evaluator"


@dataclass(frozen=True)
class ProviderSpec:
    kind: str  # "http-chat" | "scripted"
    endpoint: str | None = None
    model_name: str | None = None
    temperature: float = 0.0
    transcript_path: str | None = None
    request_timeout_s: float = 120.0

    def __post_init__(self) -> None:
        if self.kind not in ("http-chat", "scripted"):
            raise ValueError(f"unknown provider kind {self.kind!r}")
        if self.kind == "http-chat" and not self.endpoint:
            raise ValueError("http-chat provider requires an endpoint")
        if self.kind == "scripted" and not self.transcript_path:
            raise ValueError("scripted provider requires a transcript_path")


@dataclass(frozen=True)
class Completion:
    text: str
    prompt_hash: str
    latency_ms: int = 0
    token_counts: dict = field(default_factory=dict)


def prompt_hash(bundle: PromptBundle, role: ModelRole) -> str:
    payload = json.dumps(
        [bundle.system_text, bundle.user_text, role.value], ensure_ascii=False
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def prompt_digest(bundle: PromptBundle) -> str:
    """Short human-readable summary used in TranscriptMiss messages."""
    head = bundle.user_text.strip().replace("\n", " ")[:80]
    return f"kind={bundle.kind.value} user_text[:80]={head!r}"


class ScriptedProvider:
    """Deterministic provider replaying a JSONL transcript keyed by prompt hash."""

    def __init__(self, spec: ProviderSpec):
        self.spec = spec
        self.entries: dict[str, str] = {}
        path = Path(spec.transcript_path)
        for line in path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            obj = json.loads(line)
            self.entries[obj["prompt_hash"]] = obj["response_text"]

    def complete(self, bundle: PromptBundle, role: ModelRole) -> Completion:
        h = prompt_hash(bundle, role)
        if h not in self.entries:
            raise TranscriptMiss(h, prompt_digest(bundle))
        return Completion(text=self.entries[h], prompt_hash=h)


class HttpChatProvider:
    """Chat-completion HTTP client with bounded transport retries."""

    def __init__(self, spec: ProviderSpec, session: requests.Session | None = None):
        self.spec = spec
        self.session = session or requests.Session()

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        token = os.environ.get(AUTH_TOKEN_ENV)
        if token:
            headers["Authorization"] = f"Bearer {token}"
        return headers

    def complete(self, bundle: PromptBundle, role: ModelRole) -> Completion:
        body = {
            "model": self.spec.model_name,
            "messages": [
                {"role": "system", "content": bundle.system_text},
                {"role": "user", "content": bundle.user_text},
            ],
            "temperature": self.spec.temperature,
        }
        last_error: Exception | None = None
        for attempt in range(TRANSPORT_RETRIES + 1):
            started = time.monotonic()
            try:
                resp = self.session.post(
                    self.spec.endpoint,
                    json=body,
                    headers=self._headers(),
                    timeout=self.spec.request_timeout_s,
                )
            except requests.RequestException as exc:
                last_error = ProviderUnavailable(f"transport failure: {exc}")
                time.sleep(min(2**attempt * 0.25, 4.0))
                continue
            if resp.status_code == 429:
                if attempt == TRANSPORT_RETRIES:
                    raise RateLimited("rate limited after transport retries")
                retry_after = float(resp.headers.get("Retry-After", 2**attempt * 0.25))
                time.sleep(min(retry_after, 30.0))
                continue
            if resp.status_code >= 500:
                last_error = ProviderUnavailable(f"server error {resp.status_code}")
                time.sleep(min(2**attempt * 0.25, 4.0))
                continue
            if resp.status_code != 200:
                raise ProviderUnavailable(
                    f"provider returned {resp.status_code}", retryable=False
                )
            payload = resp.json()
            text = payload["choices"][0]["message"]["content"]
            latency_ms = int((time.monotonic() - started) * 1000)
            usage = payload.get("usage") or {}
            return Completion(
                text=text,
                prompt_hash=prompt_hash(bundle, role),
                latency_ms=latency_ms,
                token_counts={k: v for k, v in usage.items() if isinstance(v, int)},
            )
        raise last_error or ProviderUnavailable("provider unavailable")


def make_provider(spec: ProviderSpec):
    if spec.kind == "scripted":
        return ScriptedProvider(spec)
    return HttpChatProvider(spec)


def write_transcript(path: str | Path, entries: list[dict]) -> None:
    """Write transcript entries ({prompt_hash, role, response_text, note})."""
    lines = [json.dumps(e, ensure_ascii=False) for e in entries]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

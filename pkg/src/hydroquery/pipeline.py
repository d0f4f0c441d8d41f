"""End-to-end query pipeline: embed, retrieve, generate, evaluate, execute,
and repair on failure, bounded by a retry budget. Produces a full RunRecord
audit trail that can be replayed byte-for-byte from its own transcript.
"""

from __future__ import annotations

import dataclasses
import datetime
import json
import secrets
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import vector_index as vi
from .embedding import EmbedderSpec, embed_text
from .errors import AssetDrift, HydroQueryError, IndexMissing
from .llm_client import Completion, ModelRole, ProviderSpec, make_provider, prompt_hash
from .prompting import (
    PromptBundle,
    PromptLevel,
    TemplateSet,
    build_eval_prompt,
    build_generation_prompt,
    build_repair_prompt,
    extract_code_block,
)
from .sandbox import ExecutionEnvelope, GeneratedProgram, SandboxSpec, assemble_script, execute

MAX_RETRIES_LIMIT = 10


@dataclass(frozen=True)
class PipelineConfig:
    prompt_level: PromptLevel
    max_retries: int
    top_k: int
    embedder: EmbedderSpec
    generator: ProviderSpec
    evaluator: ProviderSpec
    sandbox: SandboxSpec

    def __post_init__(self) -> None:
        if not (0 <= self.max_retries <= MAX_RETRIES_LIMIT):
            raise ValueError("max_retries must be in [0, 10]")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")


@dataclass
class Attempt:
    function_block: str
    eval_line: str
    attempt_index: int
    prompt_hashes: dict[str, str]  # stage -> hash
    envelope: ExecutionEnvelope
    timings_ms: dict[str, int] = field(default_factory=dict)


@dataclass
class RunRecord:
    run_id: str
    query: str
    network_id: str
    prompt_level: str
    max_retries: int
    top_k: int
    embedder_id: str
    template_version: str
    retrievals: list[vi.Retrieval] = field(default_factory=list)
    attempts: list[Attempt] = field(default_factory=list)
    transcript: list[dict] = field(default_factory=list)  # {prompt_hash, role, response_text}
    prompts: dict[str, dict] = field(default_factory=dict)  # hash -> {system, user, kind}
    final_status: str = "failed"  # "answered" | "failed"
    answer: object = None
    failure_cause: str | None = None
    started_at: str = ""
    finished_at: str = ""

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "query": self.query,
            "network_id": self.network_id,
            "config": {
                "prompt_level": self.prompt_level,
                "max_retries": self.max_retries,
                "top_k": self.top_k,
                "embedder_id": self.embedder_id,
                "template_version": self.template_version,
            },
            "retrievals": [dataclasses.asdict(r) for r in self.retrievals],
            "attempts": [
                {
                    "function_block": a.function_block,
                    "eval_line": a.eval_line,
                    "attempt_index": a.attempt_index,
                    "prompt_hashes": a.prompt_hashes,
                    "envelope": a.envelope.to_dict(),
                    "timings_ms": a.timings_ms,
                }
                for a in self.attempts
            ],
            "transcript": self.transcript,
            "prompts": self.prompts,
            "final_status": self.final_status,
            "answer": self.answer,
            "failure_cause": self.failure_cause,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "RunRecord":
        cfg = obj["config"]
        rec = cls(
            run_id=obj["run_id"],
            query=obj["query"],
            network_id=obj["network_id"],
            prompt_level=cfg["prompt_level"],
            max_retries=cfg["max_retries"],
            top_k=cfg["top_k"],
            embedder_id=cfg["embedder_id"],
            template_version=cfg["template_version"],
            retrievals=[vi.Retrieval(**r) for r in obj["retrievals"]],
            attempts=[
                Attempt(
                    function_block=a["function_block"],
                    eval_line=a["eval_line"],
                    attempt_index=a["attempt_index"],
                    prompt_hashes=a["prompt_hashes"],
                    envelope=ExecutionEnvelope.from_dict(a["envelope"]),
                    timings_ms=a.get("timings_ms", {}),
                )
                for a in obj["attempts"]
            ],
            transcript=obj.get("transcript", []),
            prompts=obj.get("prompts", {}),
            final_status=obj["final_status"],
            answer=obj.get("answer"),
            failure_cause=obj.get("failure_cause"),
            started_at=obj.get("started_at", ""),
            finished_at=obj.get("finished_at", ""),
        )
        return rec

    def replay_essence(self) -> str:
        """Canonical bytes compared by replay: everything except ids/timings."""
        doc = self.to_dict()
        doc.pop("run_id")
        doc.pop("started_at")
        doc.pop("finished_at")
        for attempt in doc["attempts"]:
            attempt.pop("timings_ms")
            attempt["envelope"].pop("wall_time_ms", None)
        return json.dumps(doc, sort_keys=True, ensure_ascii=False)


def new_run_id() -> str:
    stamp = datetime.datetime.now(datetime.timezone.utc).strftime("%Y%m%dT%H%M%S")
    return f"{stamp}-{secrets.token_hex(4)}"


def _now_iso() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


class _Recorder:
    """Wraps providers so every completion lands in the run's transcript."""

    def __init__(self, record: RunRecord, provider, role: ModelRole):
        self.record = record
        self.provider = provider
        self.role = role

    def complete(self, bundle: PromptBundle) -> Completion:
        completion = self.provider.complete(bundle, self.role)
        self.record.transcript.append(
            {
                "prompt_hash": completion.prompt_hash,
                "role": self.role.value,
                "response_text": completion.text,
            }
        )
        self.record.prompts[completion.prompt_hash] = {
            "system": bundle.system_text,
            "user": bundle.user_text,
            "kind": bundle.kind.value,
        }
        return completion


def run_query(
    query: str,
    network_id: str,
    config: PipelineConfig,
    index: vi.VectorIndex,
    templates: TemplateSet,
    run_id: str | None = None,
) -> RunRecord:
    """Execute the full pipeline for one query, including the repair loop."""
    if index is None:
        raise IndexMissing("no vector index available")
    if index.embedder_id != config.embedder.embedder_id:
        raise IndexMissing(
            f"index built with {index.embedder_id}, config uses {config.embedder.embedder_id}"
        )
    record = RunRecord(
        run_id=run_id or new_run_id(),
        query=query,
        network_id=network_id,
        prompt_level=config.prompt_level.value,
        max_retries=config.max_retries,
        top_k=config.top_k,
        embedder_id=config.embedder.embedder_id,
        template_version=templates.version,
        started_at=_now_iso(),
    )
    generator = _Recorder(record, make_provider(config.generator), ModelRole.GENERATOR)
    evaluator = _Recorder(record, make_provider(config.evaluator), ModelRole.EVALUATOR)

    try:
        _drive(record, query, config, index, templates, generator, evaluator)
    except HydroQueryError as exc:
        record.final_status = "failed"
        record.failure_cause = f"{type(exc).__name__}: {exc}"
    record.finished_at = _now_iso()
    return record


def _drive(record, query, config, index, templates, generator, evaluator) -> None:
    t0 = time.monotonic()
    query_vec = embed_text(query, config.embedder)
    record.retrievals = vi.top_k(index, query_vec, config.top_k)
    retrieve_ms = int((time.monotonic() - t0) * 1000)

    docs = [(index.entry(r.doc_id).doc, r.score) for r in record.retrievals]

    gen_bundle = build_generation_prompt(query, docs, config.prompt_level, templates)
    prior: Attempt | None = None
    for attempt_index in range(config.max_retries + 1):
        timings: dict[str, int] = {}
        if attempt_index == 0:
            timings["retrieve"] = retrieve_ms
            bundle = gen_bundle
        else:
            bundle = build_repair_prompt(
                query,
                prior.function_block,
                prior.eval_line,
                prior.envelope.traceback or "timeout: execution exceeded the deadline",
                config.prompt_level,
                templates,
            )
        t1 = time.monotonic()
        gen_completion = generator.complete(bundle)
        function_block = extract_code_block(gen_completion.text)
        timings["generate"] = int((time.monotonic() - t1) * 1000)

        t2 = time.monotonic()
        eval_bundle = build_eval_prompt(query, function_block, templates)
        eval_completion = evaluator.complete(eval_bundle)
        eval_line = extract_code_block(eval_completion.text).strip().splitlines()[0]
        timings["evaluate"] = int((time.monotonic() - t2) * 1000)

        program = GeneratedProgram(
            function_block=function_block,
            eval_line=eval_line,
            attempt_index=attempt_index,
        )
        t3 = time.monotonic()
        script = assemble_script(program, config.sandbox)
        envelope = execute(script, config.sandbox)
        timings["execute"] = int((time.monotonic() - t3) * 1000)

        attempt = Attempt(
            function_block=function_block,
            eval_line=eval_line,
            attempt_index=attempt_index,
            prompt_hashes={
                "generate" if attempt_index == 0 else "repair": gen_completion.prompt_hash,
                "evaluate": eval_completion.prompt_hash,
            },
            envelope=envelope,
            timings_ms=timings,
        )
        record.attempts.append(attempt)

        if envelope.status == "ok":
            record.final_status = "answered"
            record.answer = envelope.result
            return
        prior = attempt

    record.final_status = "failed"
    record.failure_cause = "retry budget exhausted"


def replay_run(
    record: RunRecord,
    config: PipelineConfig,
    index: vi.VectorIndex,
    templates: TemplateSet,
    transcript_dir: str | Path,
) -> RunRecord:
    """Re-run a record against its own transcript; detects asset drift."""
    if record.template_version != templates.version:
        raise AssetDrift(
            "template_version",
            f"record has {record.template_version}, current is {templates.version}",
        )
    if record.embedder_id != config.embedder.embedder_id:
        raise AssetDrift(
            "embedder_id",
            f"record has {record.embedder_id}, current is {config.embedder.embedder_id}",
        )
    transcript_path = Path(transcript_dir) / f"replay-{record.run_id}.jsonl"
    transcript_path.write_text(
        "\n".join(json.dumps(e, ensure_ascii=False) for e in record.transcript) + "\n",
        encoding="utf-8",
    )
    scripted = ProviderSpec(kind="scripted", transcript_path=str(transcript_path))
    replay_config = dataclasses.replace(
        config,
        prompt_level=PromptLevel(record.prompt_level),
        max_retries=record.max_retries,
        top_k=record.top_k,
        generator=scripted,
        evaluator=scripted,
    )
    return run_query(
        record.query, record.network_id, replay_config, index, templates
    )


def save_record(record: RunRecord, runs_dir: str | Path) -> Path:
    runs = Path(runs_dir)
    runs.mkdir(parents=True, exist_ok=True)
    path = runs / f"{record.run_id}.json"
    path.write_text(
        json.dumps(record.to_dict(), indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    return path


def load_record(path: str | Path) -> RunRecord:
    return RunRecord.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

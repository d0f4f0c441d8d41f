"""HTTP front door: query submission, run inspection, network and index
management. Submission is fire-and-poll: POST returns a run id immediately
and the pipeline proceeds on a worker thread; finished runs are persisted
under data_dir/runs so a restart loses nothing.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import pipeline as pl
from . import vector_index as vi
from .config import AppConfig
from .doc_ingest import load_corpus_file
from .errors import NetworkUnknown
from .llm_client import ProviderSpec
from .prompting import PromptLevel

DEFAULT_RUN_CAP = 4


class Overrides(BaseModel):
    prompt_level: str | None = None
    max_retries: int | None = Field(default=None, ge=0, le=10)
    top_k: int | None = Field(default=None, ge=1)


class QuerySubmission(BaseModel):
    network_id: str
    query: str
    overrides: Overrides | None = None


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


class ServiceState:
    def __init__(self, config: AppConfig, run_cap: int = DEFAULT_RUN_CAP):
        self.config = config
        self.templates = config.templates()
        self.index: vi.VectorIndex | None = None
        if config.index_path and Path(config.index_path).exists():
            self.index = vi.load_index(config.index_path)
        self.runs_dir = Path(config.data_dir) / "runs"
        self.runs_dir.mkdir(parents=True, exist_ok=True)
        self.active: dict[str, str] = {}  # run_id -> current stage
        self.lock = threading.Lock()
        self.run_cap = run_cap
        self.rebuilding = False

    def pipeline_config(self, network_file: str, overrides: Overrides | None) -> pl.PipelineConfig:
        cfg = self.config
        level = PromptLevel(cfg.prompt_level)
        max_retries = cfg.max_retries
        top_k = cfg.top_k
        if overrides:
            if overrides.prompt_level is not None:
                level = PromptLevel(overrides.prompt_level)
            if overrides.max_retries is not None:
                max_retries = overrides.max_retries
            if overrides.top_k is not None:
                top_k = overrides.top_k
        generator = cfg.generator or ProviderSpec(
            kind="scripted", transcript_path=str(Path(cfg.data_dir) / "transcript.jsonl")
        )
        evaluator = cfg.evaluator or generator
        return pl.PipelineConfig(
            prompt_level=level,
            max_retries=max_retries,
            top_k=top_k,
            embedder=cfg.embedder,
            generator=generator,
            evaluator=evaluator,
            sandbox=cfg.sandbox_spec(network_file),
        )

    def record_path(self, run_id: str) -> Path:
        return self.runs_dir / f"{run_id}.json"


def run_view(record: pl.RunRecord) -> dict:
    doc = record.to_dict()
    doc.pop("transcript")
    doc.pop("prompts")
    return doc


def create_app(config: AppConfig, run_cap: int = DEFAULT_RUN_CAP) -> FastAPI:
    app = FastAPI(title="hydroquery")
    state = ServiceState(config, run_cap=run_cap)
    app.state.service = state

    def _execute_run(run_id: str, submission: QuerySubmission) -> None:
        try:
            with state.lock:
                state.active[run_id] = "retrieving"
            entry = state.config.network(submission.network_id)
            cfg = state.pipeline_config(entry.file_path, submission.overrides)
            with state.lock:
                state.active[run_id] = "generating"
            record = pl.run_query(
                submission.query,
                submission.network_id,
                cfg,
                state.index,
                state.templates,
                run_id=run_id,
            )
            pl.save_record(record, state.runs_dir)
        except Exception as exc:  # never leave a run unresolved
            record = pl.RunRecord(
                run_id=run_id,
                query=submission.query,
                network_id=submission.network_id,
                prompt_level=config.prompt_level,
                max_retries=config.max_retries,
                top_k=config.top_k,
                embedder_id=config.embedder.embedder_id,
                template_version=state.templates.version,
                final_status="failed",
                failure_cause=f"{type(exc).__name__}: {exc}",
            )
            pl.save_record(record, state.runs_dir)
        finally:
            with state.lock:
                state.active.pop(run_id, None)

    @app.post("/api/query", status_code=202)
    def submit_query(submission: QuerySubmission):
        try:
            state.config.network(submission.network_id)
        except NetworkUnknown:
            return _error(404, "NETWORK_UNKNOWN", f"unknown network {submission.network_id!r}")
        if state.index is None:
            return _error(409, "INDEX_MISSING", "no vector index built")
        if submission.overrides and submission.overrides.prompt_level not in (
            None,
            "basic",
            "complex",
        ):
            return _error(400, "BAD_OVERRIDE", "prompt_level must be basic or complex")
        with state.lock:
            if len(state.active) >= state.run_cap:
                return _error(429, "RUN_CAP", "too many runs in flight")
            run_id = pl.new_run_id()
            state.active[run_id] = "queued"
        thread = threading.Thread(target=_execute_run, args=(run_id, submission), daemon=True)
        thread.start()
        return {"run_id": run_id}

    @app.get("/api/runs/{run_id}")
    def get_run(run_id: str):
        path = state.record_path(run_id)
        if path.exists():
            return run_view(pl.load_record(path))
        with state.lock:
            stage = state.active.get(run_id)
        if stage is None:
            return _error(404, "RUN_UNKNOWN", f"unknown run {run_id!r}")
        return {"run_id": run_id, "final_status": "in_progress", "stage": stage}

    @app.get("/api/runs/{run_id}/prompts")
    def get_run_prompts(run_id: str):
        path = state.record_path(run_id)
        if not path.exists():
            return _error(404, "RUN_UNKNOWN", f"unknown run {run_id!r}")
        return pl.load_record(path).prompts

    @app.get("/api/networks")
    def list_networks():
        return [entry.to_dict() for entry in state.config.networks]

    @app.post("/api/index/rebuild")
    def rebuild_index():
        with state.lock:
            if state.rebuilding:
                return _error(409, "REBUILD_IN_PROGRESS", "a rebuild is already running")
            state.rebuilding = True
        try:
            corpus = load_corpus_file(Path(config.data_dir) / "corpus.json")
            index, _diag = vi.build_index(corpus, config.embedder)
            if config.index_path:
                vi.save_index(index, config.index_path)
            state.index = index  # atomic swap: readers see old or new, never partial
            return {
                "embedder_id": index.embedder_id,
                "dimension": index.dimension,
                "entry_count": len(index.entries),
                "built_at": index.built_at,
            }
        finally:
            with state.lock:
                state.rebuilding = False

    @app.get("/api/bench/report")
    def bench_report():
        path = Path(config.data_dir) / "bench_report.json"
        if not path.exists():
            return _error(404, "NO_REPORT", "no benchmark report available")
        import json

        return json.loads(path.read_text(encoding="utf-8"))

    return app

"""Command-line interface mirroring the HTTP API 1:1."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import benchmark as bm
from . import pipeline as pl
from . import vector_index as vi
from .config import load_config
from .doc_ingest import load_corpus_file, parse_doc_dump, save_corpus_file
from .embedding import EmbedderSpec, embed_text
from .errors import HydroQueryError
from .prompting import PromptLevel

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


def _load_app_config(path: str | None):
    try:
        return load_config(path)
    except (OSError, ValueError, KeyError) as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None, help="YAML config file")
@click.pass_context
def main(ctx, config_path):
    """Natural-language querying of water network simulations."""
    ctx.obj = {"config_path": config_path}


@main.command()
@click.option("--from-dump", type=click.Path(exists=True), default=None)
@click.option("--from-json", type=click.Path(exists=True), default=None)
@click.option("--out", required=True, type=click.Path())
def ingest(from_dump, from_json, out):
    """Parse documentation into a corpus file."""
    if bool(from_dump) == bool(from_json):
        click.echo("exactly one of --from-dump / --from-json is required", err=True)
        sys.exit(EXIT_USAGE)
    try:
        if from_dump:
            corpus, diagnostics = parse_doc_dump(
                Path(from_dump).read_text(encoding="utf-8"), source_label=from_dump
            )
            for diag in diagnostics:
                click.echo(f"entry {diag.entry_index}: {diag.reason}", err=True)
        else:
            corpus = load_corpus_file(from_json)
        save_corpus_file(corpus, out)
    except HydroQueryError as exc:
        click.echo(f"ingest failed: {exc}", err=True)
        sys.exit(EXIT_RUNTIME)
    click.echo(f"wrote {len(corpus.docs)} docs to {out}")


@main.group()
def index():
    """Vector index operations."""


@index.command("build")
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
@click.option("--dim", default=512, type=int)
def index_build(corpus_path, out, dim):
    try:
        corpus = load_corpus_file(corpus_path)
        idx, diagnostics = vi.build_index(corpus, EmbedderSpec(dimension=dim))
        for diag in diagnostics:
            click.echo(f"doc {diag.entry_index}: {diag.reason}", err=True)
        vi.save_index(idx, out)
    except HydroQueryError as exc:
        click.echo(f"index build failed: {exc}", err=True)
        sys.exit(EXIT_RUNTIME)
    click.echo(f"indexed {len(idx.entries)} docs -> {out}")


@index.command("query")
@click.option("--index", "index_path", required=True, type=click.Path(exists=True))
@click.option("--text", required=True)
@click.option("-k", default=8, type=int)
def index_query(index_path, text, k):
    try:
        idx = vi.load_index(index_path)
        spec = EmbedderSpec(dimension=idx.dimension)
        results = vi.top_k(idx, embed_text(text, spec), k)
    except HydroQueryError as exc:
        click.echo(f"query failed: {exc}", err=True)
        sys.exit(EXIT_RUNTIME)
    for r in results:
        click.echo(f"{r.rank:2d}. {r.doc_id}  score={r.score:.4f}")


@main.command()
@click.argument("query")
@click.option("--network", "network_id", required=True)
@click.option("--prompt-level", type=click.Choice(["basic", "complex"]), default=None)
@click.option("--max-retries", type=int, default=None)
@click.option("--top-k", type=int, default=None)
@click.pass_context
def ask(ctx, query, network_id, prompt_level, max_retries, top_k):
    """Run one query through the pipeline and print the answer."""
    cfg = _load_app_config(ctx.obj["config_path"])
    try:
        entry = cfg.network(network_id)
        if not cfg.index_path or not Path(cfg.index_path).exists():
            click.echo("no index built (set index_path in config)", err=True)
            sys.exit(EXIT_CONFIG)
        idx = vi.load_index(cfg.index_path)
        if cfg.generator is None:
            click.echo("no generator provider configured", err=True)
            sys.exit(EXIT_CONFIG)
        pc = pl.PipelineConfig(
            prompt_level=PromptLevel(prompt_level or cfg.prompt_level),
            max_retries=cfg.max_retries if max_retries is None else max_retries,
            top_k=cfg.top_k if top_k is None else top_k,
            embedder=cfg.embedder,
            generator=cfg.generator,
            evaluator=cfg.evaluator or cfg.generator,
            sandbox=cfg.sandbox_spec(entry.file_path),
        )
        record = pl.run_query(query, network_id, pc, idx, cfg.templates())
        pl.save_record(record, Path(cfg.data_dir) / "runs")
    except HydroQueryError as exc:
        click.echo(f"run failed: {exc}", err=True)
        sys.exit(EXIT_RUNTIME)
    if record.final_status == "answered":
        click.echo(json.dumps(record.answer))
    else:
        click.echo(f"failed after {len(record.attempts)} attempt(s): {record.failure_cause}", err=True)
        sys.exit(EXIT_RUNTIME)


@main.group()
def runs():
    """Inspect persisted runs."""


@runs.command("show")
@click.argument("run_id")
@click.pass_context
def runs_show(ctx, run_id):
    cfg = _load_app_config(ctx.obj["config_path"])
    path = Path(cfg.data_dir) / "runs" / f"{run_id}.json"
    if not path.exists():
        click.echo(f"unknown run {run_id}", err=True)
        sys.exit(EXIT_RUNTIME)
    click.echo(path.read_text(encoding="utf-8"))


@main.command()
@click.pass_context
def networks(ctx):
    """List registered networks."""
    cfg = _load_app_config(ctx.obj["config_path"])
    for entry in cfg.networks:
        quality = " quality" if entry.quality_configured else ""
        click.echo(f"{entry.network_id}\t{entry.display_name}\t{entry.file_path}{quality}")


@main.group()
def bench():
    """Benchmark suite operations."""


@bench.command("run")
@click.option("--suite", "suite_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--grid/--no-grid", default=True)
@click.pass_context
def bench_run(ctx, suite_path, out_dir, grid):
    cfg = _load_app_config(ctx.obj["config_path"])
    if cfg.generator is None or not cfg.index_path:
        click.echo("benchmark needs a configured generator provider and index", err=True)
        sys.exit(EXIT_CONFIG)
    try:
        cases = bm.load_suite(suite_path)
        idx = vi.load_index(cfg.index_path)
        base = pl.PipelineConfig(
            prompt_level=PromptLevel(cfg.prompt_level),
            max_retries=cfg.max_retries,
            top_k=cfg.top_k,
            embedder=cfg.embedder,
            generator=cfg.generator,
            evaluator=cfg.evaluator or cfg.generator,
            sandbox=cfg.sandbox_spec(cfg.networks[0].file_path),
        )
        grid_configs = bm.DEFAULT_GRID if grid else [
            bm.GridConfig(PromptLevel(cfg.prompt_level), cfg.max_retries)
        ]
        report = bm.run_suite(
            cases, grid_configs, base, idx, cfg.templates(), cfg.network_files()
        )
    except HydroQueryError as exc:
        click.echo(f"benchmark failed: {exc}", err=True)
        sys.exit(EXIT_RUNTIME)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(
        json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8"
    )
    (out / "report.md").write_text(report.to_markdown() + "\n", encoding="utf-8")
    click.echo(report.to_markdown())


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8008, type=int)
@click.pass_context
def serve(ctx, host, port):
    """Start the HTTP service."""
    import uvicorn

    from .service import create_app

    cfg = _load_app_config(ctx.obj["config_path"])
    uvicorn.run(create_app(cfg), host=host, port=port)


if __name__ == "__main__":
    main()

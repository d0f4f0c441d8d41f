"""Benchmark suite: categorized queries over the bundled networks, answer
checkers, and the accuracy grid (prompt level x retry budget) per category.
"""

from __future__ import annotations

import dataclasses
import enum
import json
from dataclasses import dataclass, field
from pathlib import Path

from . import pipeline as pl
from . import vector_index as vi
from .errors import OracleFailure, SuiteSchemaError
from .prompting import PromptLevel, TemplateSet
from .sandbox import GeneratedProgram, SandboxSpec, assemble_script, execute

DEFAULT_REL_TOLERANCE = 1e-6

NETWORK_IDS = ("Net1", "Net3", "LTown")


class QueryCategory(enum.Enum):
    STATIC = "static"
    HYDRAULICS = "hydraulics"
    QUALITY = "quality"
    HYDRAULICS_SCENARIO = "hydraulics_scenario"


CATEGORY_ORDER = [
    QueryCategory.STATIC,
    QueryCategory.HYDRAULICS,
    QueryCategory.QUALITY,
    QueryCategory.HYDRAULICS_SCENARIO,
]


class CheckerKind(enum.Enum):
    EXACT_NUMERIC = "exact_numeric"
    EXACT_VALUE = "exact_value"
    AGGREGATE_SUM = "aggregate_sum"
    CONTAINS_VALUE = "contains_value"
    MANUAL_REVIEW = "manual_review"


@dataclass(frozen=True)
class BenchmarkCase:
    case_id: str
    category: QueryCategory
    network_id: str
    query: str
    expected: object
    checker: CheckerKind
    tolerance: float = DEFAULT_REL_TOLERANCE
    oracle_ref: str | None = None

    def __post_init__(self) -> None:
        if self.network_id not in NETWORK_IDS:
            raise SuiteSchemaError(f"{self.case_id}: unknown network {self.network_id!r}")
        if self.tolerance < 0:
            raise SuiteSchemaError(f"{self.case_id}: negative tolerance")
        if self.category is QueryCategory.QUALITY and self.network_id != "LTown":
            raise SuiteSchemaError(
                f"{self.case_id}: quality cases require a network with quality pre-configured"
            )


@dataclass(frozen=True)
class Verdict:
    outcome: str  # "correct" | "incorrect" | "needs_review"
    explanation: str


def _flatten_numbers(value: object) -> list[float]:
    if isinstance(value, bool):
        raise TypeError("boolean is not a numeric answer")
    if isinstance(value, (int, float)):
        return [float(value)]
    if isinstance(value, list):
        out: list[float] = []
        for item in value:
            out.extend(_flatten_numbers(item))
        return out
    if isinstance(value, dict):
        out = []
        for key in sorted(value):
            out.extend(_flatten_numbers(value[key]))
        return out
    raise TypeError(f"cannot interpret {type(value).__name__} as numeric")


def _flatten_values(value: object) -> list[object]:
    if isinstance(value, list):
        out: list[object] = []
        for item in value:
            out.extend(_flatten_values(item))
        return out
    if isinstance(value, dict):
        out = []
        for key in sorted(value):
            out.extend(_flatten_values(value[key]))
        return out
    return [value]


def _numeric_close(answer: float, expected: float, tol: float) -> bool:
    return abs(answer - expected) <= tol * max(1.0, abs(expected))


def check_answer(answer: object, case: BenchmarkCase) -> Verdict:
    """Mechanized correctness judgment; ManualReview is the escape hatch."""
    kind = case.checker
    if kind is CheckerKind.MANUAL_REVIEW:
        return Verdict(
            "needs_review", f"answer={answer!r} expected={case.expected!r}"
        )
    if kind is CheckerKind.EXACT_VALUE:
        if answer == case.expected:
            return Verdict("correct", "exact match")
        return Verdict("incorrect", f"{answer!r} != {case.expected!r}")
    if kind is CheckerKind.CONTAINS_VALUE:
        values = _flatten_values(answer)
        if case.expected in values:
            return Verdict("correct", f"{case.expected!r} found among {len(values)} values")
        return Verdict("incorrect", f"{case.expected!r} not among flattened values")
    # numeric checkers
    try:
        expected = float(case.expected)
    except (TypeError, ValueError):
        raise SuiteSchemaError(f"{case.case_id}: non-numeric expected for {kind.value}")
    try:
        if kind is CheckerKind.EXACT_NUMERIC:
            numbers = _flatten_numbers(answer)
            if len(numbers) != 1:
                return Verdict("incorrect", f"expected a scalar, got {len(numbers)} numbers")
            value = numbers[0]
        else:  # AGGREGATE_SUM
            value = sum(_flatten_numbers(answer))
    except TypeError as exc:
        return Verdict("incorrect", f"non-numeric answer: {exc}")
    if _numeric_close(value, expected, case.tolerance):
        return Verdict("correct", f"{value} within {case.tolerance} of {expected}")
    return Verdict("incorrect", f"{value} not within {case.tolerance} of {expected}")


@dataclass(frozen=True)
class GridConfig:
    prompt_level: PromptLevel
    max_retries: int

    @property
    def label(self) -> str:
        return f"{self.prompt_level.value}-r{self.max_retries}"


DEFAULT_GRID = [
    GridConfig(PromptLevel.BASIC, 0),
    GridConfig(PromptLevel.BASIC, 5),
    GridConfig(PromptLevel.COMPLEX, 0),
    GridConfig(PromptLevel.COMPLEX, 5),
]


@dataclass
class CaseResult:
    case_id: str
    category: str
    config_label: str
    final_status: str
    answer: object
    verdict: str
    explanation: str
    attempts: int
    run_id: str


@dataclass
class AccuracyReport:
    cells: dict[str, dict[str, dict]]  # config_label -> category -> {n_cases, n_correct, accuracy}
    case_results: list[CaseResult] = field(default_factory=list)
    partial: bool = False

    def accuracy(self, config_label: str, category: QueryCategory) -> float:
        return self.cells[config_label][category.value]["accuracy"]

    def to_dict(self) -> dict:
        return {
            "partial": self.partial,
            "cells": self.cells,
            "case_results": [dataclasses.asdict(r) for r in self.case_results],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "AccuracyReport":
        return cls(
            cells=obj["cells"],
            case_results=[CaseResult(**r) for r in obj.get("case_results", [])],
            partial=obj.get("partial", False),
        )

    def to_markdown(self) -> str:
        labels = sorted(self.cells)
        lines = ["| Category | " + " | ".join(labels) + " |"]
        lines.append("|" + " --- |" * (len(labels) + 1))
        for category in CATEGORY_ORDER:
            row = [category.value]
            for label in labels:
                cell = self.cells[label].get(category.value)
                row.append("-" if cell is None else f"{cell['accuracy']:.2f}")
            lines.append("| " + " | ".join(row) + " |")
        return "\n".join(lines)


def load_suite(path: str | Path) -> list[BenchmarkCase]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    cases_raw = data["cases"] if isinstance(data, dict) else data
    cases = []
    seen: set[str] = set()
    for i, raw in enumerate(cases_raw):
        try:
            case = BenchmarkCase(
                case_id=raw["case_id"],
                category=QueryCategory(raw["category"]),
                network_id=raw["network_id"],
                query=raw["query"],
                expected=raw["expected"],
                checker=CheckerKind(raw["checker"]),
                tolerance=raw.get("tolerance", DEFAULT_REL_TOLERANCE),
                oracle_ref=raw.get("oracle_ref"),
            )
        except (KeyError, ValueError) as exc:
            raise SuiteSchemaError(f"case {i}: {exc}") from None
        if case.case_id in seen:
            raise SuiteSchemaError(f"duplicate case_id {case.case_id!r}")
        seen.add(case.case_id)
        cases.append(case)
    return cases


def save_suite(cases: list[BenchmarkCase], path: str | Path, note: str = "") -> None:
    doc = {
        "note": note,
        "cases": [
            {
                "case_id": c.case_id,
                "category": c.category.value,
                "network_id": c.network_id,
                "query": c.query,
                "expected": c.expected,
                "checker": c.checker.value,
                "tolerance": c.tolerance,
                "oracle_ref": c.oracle_ref,
            }
            for c in cases
        ],
    }
    Path(path).write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def run_suite(
    cases: list[BenchmarkCase],
    grid: list[GridConfig],
    base_config: pl.PipelineConfig,
    index: vi.VectorIndex,
    templates: TemplateSet,
    network_files: dict[str, str],
    provider_for: "callable | None" = None,
    runs_dir: str | Path | None = None,
) -> AccuracyReport:
    """Run every (config, case) pair through the pipeline and tally accuracy.

    provider_for(grid_config, case) may supply per-cell (generator, evaluator)
    provider specs, the hook the scripted-transcript fixtures use.
    """
    report = AccuracyReport(cells={})
    for gc in grid:
        per_category: dict[str, dict] = {}
        for case in sorted(cases, key=lambda c: c.case_id):
            config = dataclasses.replace(
                base_config,
                prompt_level=gc.prompt_level,
                max_retries=gc.max_retries,
                sandbox=dataclasses.replace(
                    base_config.sandbox, network_file=network_files[case.network_id]
                ),
            )
            if provider_for is not None:
                gen_spec, eval_spec = provider_for(gc, case)
                config = dataclasses.replace(config, generator=gen_spec, evaluator=eval_spec)
            record = pl.run_query(case.query, case.network_id, config, index, templates)
            if runs_dir is not None:
                pl.save_record(record, runs_dir)
            if record.final_status == "answered":
                verdict = check_answer(record.answer, case)
            else:
                verdict = Verdict("incorrect", f"run failed: {record.failure_cause}")
            report.case_results.append(
                CaseResult(
                    case_id=case.case_id,
                    category=case.category.value,
                    config_label=gc.label,
                    final_status=record.final_status,
                    answer=record.answer,
                    verdict=verdict.outcome,
                    explanation=verdict.explanation,
                    attempts=len(record.attempts),
                    run_id=record.run_id,
                )
            )
            cell = per_category.setdefault(
                case.category.value, {"n_cases": 0, "n_correct": 0, "accuracy": 0.0}
            )
            cell["n_cases"] += 1
            if verdict.outcome == "correct":
                cell["n_correct"] += 1
        for cell in per_category.values():
            cell["accuracy"] = cell["n_correct"] / cell["n_cases"]
        report.cells[gc.label] = per_category
    return report


def generate_expected(
    case: BenchmarkCase, sandbox: SandboxSpec, oracle_root: str | Path
) -> object:
    """Run the case's human-written oracle program and return its result."""
    if not case.oracle_ref:
        raise OracleFailure(f"{case.case_id}: no oracle_ref")
    oracle_path = Path(oracle_root) / case.oracle_ref
    program = GeneratedProgram(
        function_block=oracle_path.read_text(encoding="utf-8"),
        eval_line="result = result",
        attempt_index=0,
    )
    envelope = execute(assemble_script(program, sandbox), sandbox)
    if envelope.status != "ok":
        raise OracleFailure(
            f"{case.case_id}: oracle program failed: {envelope.traceback or envelope.status}"
        )
    return envelope.result

#!/usr/bin/env python3
"""Regenerate the frozen fixture set: corpus, index, benchmark suite, oracle
programs, scripted transcripts, expected report, fixture runs, and prompt
goldens. Run from the repo root. Outputs are committed; tests replay them
and never regenerate.
"""

from __future__ import annotations

import json
import shutil
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from hydroquery import benchmark as bm  # noqa: E402
from hydroquery import pipeline as pl  # noqa: E402
from hydroquery import vector_index as vi  # noqa: E402
from hydroquery.doc_ingest import load_corpus_file  # noqa: E402
from hydroquery.embedding import EmbedderSpec, embed_text  # noqa: E402
from hydroquery.llm_client import ModelRole, ProviderSpec, prompt_hash, write_transcript  # noqa: E402
from hydroquery.prompting import (  # noqa: E402
    PromptLevel,
    TemplateSet,
    build_eval_prompt,
    build_generation_prompt,
    build_repair_prompt,
)
from hydroquery.sandbox import (  # noqa: E402
    GeneratedProgram,
    SandboxSpec,
    assemble_script,
    execute,
)

FIX = ROOT / "fixtures"
ORACLES = ROOT / "harness" / "oracles"
NETWORKS = {
    "Net1": str(ROOT / "networks" / "Net1.inp"),
    "Net3": str(ROOT / "networks" / "Net3.inp"),
    "LTown": str(ROOT / "networks" / "L-Town.inp"),
}
DIM = 512


def sandbox_for(network_id: str) -> SandboxSpec:
    return SandboxSpec(
        executor_command=(sys.executable, str(ROOT / "harness" / "runner.py"), "{script}"),
        harness_template_path=str(ROOT / "harness" / "template.txt"),
        network_file=NETWORKS[network_id],
        timeout_s=30.0,
    )


# --- case authoring helpers ---

def count_case(cid, net, query, method, expected_checker="exact_numeric"):
    code = f"def network_count(en):\n    return en.{method}()"
    return {
        "case_id": cid,
        "category": "static",
        "network": net,
        "query": query,
        "checker": expected_checker,
        "good": code,
        "eval": "result = network_count(en)",
    }


def pressure_case(cid, net, query, agg, category="hydraulics", scenario=None):
    if agg == "max":
        body = "    return max(max(row) for row in res.Pressure)"
    elif agg == "min":
        body = "    return min(min(row) for row in res.Pressure)"
    else:
        body = (
            "    vals = [v for row in res.Pressure for v in row]\n"
            "    return sum(vals) / len(vals)"
        )
    if scenario:
        kind, link_id, value = scenario
        if kind == "close":
            setup = f'    en.setLinkStatus(en.getLinkIndex("{link_id}"), 0)\n'
        else:
            setup = f'    en.setLinkDiameter(en.getLinkIndex("{link_id}"), {value})\n'
    else:
        setup = ""
    code = (
        "def pressure_stat(en):\n"
        + setup
        + "    res = en.getComputedHydraulicTimeSeries()\n"
        + body
    )
    return {
        "case_id": cid,
        "category": category,
        "network": net,
        "query": query,
        "checker": "exact_numeric",
        "good": code,
        "eval": "result = pressure_stat(en)",
    }


def flow_case(cid, net, query, link_id, category="hydraulics"):
    code = (
        "def max_flow(en, link_id):\n"
        "    idx = en.getLinkIndex(link_id)\n"
        "    res = en.getComputedHydraulicTimeSeries()\n"
        "    return max(row[idx - 1] for row in res.Flow)"
    )
    return {
        "case_id": cid,
        "category": category,
        "network": net,
        "query": query,
        "checker": "exact_numeric",
        "good": code,
        "eval": f'result = max_flow(en, "{link_id}")',
        # the canonical ID-vs-index bug: the ID string used directly as an index
        "bad": (
            "def max_flow(en, link_id):\n"
            "    res = en.getComputedHydraulicTimeSeries()\n"
            "    return max(row[link_id] for row in res.Flow)"
        ),
        "bad_eval": f'result = max_flow(en, "{link_id}")',
    }


def quality_case(cid, query, body, eval_line):
    code = "def water_age_stat(en):\n    res = en.getComputedQualityTimeSeries()\n" + body
    return {
        "case_id": cid,
        "category": "quality",
        "network": "LTown",
        "query": query,
        "checker": "exact_numeric",
        "good": code,
        "eval": eval_line,
    }


def default_bad(case):
    return case.get("bad") or (
        "def attempt(en):\n    return en.computeAnswerDirectly()"
    ), case.get("bad_eval") or "result = attempt(en)"


CASES = [
    # --- static (10) ---
    count_case("static-net1-pumps", "Net1", "How many pumps are in the network?", "getLinkPumpCount"),
    {
        "case_id": "static-ltown-pumps-valves",
        "category": "static",
        "network": "LTown",
        "query": "How many pumps and valves are in the network?",
        "checker": "aggregate_sum",
        "good": "def pump_valve_count(en):\n    return (en.getLinkPumpCount(), en.getLinkValveCount())",
        "good_complex": (
            "def pump_valve_count(en):\n"
            '    return {"pump": en.getLinkPumpCount(), "valve": en.getLinkValveCount()}'
        ),
        "eval": "result = pump_valve_count(en)",
        "oracle": (
            "result = en.getLinkPumpCount() + en.getLinkValveCount()"
        ),
    },
    count_case("static-net3-nodes", "Net3", "How many nodes are in the network?", "getNodeCount"),
    count_case("static-net1-junctions", "Net1", "How many junctions are in the network?", "getNodeJunctionCount"),
    count_case("static-net3-tanks", "Net3", "How many tanks are in the network?", "getNodeTankCount"),
    count_case("static-ltown-pipes", "LTown", "How many pipes are in the network?", "getLinkPipeCount"),
    count_case("static-net1-links", "Net1", "How many links are in the network?", "getLinkCount"),
    count_case("static-net3-reservoirs", "Net3", "How many reservoirs are in the network?", "getNodeReservoirCount"),
    {
        "case_id": "static-net1-pipe110-diameter",
        "category": "static",
        "network": "Net1",
        "query": "What is the diameter of pipe ID 110?",
        "checker": "exact_numeric",
        "good": (
            "def pipe_diameter(en, pipe_id):\n"
            "    idx = en.getLinkIndex(pipe_id)\n"
            "    return en.getLinkDiameter(idx)"
        ),
        "eval": 'result = pipe_diameter(en, "110")',
        "bad": (
            "def pipe_diameter(en, pipe_id):\n"
            "    return en.getLinkDiameter(pipe_id)"
        ),
        "bad_eval": 'result = pipe_diameter(en, "110")',
    },
    count_case("static-ltown-junctions", "LTown", "How many junction nodes does the network contain?", "getNodeJunctionCount"),
    # --- hydraulics (10) ---
    pressure_case("hyd-net1-max-pressure", "Net1", "What is the maximal pressure in the network?", "max"),
    pressure_case("hyd-net3-max-pressure", "Net3", "What is the highest pressure observed anywhere in the network?", "max"),
    pressure_case("hyd-ltown-max-pressure", "LTown", "What is the largest pressure value reached in the network?", "max"),
    pressure_case("hyd-net1-min-pressure", "Net1", "What is the minimal pressure in the network?", "min"),
    pressure_case("hyd-net3-avg-pressure", "Net3", "What is the mean pressure across all nodes of the network?", "avg"),
    flow_case("hyd-net1-flow-pipe10", "Net1", "What is the maximum flow in pipe ID 10?", "10"),
    flow_case("hyd-net3-flow-p5", "Net3", "What is the maximum flow in pipe ID P5?", "P5"),
    pressure_case("hyd-ltown-min-pressure", "LTown", "What is the lowest pressure value reached in the network?", "min"),
    pressure_case("hyd-net1-avg-pressure", "Net1", "What is the average pressure in the network?", "avg"),
    pressure_case("hyd-net3-min-pressure", "Net3", "What is the smallest pressure observed anywhere in the network?", "min"),
    # --- quality (10, L-Town only) ---
    quality_case(
        "qual-avg-age-last24",
        "What is the average water age in the network based on the last 24 hours of the simulation?",
        "    vals = [v for row in res.NodeQuality[-24:] for v in row]\n    return sum(vals) / len(vals)",
        "result = water_age_stat(en)",
    ),
    quality_case(
        "qual-max-age",
        "What is the maximum water age in the network?",
        "    return max(max(row) for row in res.NodeQuality)",
        "result = water_age_stat(en)",
    ),
    quality_case(
        "qual-min-age",
        "What is the minimum water age in the network?",
        "    return min(min(row) for row in res.NodeQuality)",
        "result = water_age_stat(en)",
    ),
    quality_case(
        "qual-avg-age-final",
        "What is the average water age at the end of the simulation?",
        "    row = res.NodeQuality[-1]\n    return sum(row) / len(row)",
        "result = water_age_stat(en)",
    ),
    quality_case(
        "qual-max-age-final",
        "What is the maximum water age at the end of the simulation?",
        "    return max(res.NodeQuality[-1])",
        "result = water_age_stat(en)",
    ),
    {
        "case_id": "qual-age-node-j10",
        "category": "quality",
        "network": "LTown",
        "query": "What is the water age at node ID J10 at the end of the simulation?",
        "checker": "exact_numeric",
        "good": (
            "def node_age(en, node_id):\n"
            "    idx = en.getNodeIndex(node_id)\n"
            "    res = en.getComputedQualityTimeSeries()\n"
            "    return res.NodeQuality[-1][idx - 1]"
        ),
        "eval": 'result = node_age(en, "J10")',
        "bad": (
            "def node_age(en, node_id):\n"
            "    res = en.getComputedQualityTimeSeries()\n"
            "    return res.NodeQuality[-1][node_id]"
        ),
        "bad_eval": 'result = node_age(en, "J10")',
    },
    {
        "case_id": "qual-avg-age-node-j5",
        "category": "quality",
        "network": "LTown",
        "query": "What is the average water age at node ID J5 over the simulation?",
        "checker": "exact_numeric",
        "good": (
            "def node_avg_age(en, node_id):\n"
            "    idx = en.getNodeIndex(node_id)\n"
            "    res = en.getComputedQualityTimeSeries()\n"
            "    vals = [row[idx - 1] for row in res.NodeQuality]\n"
            "    return sum(vals) / len(vals)"
        ),
        "eval": 'result = node_avg_age(en, "J5")',
    },
    {
        "case_id": "qual-max-age-node-j100",
        "category": "quality",
        "network": "LTown",
        "query": "What is the maximum water age at node ID J100 over the simulation?",
        "checker": "exact_numeric",
        "good": (
            "def node_max_age(en, node_id):\n"
            "    idx = en.getNodeIndex(node_id)\n"
            "    res = en.getComputedQualityTimeSeries()\n"
            "    return max(row[idx - 1] for row in res.NodeQuality)"
        ),
        "eval": 'result = node_max_age(en, "J100")',
        "bad": (
            "def node_max_age(en, node_id):\n"
            "    res = en.getComputedQualityTimeSeries()\n"
            "    return max(row[node_id] for row in res.NodeQuality)"
        ),
        "bad_eval": 'result = node_max_age(en, "J100")',
    },
    quality_case(
        "qual-avg-age-first12",
        "What is the average water age in the network over the first 12 hours of the simulation?",
        "    vals = [v for row in res.NodeQuality[:13] for v in row]\n    return sum(vals) / len(vals)",
        "result = water_age_stat(en)",
    ),
    quality_case(
        "qual-time-steps",
        "How many time steps does the water quality simulation contain?",
        "    return len(res.NodeQuality)",
        "result = water_age_stat(en)",
    ),
    # --- hydraulics scenario (10) ---
    pressure_case(
        "scen-net1-close21-max", "Net1",
        "What will be the max pressure if pipe ID 21 is closed?",
        "max", "hydraulics_scenario", ("close", "21", None),
    ),
    pressure_case(
        "scen-net1-close110-max", "Net1",
        "What will be the max pressure if pipe ID 110 is closed?",
        "max", "hydraulics_scenario", ("close", "110", None),
    ),
    pressure_case(
        "scen-net3-closep10-max", "Net3",
        "What will be the max pressure if pipe ID P10 is closed?",
        "max", "hydraulics_scenario", ("close", "P10", None),
    ),
    pressure_case(
        "scen-net3-closep50-min", "Net3",
        "What will be the minimal pressure if pipe ID P50 is closed?",
        "min", "hydraulics_scenario", ("close", "P50", None),
    ),
    pressure_case(
        "scen-ltown-closep100-max", "LTown",
        "What will be the max pressure if pipe ID P100 is closed?",
        "max", "hydraulics_scenario", ("close", "P100", None),
    ),
    pressure_case(
        "scen-net1-close122-avg", "Net1",
        "What will be the average pressure if pipe ID 122 is closed?",
        "avg", "hydraulics_scenario", ("close", "122", None),
    ),
    pressure_case(
        "scen-net3-closep7-avg", "Net3",
        "What will be the average pressure if pipe ID P7 is closed?",
        "avg", "hydraulics_scenario", ("close", "P7", None),
    ),
    pressure_case(
        "scen-ltown-closep5-min", "LTown",
        "What will be the minimal pressure if pipe ID P5 is closed?",
        "min", "hydraulics_scenario", ("close", "P5", None),
    ),
    pressure_case(
        "scen-net1-diameter12-max", "Net1",
        "What will be the max pressure if the diameter of pipe ID 12 is set to 300 millimeters?",
        "max", "hydraulics_scenario", ("diameter", "12", 300),
    ),
    flow_case(
        "scen-net3-closepu1-flow", "Net3",
        "What will be the maximum flow in pipe ID P1 if pump ID PU1 is closed?",
        "P1", "hydraulics_scenario",
    ),
]

# patch the pump-closure scenario good code to actually close the pump first
for _case in CASES:
    if _case["case_id"] == "scen-net3-closepu1-flow":
        _case["good"] = (
            "def max_flow(en, link_id):\n"
            '    en.setLinkStatus(en.getLinkIndex("PU1"), 0)\n'
            "    idx = en.getLinkIndex(link_id)\n"
            "    res = en.getComputedHydraulicTimeSeries()\n"
            "    return max(row[idx - 1] for row in res.Flow)"
        )

# per-level plans: s1 = first attempt succeeds, s2 = succeeds on first repair,
# f = never succeeds. Chosen to reproduce the qualitative accuracy pattern.
PLANS = {
    "basic": {
        "static-net1-pipe110-diameter": "s2",
        "static-net3-reservoirs": "f",
        "hyd-net1-flow-pipe10": "s2",
        "hyd-net3-flow-p5": "s2",
        "hyd-ltown-max-pressure": "f",
        "hyd-ltown-min-pressure": "f",
        "qual-avg-age-final": "s2",
        "qual-time-steps": "s2",
        "qual-age-node-j10": "f",
        "qual-avg-age-node-j5": "f",
        "qual-max-age-node-j100": "f",
        "qual-avg-age-first12": "f",
        "scen-net1-close21-max": "s2",
        "scen-net1-close110-max": "s2",
        "scen-net3-closep10-max": "s2",
        "scen-net3-closep50-min": "s2",
        "scen-net1-close122-avg": "s2",
        "scen-net3-closep7-avg": "s2",
        "scen-ltown-closep100-max": "f",
        "scen-ltown-closep5-min": "f",
        "scen-net1-diameter12-max": "f",
        "scen-net3-closepu1-flow": "f",
    },
    "complex": {
        "hyd-net1-flow-pipe10": "s2",
        "hyd-ltown-min-pressure": "f",
        "qual-age-node-j10": "s2",
        "qual-max-age-node-j100": "s2",
        "qual-avg-age-node-j5": "f",
        "qual-avg-age-first12": "f",
        "scen-net1-close21-max": "s2",
        "scen-net3-closep10-max": "s2",
        "scen-net1-close122-avg": "s2",
        "scen-net3-closep7-avg": "s2",
        "scen-net1-close110-max": "f",
        "scen-net3-closep50-min": "f",
        "scen-ltown-closep100-max": "f",
        "scen-ltown-closep5-min": "f",
        "scen-net1-diameter12-max": "f",
        "scen-net3-closepu1-flow": "f",
    },
}


def fence(code: str) -> str:
    return "```python\n" + code + "\n```"


def good_code(case: dict, level: str) -> str:
    if level == "complex" and "good_complex" in case:
        return case["good_complex"]
    return case["good"]


def build_corpus_and_index():
    FIX.mkdir(exist_ok=True)
    subprocess.run(
        [sys.executable, str(ROOT / "harness" / "extract_docs.py"), "--stub",
         "--out", str(FIX / "corpus.json")],
        check=True,
    )
    corpus = load_corpus_file(FIX / "corpus.json")
    # plaintext dump mirroring the corpus, for the dump-grammar ingestion path
    dump_lines = []
    for doc in corpus.docs:
        dump_lines.append(doc.signature)
        for line in doc.description.splitlines():
            dump_lines.append("    " + line)
        dump_lines.append("")
    (FIX / "docs_dump.txt").write_text("\n".join(dump_lines), encoding="utf-8")
    index, diagnostics = vi.build_index(corpus, EmbedderSpec(dimension=DIM))
    assert not diagnostics, diagnostics
    index.built_at = "frozen"
    vi.save_index(index, FIX / "index.jsonl")
    return corpus, index


def freeze_oracles_and_expected():
    ORACLES.mkdir(exist_ok=True)
    for case in CASES:
        oracle = case.get("oracle")
        if oracle is None:
            fname = case["eval"].split("=", 1)[1].strip()
            oracle = case["good"] + "\n\n" + "result = " + fname
        (ORACLES / f"{case['case_id']}.py").write_text(oracle + "\n", encoding="utf-8")
    suite_cases = []
    for case in CASES:
        sandbox = sandbox_for(case["network"])
        program = GeneratedProgram(
            function_block=(ORACLES / f"{case['case_id']}.py").read_text(encoding="utf-8"),
            eval_line="result = result",
            attempt_index=0,
        )
        envelope = execute(assemble_script(program, sandbox), sandbox)
        assert envelope.status == "ok", (case["case_id"], envelope.traceback)
        expected = envelope.result
        if case["checker"] == "aggregate_sum" and isinstance(expected, list):
            expected = sum(expected)
        suite_cases.append(
            bm.BenchmarkCase(
                case_id=case["case_id"],
                category=bm.QueryCategory(case["category"]),
                network_id=case["network"],
                query=case["query"],
                expected=expected,
                checker=bm.CheckerKind(case["checker"]),
                oracle_ref=f"{case['case_id']}.py",
            )
        )
    bm.save_suite(
        suite_cases,
        FIX / "suite.json",
        note="Reconstructed benchmark suite: queries and expected values are "
        "authored for this artifact and frozen from oracle-program runs.",
    )
    return suite_cases


def build_transcripts(index, templates):
    (FIX / "transcripts").mkdir(exist_ok=True)
    for level_name in ("basic", "complex"):
        level = PromptLevel(level_name)
        entries = []
        seen = set()

        def record(bundle, role, text, note):
            h = prompt_hash(bundle, role)
            if h in seen:
                return
            seen.add(h)
            entries.append(
                {"prompt_hash": h, "role": role.value, "response_text": text, "note": note}
            )

        for case in CASES:
            plan = PLANS[level_name].get(case["case_id"], "s1")
            query = case["query"]
            sandbox = sandbox_for(case["network"])
            qvec = embed_text(query, EmbedderSpec(dimension=DIM))
            retrievals = vi.top_k(index, qvec, 8)
            docs = [(index.entry(r.doc_id).doc, r.score) for r in retrievals]
            gen_bundle = build_generation_prompt(query, docs, level, templates)
            good = good_code(case, level_name)
            if plan == "s1":
                record(gen_bundle, ModelRole.GENERATOR, fence(good), f"{case['case_id']} gen good")
                eval_bundle = build_eval_prompt(query, good, templates)
                record(eval_bundle, ModelRole.EVALUATOR, case["eval"], f"{case['case_id']} eval good")
                continue
            bad, bad_eval = default_bad(case)
            record(gen_bundle, ModelRole.GENERATOR, fence(bad), f"{case['case_id']} gen bad")
            eval_bundle = build_eval_prompt(query, bad, templates)
            record(eval_bundle, ModelRole.EVALUATOR, bad_eval, f"{case['case_id']} eval bad")
            program = GeneratedProgram(bad, bad_eval, 0)
            envelope = execute(assemble_script(program, sandbox), sandbox)
            assert envelope.status == "error", (case["case_id"], envelope)
            repair_bundle = build_repair_prompt(
                query, bad, bad_eval, envelope.traceback, level, templates
            )
            if plan == "s2":
                record(repair_bundle, ModelRole.GENERATOR, fence(good), f"{case['case_id']} repair good")
                eval_bundle = build_eval_prompt(query, good, templates)
                record(eval_bundle, ModelRole.EVALUATOR, case["eval"], f"{case['case_id']} eval good")
            else:  # f: repair keeps returning the same failing code
                record(repair_bundle, ModelRole.GENERATOR, fence(bad), f"{case['case_id']} repair bad")
        write_transcript(FIX / "transcripts" / f"{level_name}.jsonl", entries)


def scripted_specs(level_name):
    spec = ProviderSpec(
        kind="scripted", transcript_path=str(FIX / "transcripts" / f"{level_name}.jsonl")
    )
    return spec, spec


def build_report(suite_cases, index, templates):
    base = pl.PipelineConfig(
        prompt_level=PromptLevel.BASIC,
        max_retries=0,
        top_k=8,
        embedder=EmbedderSpec(dimension=DIM),
        generator=scripted_specs("basic")[0],
        evaluator=scripted_specs("basic")[1],
        sandbox=sandbox_for("Net1"),
    )
    report = bm.run_suite(
        suite_cases,
        bm.DEFAULT_GRID,
        base,
        index,
        templates,
        NETWORKS,
        provider_for=lambda gc, case: scripted_specs(gc.prompt_level.value),
    )
    (FIX / "report.json").write_text(
        json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    (FIX / "report.md").write_text(report.to_markdown() + "\n", encoding="utf-8")
    for label, cells in sorted(report.cells.items()):
        print(label, {k: round(v["accuracy"], 2) for k, v in cells.items()})
    return report


def build_fixture_runs(index, templates):
    runs_dir = FIX / "runs"
    if runs_dir.exists():
        shutil.rmtree(runs_dir)
    runs_dir.mkdir()
    picks = [
        ("fixrun-static-ok", "static-net1-pumps", "complex", 5),
        ("fixrun-repair-ok", "static-net1-pipe110-diameter", "basic", 5),
        ("fixrun-allfail", "static-net3-reservoirs", "basic", 5),
        ("fixrun-noretry-fail", "static-net1-pipe110-diameter", "basic", 0),
        ("fixrun-ltown-tuple", "static-ltown-pumps-valves", "basic", 0),
    ]
    by_id = {c["case_id"]: c for c in CASES}
    for run_id, case_id, level_name, retries in picks:
        case = by_id[case_id]
        gen_spec, eval_spec = scripted_specs(level_name)
        config = pl.PipelineConfig(
            prompt_level=PromptLevel(level_name),
            max_retries=retries,
            top_k=8,
            embedder=EmbedderSpec(dimension=DIM),
            generator=gen_spec,
            evaluator=eval_spec,
            sandbox=sandbox_for(case["network"]),
        )
        record = pl.run_query(
            case["query"], case["network"], config, index, templates, run_id=run_id
        )
        pl.save_record(record, runs_dir)
        print(run_id, record.final_status, len(record.attempts), record.answer)


def build_goldens(index, templates):
    goldens = FIX / "goldens"
    goldens.mkdir(exist_ok=True)
    (goldens / "basic_system.txt").write_text(
        templates.texts["generate_system_basic.txt"], encoding="utf-8"
    )
    (goldens / "complex_system.txt").write_text(
        templates.texts["generate_system_complex.txt"], encoding="utf-8"
    )
    by_id = {c["case_id"]: c for c in CASES}
    picks = [
        "static-net1-pumps",
        "static-ltown-pumps-valves",
        "hyd-net1-max-pressure",
        "qual-avg-age-last24",
        "scen-net1-close21-max",
    ]
    canned_traceback = (
        "Traceback (most recent call last):\n"
        '  File "<eval_line>", line 1, in <module>\n'
        "NameError: name 'compute_answer' is not defined\n"
    )
    for case_id in picks:
        case = by_id[case_id]
        qvec = embed_text(case["query"], EmbedderSpec(dimension=DIM))
        docs = [
            (index.entry(r.doc_id).doc, r.score) for r in vi.top_k(index, qvec, 8)
        ]
        for level in (PromptLevel.BASIC, PromptLevel.COMPLEX):
            bundle = build_generation_prompt(case["query"], docs, level, templates)
            (goldens / f"{case_id}-generate-{level.value}.txt").write_text(
                bundle.system_text + "\n===USER===\n" + bundle.user_text, encoding="utf-8"
            )
        eval_bundle = build_eval_prompt(case["query"], case["good"], templates)
        (goldens / f"{case_id}-evaluate.txt").write_text(
            eval_bundle.system_text + "\n===USER===\n" + eval_bundle.user_text,
            encoding="utf-8",
        )
        repair_bundle = build_repair_prompt(
            case["query"], case["good"], case["eval"], canned_traceback,
            PromptLevel.COMPLEX, templates,
        )
        (goldens / f"{case_id}-repair.txt").write_text(
            repair_bundle.system_text + "\n===USER===\n" + repair_bundle.user_text,
            encoding="utf-8",
        )
    # assembled-script golden with a repo-relative network path
    spec = SandboxSpec(
        executor_command=("python3", "runner.py", "{script}"),
        harness_template_path=str(ROOT / "harness" / "template.txt"),
        network_file="networks/Net1.inp",
    )
    program = GeneratedProgram(
        "def count_pumps(en):\n    return en.getLinkPumpCount()",
        "result = count_pumps(en)",
        0,
    )
    (goldens / "assembled_script.txt").write_text(
        assemble_script(program, spec), encoding="utf-8"
    )


def build_envelope_vectors():
    vectors = [
        {"line": '{"status": "ok", "result": 4, "stdout_excerpt": "", "wall_time_ms": 12}',
         "valid": True, "status": "ok", "result": 4},
        {"line": '{"status": "ok", "result": [1, 3], "stdout_excerpt": "x", "wall_time_ms": 1}',
         "valid": True, "status": "ok", "result": [1, 3]},
        {"line": '{"status": "ok", "result": {"pump": 1, "valve": 3}, "stdout_excerpt": "", "wall_time_ms": 0}',
         "valid": True, "status": "ok", "result": {"pump": 1, "valve": 3}},
        {"line": '{"status": "error", "traceback": "Traceback...", "stdout_excerpt": "", "wall_time_ms": 3}',
         "valid": True, "status": "error"},
        {"line": '{"status": "timeout", "stdout_excerpt": "", "wall_time_ms": 60000}',
         "valid": True, "status": "timeout"},
        {"line": '{"status": "ok"}', "valid": False},
        {"line": '{"status": "error"}', "valid": False},
        {"line": '{"status": "exploded", "stdout_excerpt": "", "wall_time_ms": 0}', "valid": False},
        {"line": "not json at all", "valid": False},
        {"line": "", "valid": False},
    ]
    (FIX / "envelope_vectors.json").write_text(
        json.dumps(vectors, indent=2) + "\n", encoding="utf-8"
    )


def main():
    templates = TemplateSet.bundled()
    corpus, index = build_corpus_and_index()
    print(f"corpus: {len(corpus.docs)} docs, template_version {templates.version}")
    suite_cases = freeze_oracles_and_expected()
    print(f"suite: {len(suite_cases)} cases")
    build_transcripts(index, templates)
    build_report(suite_cases, index, templates)
    build_fixture_runs(index, templates)
    build_goldens(index, templates)
    build_envelope_vectors()
    print("fixtures regenerated")


if __name__ == "__main__":
    main()

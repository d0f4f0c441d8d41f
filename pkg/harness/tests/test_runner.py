import json
import random
import string

import pytest

from common import NETWORK_FILES, assemble, run_document

PUMP_COUNT = "def count_pumps(en):\n    return en.getLinkPumpCount()"


def test_ok_envelope_scalar(tmp_path):
    doc = assemble(NETWORK_FILES["Net1"], "def f(en):\n    return 4", "result = f(en)")
    envelope, _ = run_document(doc, tmp_path)
    assert envelope["status"] == "ok"
    assert envelope["result"] == 4
    assert envelope["wall_time_ms"] >= 0


def test_net1_pump_count(tmp_path):
    doc = assemble(NETWORK_FILES["Net1"], PUMP_COUNT, "result = count_pumps(en)")
    envelope, _ = run_document(doc, tmp_path)
    assert envelope == {**envelope, "status": "ok", "result": 1}


def test_ltown_pumps_valves_tuple_coerced(tmp_path):
    block = (
        "def f(en):\n"
        "    return (en.getLinkPumpCount(), en.getLinkValveCount())"
    )
    doc = assemble(NETWORK_FILES["LTown"], block, "result = f(en)")
    envelope, _ = run_document(doc, tmp_path)
    assert envelope["status"] == "ok"
    assert envelope["result"] == [1, 3]


def test_set_result_sorted(tmp_path):
    doc = assemble(
        NETWORK_FILES["Net1"], "def f(en):\n    return {3, 1, 2}", "result = f(en)"
    )
    envelope, _ = run_document(doc, tmp_path)
    assert envelope["result"] == [1, 2, 3]


def test_dict_keys_stringified(tmp_path):
    doc = assemble(
        NETWORK_FILES["Net1"], "def f(en):\n    return {1: 'a'}", "result = f(en)"
    )
    envelope, _ = run_document(doc, tmp_path)
    assert envelope["result"] == {"1": "a"}


def test_undefined_name_in_eval_line(tmp_path):
    doc = assemble(NETWORK_FILES["Net1"], "def f(en):\n    return 1", "result = g(en)")
    envelope, _ = run_document(doc, tmp_path)
    assert envelope["status"] == "error"
    assert "NameError" in envelope["traceback"]
    assert "g" in envelope["traceback"]


def test_syntax_error_in_function_block(tmp_path):
    doc = assemble(NETWORK_FILES["Net1"], "def broken(en:\n    return", "result = 1")
    envelope, _ = run_document(doc, tmp_path)
    assert envelope["status"] == "error"
    assert "SyntaxError" in envelope["traceback"]


def test_attribute_error_has_method_name(tmp_path):
    doc = assemble(
        NETWORK_FILES["Net1"],
        "def f(en):\n    return en.computeAnswerDirectly()",
        "result = f(en)",
    )
    envelope, _ = run_document(doc, tmp_path)
    assert envelope["status"] == "error"
    assert "computeAnswerDirectly" in envelope["traceback"]


def test_prints_land_in_excerpt_not_envelope_line(tmp_path):
    block = "def f(en):\n    print('working on it')\n    return 2"
    doc = assemble(NETWORK_FILES["Net1"], block, "result = f(en)")
    envelope, stdout = run_document(doc, tmp_path)
    assert envelope["status"] == "ok"
    assert envelope["result"] == 2
    assert "working on it" in envelope["stdout_excerpt"]
    # the envelope must be the only stdout line
    assert len([ln for ln in stdout.splitlines() if ln.strip()]) == 1


def test_stdout_excerpt_capped(tmp_path):
    block = "def f(en):\n    print('y' * 100000)\n    return 1"
    doc = assemble(NETWORK_FILES["Net1"], block, "result = f(en)")
    envelope, _ = run_document(doc, tmp_path)
    assert len(envelope["stdout_excerpt"]) <= 8192


def test_missing_result_variable(tmp_path):
    doc = assemble(NETWORK_FILES["Net1"], "def f(en):\n    return 1", "answer = f(en)")
    envelope, _ = run_document(doc, tmp_path)
    assert envelope["status"] == "error"


def test_unknown_network_file(tmp_path):
    doc = assemble("/no/such/network.inp", "def f(en):\n    return 1", "result = f(en)")
    envelope, _ = run_document(doc, tmp_path)
    assert envelope["status"] == "error"


def test_fresh_state_repeatability(tmp_path):
    """Consecutive runs of a mutating script see identical starting state."""
    block = (
        "def f(en):\n"
        "    before = en.getLinkDiameter(1)\n"
        "    en.setLinkDiameter(1, 999.0)\n"
        "    return [before, en.getLinkDiameter(1)]"
    )
    doc = assemble(NETWORK_FILES["Net1"], block, "result = f(en)")
    first, _ = run_document(doc, tmp_path)
    second, _ = run_document(doc, tmp_path)
    first.pop("wall_time_ms")
    second.pop("wall_time_ms")
    assert first == second
    assert first["result"][1] == 999.0


def test_simulation_repeatability(tmp_path):
    block = (
        "def f(en):\n"
        "    sim = en.getComputedHydraulicTimeSeries()\n"
        "    return max(max(row) for row in sim.Pressure)"
    )
    doc = assemble(NETWORK_FILES["Net3"], block, "result = f(en)")
    first, _ = run_document(doc, tmp_path)
    second, _ = run_document(doc, tmp_path)
    assert first["status"] == "ok"
    assert first["result"] == second["result"]


@pytest.mark.parametrize("seed", range(4))
def test_envelope_totality_fuzz(tmp_path, seed):
    """Malformed function blocks never break the envelope protocol."""
    rng = random.Random(seed)
    snippets = []
    for _ in range(25):
        kind = rng.randrange(6)
        if kind == 0:
            snippets.append("".join(rng.choices(string.printable, k=rng.randint(0, 80))))
        elif kind == 1:
            snippets.append("def f(en:\n    return (")
        elif kind == 2:
            snippets.append("import sys\nsys.exit(3)")
        elif kind == 3:
            snippets.append("raise " + rng.choice(
                ["ValueError('x')", "KeyboardInterrupt", "SystemExit(1)", "MemoryError"]
            ))
        elif kind == 4:
            snippets.append("\x00\x01 garbage \xff")
        else:
            snippets.append("def f(en):\n" + "    # pad\n" * rng.randint(0, 5)
                            + "    return unknown_name")
    for i, snippet in enumerate(snippets):
        doc = assemble(NETWORK_FILES["Net1"], snippet, "result = f(en)")
        envelope, stdout = run_document(doc, tmp_path)
        assert envelope["status"] in ("ok", "error", "timeout"), snippet
        last = [ln for ln in stdout.splitlines() if ln.strip()][-1]
        assert json.loads(last) == envelope


def test_shared_envelope_vectors(tmp_path):
    """The runner's own output obeys the shared conformance vectors schema."""
    from pathlib import Path

    vectors_path = Path(__file__).resolve().parents[2] / "fixtures" / "envelope_vectors.json"
    vectors = json.loads(vectors_path.read_text(encoding="utf-8"))
    valid_statuses = {v["status"] for v in vectors if v["valid"]}
    assert valid_statuses == {"ok", "error", "timeout"}
    doc = assemble(NETWORK_FILES["Net1"], "def f(en):\n    return 4", "result = f(en)")
    envelope, _ = run_document(doc, tmp_path)
    assert set(envelope) == {"status", "result", "stdout_excerpt", "wall_time_ms"}

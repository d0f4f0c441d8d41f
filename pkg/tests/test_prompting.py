import pytest

from hydroquery.doc_ingest import MethodDoc
from hydroquery.errors import EmptyGeneration, MalformedFunctionBlock, NoRetrievals
from hydroquery.prompting import (
    ID_INDEX_TIP,
    PromptKind,
    PromptLevel,
    TemplateSet,
    build_eval_prompt,
    build_generation_prompt,
    build_repair_prompt,
    extract_code_block,
)

from support import FIX

GOLDENS = FIX / "goldens"

DOC = MethodDoc(
    "getlinkpumpcount", "getLinkPumpCount", "getLinkPumpCount()",
    "Retrieves the number of pump links.",
)


def test_basic_system_prompt_matches_golden(templates):
    bundle = build_generation_prompt("q", [(DOC, 1.0)], PromptLevel.BASIC, templates)
    golden = (GOLDENS / "basic_system.txt").read_text(encoding="utf-8")
    assert bundle.system_text == golden


def test_basic_system_prompt_exact_wording(templates):
    bundle = build_generation_prompt("q", [(DOC, 1.0)], PromptLevel.BASIC, templates)
    assert bundle.system_text.startswith("You are a code assistant for a water engineer.")


def test_complex_prompt_contains_id_index_tip(templates):
    bundle = build_generation_prompt("q", [(DOC, 1.0)], PromptLevel.COMPLEX, templates)
    assert ID_INDEX_TIP in bundle.system_text
    assert bundle.system_text.startswith("You are a code assistant for a water engineer.")


def test_no_retrievals_rejected(templates):
    with pytest.raises(NoRetrievals):
        build_generation_prompt("q", [], PromptLevel.BASIC, templates)


def test_description_truncated_at_600(templates):
    long_doc = MethodDoc("m", "m", "m()", "x" * 700)
    bundle = build_generation_prompt("q", [(long_doc, 1.0)], PromptLevel.BASIC, templates)
    assert "x" * 600 + "…[truncated]" in bundle.user_text
    assert "x" * 601 not in bundle.user_text


def test_retrieved_docs_in_rank_order_verbatim(templates):
    docs = [
        (MethodDoc(f"m{i}", f"m{i}", f"m{i}(a, b)", f"desc {i}"), 1.0 - i / 10)
        for i in range(3)
    ]
    bundle = build_generation_prompt("q", docs, PromptLevel.BASIC, templates)
    positions = [bundle.user_text.index(d.signature) for d, _ in docs]
    assert positions == sorted(positions)
    for i, (d, _) in enumerate(docs, start=1):
        assert f"{i}. {d.signature}" in bundle.user_text


def test_eval_prompt_contains_block_and_instruction(templates):
    code = "def count_pumps(en):\n    return en.getLinkPumpCount()"
    bundle = build_eval_prompt("How many pumps are in the network?", code, templates)
    assert bundle.kind is PromptKind.EVALUATE
    assert code in bundle.user_text
    assert "`result`" in bundle.user_text


def test_eval_prompt_rejects_two_definitions(templates):
    code = "def a(en):\n    return 1\ndef b(en):\n    return 2"
    with pytest.raises(MalformedFunctionBlock):
        build_eval_prompt("q", code, templates)


def test_eval_prompt_rejects_non_definition(templates):
    with pytest.raises(MalformedFunctionBlock):
        build_eval_prompt("q", "x = 1", templates)


def test_repair_short_traceback_whole(templates):
    bundle = build_repair_prompt("q", "def f(en):\n    pass", "result = f(en)",
                                 "boom error", PromptLevel.BASIC, templates)
    assert "boom error" in bundle.user_text
    assert "…[truncated]" not in bundle.user_text


def test_repair_long_traceback_tail_kept(templates):
    traceback = "HEAD" + "x" * 9000 + "TAIL_ERROR_LINE"
    bundle = build_repair_prompt("q", "def f(en):\n    pass", "result = f(en)",
                                 traceback, PromptLevel.BASIC, templates)
    assert "TAIL_ERROR_LINE" in bundle.user_text
    assert "HEAD" not in bundle.user_text
    tail = traceback[-4000:]
    assert "…[truncated]" + tail in bundle.user_text


def test_template_stability(templates):
    a = build_generation_prompt("q", [(DOC, 1.0)], PromptLevel.COMPLEX, templates)
    b = build_generation_prompt("q", [(DOC, 1.0)], PromptLevel.COMPLEX, templates)
    assert (a.system_text, a.user_text, a.template_version) == (
        b.system_text, b.user_text, b.template_version)


GOLDEN_CASES = [
    "static-net1-pumps",
    "static-ltown-pumps-valves",
    "hyd-net1-max-pressure",
    "qual-avg-age-last24",
    "scen-net1-close21-max",
]

CANNED_TRACEBACK = (
    "Traceback (most recent call last):\n"
    '  File "<eval_line>", line 1, in <module>\n'
    "NameError: name 'compute_answer' is not defined\n"
)


def _fixture_case(case_id):
    import importlib.util

    path = FIX.parent / "tools" / "make_fixtures.py"
    spec = importlib.util.spec_from_file_location("make_fixtures", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return {c["case_id"]: c for c in mod.CASES}[case_id]


def _golden(name):
    return (GOLDENS / name).read_text(encoding="utf-8")


def _retrieved(query, fixture_index, embedder_spec):
    from hydroquery import vector_index as vi
    from hydroquery.embedding import embed_text

    qvec = embed_text(query, embedder_spec)
    return [(fixture_index.entry(r.doc_id).doc, r.score)
            for r in vi.top_k(fixture_index, qvec, 8)]


@pytest.mark.parametrize("case_id", GOLDEN_CASES)
def test_generation_goldens_byte_equal(case_id, templates, fixture_index, embedder_spec):
    case = _fixture_case(case_id)
    docs = _retrieved(case["query"], fixture_index, embedder_spec)
    for level in (PromptLevel.BASIC, PromptLevel.COMPLEX):
        bundle = build_generation_prompt(case["query"], docs, level, templates)
        rebuilt = bundle.system_text + "\n===USER===\n" + bundle.user_text
        assert rebuilt == _golden(f"{case_id}-generate-{level.value}.txt")


@pytest.mark.parametrize("case_id", GOLDEN_CASES)
def test_eval_and_repair_goldens_byte_equal(case_id, templates):
    case = _fixture_case(case_id)
    eval_bundle = build_eval_prompt(case["query"], case["good"], templates)
    rebuilt = eval_bundle.system_text + "\n===USER===\n" + eval_bundle.user_text
    assert rebuilt == _golden(f"{case_id}-evaluate.txt")

    repair_bundle = build_repair_prompt(
        case["query"], case["good"], case["eval"], CANNED_TRACEBACK,
        PromptLevel.COMPLEX, templates,
    )
    rebuilt = repair_bundle.system_text + "\n===USER===\n" + repair_bundle.user_text
    assert rebuilt == _golden(f"{case_id}-repair.txt")


def test_fenced_block_extracted():
    assert extract_code_block("```\ndef f(en): pass\n```") == "def f(en): pass"


def test_language_tag_stripped():
    assert extract_code_block("```python\ndef f(en): pass\n```") == "def f(en): pass"


def test_prose_around_fence_ignored():
    out = extract_code_block("Sure!\n```python\ndef f(en): pass\n```\nHope that helps")
    assert out == "def f(en): pass"


def test_first_fence_wins():
    out = extract_code_block("```\nfirst\n```\ntext\n```\nsecond\n```")
    assert out == "first"


def test_prose_fallback():
    assert extract_code_block("def f(en): pass") == "def f(en): pass"


def test_empty_generation_rejected():
    with pytest.raises(EmptyGeneration):
        extract_code_block("```\n\n```")


def test_template_version_changes_with_content(tmp_path, templates):
    import shutil

    src = FIX.parent / "src" / "hydroquery" / "templates"
    shutil.copytree(src, tmp_path / "templates")
    target = tmp_path / "templates" / "generate_user.txt"
    target.write_text(target.read_text(encoding="utf-8") + "!", encoding="utf-8")
    edited = TemplateSet.from_dir(tmp_path / "templates")
    assert edited.version != templates.version

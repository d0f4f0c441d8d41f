import json
import subprocess
import sys

from common import HARNESS


def extract(out_path):
    proc = subprocess.run(
        [sys.executable, str(HARNESS / "extract_docs.py"), "--stub",
         "--out", str(out_path)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return proc


def test_extraction_structure(tmp_path):
    out = tmp_path / "corpus.json"
    extract(out)
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["docs"]
    names = [d["name"] for d in doc["docs"]]
    assert names == sorted(names)
    for entry in doc["docs"]:
        assert set(entry) == {"name", "signature", "description"}
        assert entry["signature"].startswith(entry["name"] + "(")
        assert entry["description"].strip()


def test_extraction_covers_stub_method_list(tmp_path):
    import importlib.util

    spec = importlib.util.spec_from_file_location(
        "watertool_stub", HARNESS / "watertool_stub.py"
    )
    stub = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(stub)
    public = sorted(
        name for name in vars(stub.epanet)
        if not name.startswith("_") and callable(getattr(stub.epanet, name))
    )
    out = tmp_path / "corpus.json"
    extract(out)
    names = [d["name"] for d in json.loads(out.read_text(encoding="utf-8"))["docs"]]
    assert names == public


def test_count_summary_on_stderr(tmp_path):
    proc = extract(tmp_path / "corpus.json")
    assert "method" in proc.stderr.lower()
    doc = json.loads((tmp_path / "corpus.json").read_text(encoding="utf-8"))
    assert str(len(doc["docs"])) in proc.stderr


def test_reruns_byte_identical(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    extract(a)
    extract(b)
    assert a.read_bytes() == b.read_bytes()


def test_matches_frozen_fixture_corpus(tmp_path):
    out = tmp_path / "corpus.json"
    extract(out)
    frozen_path = HARNESS.parent / "fixtures" / "corpus.json"
    got = json.loads(out.read_text(encoding="utf-8"))
    frozen = json.loads(frozen_path.read_text(encoding="utf-8"))
    assert got["docs"] == frozen["docs"]

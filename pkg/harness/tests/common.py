import json
import subprocess
import sys
from pathlib import Path

HARNESS = Path(__file__).resolve().parents[1]
ROOT = HARNESS.parent

NETWORK_FILES = {
    "Net1": str(ROOT / "networks" / "Net1.inp"),
    "Net3": str(ROOT / "networks" / "Net3.inp"),
    "LTown": str(ROOT / "networks" / "L-Town.inp"),
}


def assemble(network_file, function_block, eval_line):
    template = (HARNESS / "template.txt").read_text(encoding="utf-8")
    return (
        template.replace("{{NETWORK_PATH}}", network_file)
        .replace("{{FUNCTION_BLOCK}}", function_block)
        .replace("{{EVAL_LINE}}", eval_line)
    )


def run_document(document, tmp_path, timeout=60):
    """Invoke runner.py on an assembled document and return (envelope, stdout)."""
    script = tmp_path / "script.py"
    script.write_text(document, encoding="utf-8")
    proc = subprocess.run(
        [sys.executable, str(HARNESS / "runner.py"), str(script)],
        capture_output=True, text=True, timeout=timeout,
    )
    lines = [ln for ln in proc.stdout.splitlines() if ln.strip()]
    assert lines, f"no stdout at all (stderr: {proc.stderr!r})"
    return json.loads(lines[-1]), proc.stdout

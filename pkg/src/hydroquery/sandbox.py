"""Assemble generated code into a runnable script and execute it in isolation.

Assembly is pure text substitution into a harness template; this side never
interprets the execution language. Execution is a subprocess in a fresh temp
directory with a minimal environment and a wall-clock deadline. The contract
with the script is the envelope protocol: the final stdout line is a single
JSON object {status, result?, traceback?, stdout_excerpt, wall_time_ms}.
"""

from __future__ import annotations

import json
import os
import shutil
import signal
import subprocess
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ExecutorNotFound, MissingPlaceholder, SpawnFailure

DEFAULT_TIMEOUT_S = 60.0
ENV_ALLOWLIST = ("PATH", "HOME", "LANG", "LC_ALL", "TMPDIR", "PYTHONHASHSEED")
STDOUT_EXCERPT_CAP = 8192

_PLACEHOLDERS = ("{{NETWORK_PATH}}", "{{FUNCTION_BLOCK}}", "{{EVAL_LINE}}")


@dataclass(frozen=True)
class GeneratedProgram:
    function_block: str
    eval_line: str
    attempt_index: int


@dataclass(frozen=True)
class ExecutionEnvelope:
    status: str  # "ok" | "error" | "timeout"
    result: object = None
    traceback: str | None = None
    stdout_excerpt: str = ""
    wall_time_ms: int = 0

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "stdout_excerpt": self.stdout_excerpt,
            "wall_time_ms": self.wall_time_ms,
        }
        if self.status == "ok":
            out["result"] = self.result
        elif self.traceback is not None:
            out["traceback"] = self.traceback
        return out

    @classmethod
    def from_dict(cls, obj: dict) -> "ExecutionEnvelope":
        status = obj.get("status")
        if status not in ("ok", "error", "timeout"):
            raise ValueError(f"bad envelope status {status!r}")
        if status == "ok" and "result" not in obj:
            raise ValueError("ok envelope without result")
        if status == "error" and "traceback" not in obj:
            raise ValueError("error envelope without traceback")
        return cls(
            status=status,
            result=obj.get("result"),
            traceback=obj.get("traceback"),
            stdout_excerpt=str(obj.get("stdout_excerpt", ""))[:STDOUT_EXCERPT_CAP],
            wall_time_ms=int(obj.get("wall_time_ms", 0)),
        )


@dataclass(frozen=True)
class SandboxSpec:
    executor_command: tuple[str, ...]  # argv template with one "{script}" slot
    harness_template_path: str
    network_file: str
    timeout_s: float = DEFAULT_TIMEOUT_S
    extra_env: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        slots = sum(1 for a in self.executor_command if a == "{script}")
        if slots != 1:
            raise ValueError("executor_command must contain '{script}' exactly once")


def assemble_script(program: GeneratedProgram, spec: SandboxSpec) -> str:
    """Substitute placeholders into the harness template, verbatim."""
    template = Path(spec.harness_template_path).read_text(encoding="utf-8")
    for placeholder in _PLACEHOLDERS:
        if placeholder not in template:
            raise MissingPlaceholder(f"harness template lacks {placeholder}")
    return (
        template.replace("{{NETWORK_PATH}}", spec.network_file)
        .replace("{{FUNCTION_BLOCK}}", program.function_block)
        .replace("{{EVAL_LINE}}", program.eval_line)
    )


def _build_env(spec: SandboxSpec) -> dict[str, str]:
    env = {k: os.environ[k] for k in ENV_ALLOWLIST if k in os.environ}
    env.update({k: str(v) for k, v in spec.extra_env.items()})
    return env


def execute(script: str, spec: SandboxSpec) -> ExecutionEnvelope:
    """Run the assembled script in a fresh temp dir; always returns an envelope."""
    argv = [a if a != "{script}" else "" for a in spec.executor_command]
    exe = argv[0]
    if shutil.which(exe) is None and not Path(exe).exists():
        raise ExecutorNotFound(f"executor {exe!r} not found")

    workdir = tempfile.mkdtemp(prefix="hydroquery-run-")
    script_path = Path(workdir) / "script.py"
    script_path.write_text(script, encoding="utf-8")
    argv = [a if a != "{script}" else str(script_path) for a in spec.executor_command]

    started = time.monotonic()
    try:
        proc = subprocess.Popen(
            argv,
            cwd=workdir,
            env=_build_env(spec),
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
            close_fds=True,
            start_new_session=True,
            text=True,
        )
    except OSError as exc:
        shutil.rmtree(workdir, ignore_errors=True)
        raise SpawnFailure(f"failed to spawn executor: {exc}") from exc

    try:
        stdout, stderr = proc.communicate(timeout=spec.timeout_s)
        timed_out = False
    except subprocess.TimeoutExpired:
        try:
            os.killpg(proc.pid, signal.SIGKILL)
        except ProcessLookupError:
            pass
        stdout, stderr = proc.communicate()
        timed_out = True
    finally:
        wall_time_ms = int((time.monotonic() - started) * 1000)
        shutil.rmtree(workdir, ignore_errors=True)

    if timed_out:
        return ExecutionEnvelope(
            status="timeout",
            stdout_excerpt=(stdout or "")[-STDOUT_EXCERPT_CAP:],
            wall_time_ms=wall_time_ms,
        )
    return _parse_envelope(stdout or "", stderr or "", wall_time_ms)


def _parse_envelope(stdout: str, stderr: str, wall_time_ms: int) -> ExecutionEnvelope:
    lines = [ln for ln in stdout.splitlines() if ln.strip()]
    if lines:
        try:
            return ExecutionEnvelope.from_dict(json.loads(lines[-1]))
        except (json.JSONDecodeError, ValueError, TypeError):
            pass
    tail = (stdout + "\n--- stderr ---\n" + stderr)[-STDOUT_EXCERPT_CAP:]
    return ExecutionEnvelope(
        status="error",
        traceback="ENVELOPE_PARSE_FAILURE\n" + tail,
        stdout_excerpt=stdout[-STDOUT_EXCERPT_CAP:],
        wall_time_ms=wall_time_ms,
    )

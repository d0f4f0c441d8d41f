"""Execute an assembled harness document and emit a result envelope.

Usage: python3 runner.py <assembled-document>

The document carries three sections (network path, function block, eval
line) between sentinel lines. Each section is compiled and executed inside
try/except so that every possible failure, including syntax errors in the
generated code, still produces exactly one JSON envelope as the final
stdout line. A fresh network object is created per invocation; no state
survives between runs.

Uses the real EPyT toolkit when importable, otherwise the bundled stub.
"""

import io
import json
import sys
import time

SENTINELS = {
    "network_path": "#== section: network_path ==",
    "function_block": "#== section: function_block ==",
    "eval_line": "#== section: eval_line ==",
    "end": "#== section: end ==",
}

STDOUT_CAP = 8192


def split_sections(text):
    order = ["network_path", "function_block", "eval_line", "end"]
    lines = text.split("\n")
    marks = []
    cursor = 0
    for name in order:
        sentinel = SENTINELS[name]
        for i in range(cursor, len(lines)):
            if lines[i] == sentinel:
                marks.append(i)
                cursor = i + 1
                break
        else:
            raise ValueError("missing sentinel for section %r" % name)
    sections = {}
    for i, name in enumerate(order[:-1]):
        sections[name] = "\n".join(lines[marks[i] + 1 : marks[i + 1]])
    return sections


def coerce(value, depth=0):
    """Restrict results to scalars, lists, and string-keyed maps."""
    if depth > 8:
        return str(value)
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, (tuple, list)):
        return [coerce(v, depth + 1) for v in value]
    if isinstance(value, (set, frozenset)):
        return [coerce(v, depth + 1) for v in sorted(value, key=repr)]
    if isinstance(value, dict):
        return {str(k): coerce(v, depth + 1) for k, v in value.items()}
    if hasattr(value, "tolist"):  # numpy arrays and scalars
        return coerce(value.tolist(), depth + 1)
    if hasattr(value, "item"):
        return coerce(value.item(), depth + 1)
    return str(value)


def make_handle(network_path):
    try:
        from epyt import epanet
    except ImportError:
        sys.path.insert(0, _here())
        from watertool_stub import epanet
    return epanet(network_path)


def _here():
    import os

    return os.path.dirname(os.path.abspath(__file__))


def main():
    t0 = time.monotonic()
    real_stdout = sys.stdout
    captured = io.StringIO()
    envelope = {"status": "error", "traceback": "HARNESS_INTERNAL_FAILURE"}
    try:
        with open(sys.argv[1], "r", encoding="utf-8") as fh:
            sections = split_sections(fh.read())
        network_path = sections["network_path"].strip("\n")
        sys.stdout = captured
        try:
            en = make_handle(network_path)
            namespace = {"en": en}
            exec(compile(sections["function_block"], "<function_block>", "exec"), namespace)
            exec(compile(sections["eval_line"].strip("\n"), "<eval_line>", "exec"), namespace)
            if "result" not in namespace:
                raise NameError("the eval line did not assign the variable 'result'")
            envelope = {"status": "ok", "result": coerce(namespace["result"])}
        except BaseException:
            import traceback

            envelope = {"status": "error", "traceback": traceback.format_exc()}
        finally:
            sys.stdout = real_stdout
        envelope["stdout_excerpt"] = captured.getvalue()[:STDOUT_CAP]
    except BaseException as exc:
        sys.stdout = real_stdout
        envelope = {
            "status": "error",
            "traceback": "HARNESS_FAILURE: %s" % exc,
            "stdout_excerpt": "",
        }
    envelope["wall_time_ms"] = int((time.monotonic() - t0) * 1000)
    try:
        line = json.dumps(envelope, ensure_ascii=False)
    except (TypeError, ValueError):
        line = json.dumps(
            {
                "status": "error",
                "traceback": "ENVELOPE_SERIALIZATION_FAILURE",
                "stdout_excerpt": "",
                "wall_time_ms": envelope.get("wall_time_ms", 0),
            }
        )
    print(line)


if __name__ == "__main__":
    main()

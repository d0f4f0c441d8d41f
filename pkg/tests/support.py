"""Shared paths and helpers for the test suite."""

import sys
from pathlib import Path

from hydroquery.sandbox import SandboxSpec

ROOT = Path(__file__).resolve().parents[1]
FIX = ROOT / "fixtures"

DIM = 512

NETWORK_FILES = {
    "Net1": str(ROOT / "networks" / "Net1.inp"),
    "Net3": str(ROOT / "networks" / "Net3.inp"),
    "LTown": str(ROOT / "networks" / "L-Town.inp"),
}


def harness_sandbox(network_id: str, timeout_s: float = 30.0) -> SandboxSpec:
    return SandboxSpec(
        executor_command=(sys.executable, str(ROOT / "harness" / "runner.py"), "{script}"),
        harness_template_path=str(ROOT / "harness" / "template.txt"),
        network_file=NETWORK_FILES[network_id],
        timeout_s=timeout_s,
    )

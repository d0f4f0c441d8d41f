"""Application configuration: providers, embedder, sandbox, networks, paths.

Loaded from a YAML file; every key has a default so a bare repo checkout
works offline with the scripted provider disabled and the bundled assets.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .embedding import EmbedderSpec
from .errors import NetworkUnknown
from .llm_client import ProviderSpec
from .prompting import TemplateSet
from .sandbox import SandboxSpec

REPO_ROOT = Path(__file__).resolve().parents[2]


@dataclass
class NetworkRegistryEntry:
    network_id: str
    display_name: str
    file_path: str
    quality_configured: bool = False
    element_summary: dict | None = None

    def to_dict(self) -> dict:
        return {
            "network_id": self.network_id,
            "display_name": self.display_name,
            "file_path": self.file_path,
            "quality_configured": self.quality_configured,
            "element_summary": self.element_summary,
        }


def default_networks() -> list[NetworkRegistryEntry]:
    nets = Path(REPO_ROOT / "networks")
    return [
        NetworkRegistryEntry("Net1", "Net1", str(nets / "Net1.inp")),
        NetworkRegistryEntry("Net3", "Net3", str(nets / "Net3.inp")),
        NetworkRegistryEntry("LTown", "L-Town", str(nets / "L-Town.inp"), quality_configured=True),
    ]


@dataclass
class AppConfig:
    embedder: EmbedderSpec = field(default_factory=EmbedderSpec)
    generator: ProviderSpec | None = None
    evaluator: ProviderSpec | None = None
    sandbox_executor: tuple[str, ...] = ()
    harness_template: str = str(REPO_ROOT / "harness" / "template.txt")
    sandbox_timeout_s: float = 60.0
    networks: list[NetworkRegistryEntry] = field(default_factory=default_networks)
    templates_dir: str | None = None  # None -> bundled package templates
    data_dir: str = str(REPO_ROOT / "data")
    index_path: str | None = None
    top_k: int = 8
    max_retries: int = 5
    prompt_level: str = "complex"

    def __post_init__(self) -> None:
        if not self.sandbox_executor:
            runner = REPO_ROOT / "harness" / "runner.py"
            self.sandbox_executor = (sys.executable, str(runner), "{script}")

    def network(self, network_id: str) -> NetworkRegistryEntry:
        for entry in self.networks:
            if entry.network_id == network_id:
                return entry
        raise NetworkUnknown(network_id)

    def network_files(self) -> dict[str, str]:
        return {e.network_id: e.file_path for e in self.networks}

    def templates(self) -> TemplateSet:
        if self.templates_dir:
            return TemplateSet.from_dir(self.templates_dir)
        return TemplateSet.bundled()

    def sandbox_spec(self, network_file: str) -> SandboxSpec:
        return SandboxSpec(
            executor_command=tuple(self.sandbox_executor),
            harness_template_path=self.harness_template,
            network_file=network_file,
            timeout_s=self.sandbox_timeout_s,
        )


def _provider_from(obj: dict | None) -> ProviderSpec | None:
    if not obj:
        return None
    return ProviderSpec(
        kind=obj.get("kind", "http-chat"),
        endpoint=obj.get("endpoint"),
        model_name=obj.get("model_name"),
        temperature=float(obj.get("temperature", 0.0)),
        transcript_path=obj.get("transcript_path"),
        request_timeout_s=float(obj.get("request_timeout_s", 120.0)),
    )


def load_config(path: str | Path | None = None) -> AppConfig:
    if path is None:
        return AppConfig()
    raw = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
    cfg = AppConfig()
    if "embedder" in raw:
        e = raw["embedder"]
        cfg.embedder = EmbedderSpec(
            kind=e.get("kind", "hashed-bow"),
            dimension=int(e.get("dimension", 512)),
            endpoint=e.get("endpoint"),
            model_name=e.get("model_name"),
        )
    providers = raw.get("providers", {})
    cfg.generator = _provider_from(providers.get("generator"))
    cfg.evaluator = _provider_from(providers.get("evaluator"))
    sandbox = raw.get("sandbox", {})
    if "executor_command" in sandbox:
        cfg.sandbox_executor = tuple(sandbox["executor_command"])
    if "harness_template" in sandbox:
        cfg.harness_template = sandbox["harness_template"]
    if "timeout_s" in sandbox:
        cfg.sandbox_timeout_s = float(sandbox["timeout_s"])
    if "networks" in raw:
        cfg.networks = [
            NetworkRegistryEntry(
                network_id=n["network_id"],
                display_name=n.get("display_name", n["network_id"]),
                file_path=n["file_path"],
                quality_configured=bool(n.get("quality_configured", False)),
            )
            for n in raw["networks"]
        ]
    for key in ("templates_dir", "data_dir", "index_path"):
        if key in raw:
            setattr(cfg, key, raw[key])
    for key in ("top_k", "max_retries"):
        if key in raw:
            setattr(cfg, key, int(raw[key]))
    if "prompt_level" in raw:
        cfg.prompt_level = raw["prompt_level"]
    for entry in cfg.networks:
        if not Path(entry.file_path).exists():
            raise FileNotFoundError(f"network file missing: {entry.file_path}")
    return cfg

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from support import DIM, FIX  # noqa: E402

from hydroquery.embedding import EmbedderSpec  # noqa: E402
from hydroquery.prompting import TemplateSet  # noqa: E402
from hydroquery import vector_index as vi  # noqa: E402


@pytest.fixture(scope="session")
def embedder_spec() -> EmbedderSpec:
    return EmbedderSpec(dimension=DIM)


@pytest.fixture(scope="session")
def templates() -> TemplateSet:
    return TemplateSet.bundled()


@pytest.fixture(scope="session")
def fixture_index() -> vi.VectorIndex:
    return vi.load_index(FIX / "index.jsonl")

import sys
import textwrap
from pathlib import Path

import pytest

# Repo root on sys.path so tests can import krlab_*.py and tools/
ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))


@pytest.fixture(scope="session")
def book():
    from krlab_genfun import load_recipes

    return load_recipes(ROOT / "recipes.yaml")


@pytest.fixture
def recipe_file(tmp_path):
    """Write a small recipe table and return its path."""

    def write(text: str) -> Path:
        p = tmp_path / "recipes.yaml"
        p.write_text(textwrap.dedent(text), encoding="utf-8")
        return p

    return write

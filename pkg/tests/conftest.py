import pytest
from pathlib import Path
import sys

# Ensure the repository root is importable
repo_root = Path(__file__).parent.parent
if str(repo_root) not in sys.path:
    sys.path.insert(0, str(repo_root))

from analysis.interp import Evaluator
from analysis.typecheck import TypeChecker
from harness.corpus import corpus_counter, corpus_splay
from utils.config_loader import AppConfig, load_config

# --- Fixtures ---

@pytest.fixture(scope="session")
def project_root_dir():
    """Provides the calculated repository root directory."""
    return Path(__file__).parent.parent

@pytest.fixture(scope="session")
def sample_config_path(project_root_dir):
    return project_root_dir / "tests" / "data" / "sample_config.yaml"

@pytest.fixture
def config_obj(sample_config_path):
    """AppConfig loaded from tests/data/sample_config.yaml (reduced counts, fixed seeds)."""
    return load_config(sample_config_path)

@pytest.fixture
def default_config():
    return AppConfig()

@pytest.fixture(scope="session")
def counter_program():
    return corpus_counter()

@pytest.fixture(scope="session")
def splay_program():
    return corpus_splay()

@pytest.fixture(scope="session")
def split_fn(splay_program):
    return splay_program.expand("split")

@pytest.fixture
def checker():
    return TypeChecker()

@pytest.fixture
def evaluator():
    return Evaluator(fuel=200_000, trace=True)

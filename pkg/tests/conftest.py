import logging
import os
import sys
from pathlib import Path
import pytest
from dotenv import load_dotenv

# Add the parent directory to Python path
repo_dir = Path(__file__).parent.parent
if str(repo_dir) not in sys.path:
    sys.path.insert(0, str(repo_dir))

CORPUS_DIR = repo_dir / "corpus"

# Set up environment variables
env_file = Path(__file__).parent / ".env.test"
if env_file.exists():
    load_dotenv(env_file)

os.environ.update({
    "ETAKIT_CORPUS": str(CORPUS_DIR),
    "ETAKIT_BUDGET": "10000",
    "ETAKIT_LENGTH_GROWTH": "4",
    "ETAKIT_LOG_LEVEL": "WARNING",
    "ETAKIT_TABLE_WORKERS": "4",
    "ETAKIT_ORACLE_MARGIN": "2"
})

from etakit.core.config import get_settings
from etakit.services.corpus import CorpusService

FAMILY_FILES = [f"K{n}_{inv}.lvq" for n in (1, 2, 3) for inv in ("tau", "sigma")]


@pytest.fixture(autouse=True)
def fresh_settings():
    """Settings are cached per process; start every test from the environment."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(autouse=True)
def detach_log_handler():
    """The CLI installs its handler on the captured stderr of the test that ran it."""
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        if handler.get_name() == "etakit-json":
            root.removeHandler(handler)


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS_DIR


@pytest.fixture
def corpus() -> CorpusService:
    return CorpusService(CORPUS_DIR)


@pytest.fixture(params=FAMILY_FILES)
def family_file(request) -> str:
    return request.param


@pytest.fixture
def w11_diagram(corpus):
    return corpus.load_diagram("W11_surgery.diag")


HOPF = """\
component A arcs a
component B arcs b
crossing {s} over b b under a a
crossing {s} over a a under b b
"""


@pytest.fixture
def hopf_text():
    """Two-component Hopf link; format with s='+' or s='-'."""
    return HOPF

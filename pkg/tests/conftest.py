import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from phasorlisp import Config, Session


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def session():
    """Fresh interpreter session with the default configuration."""
    return Session()


@pytest.fixture
def fast_session():
    """Smaller dimension for tests that only need exact algebra."""
    return Session(Config(dim=256))

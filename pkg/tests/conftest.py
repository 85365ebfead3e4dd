import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from diversinet.software import default_catalog


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240817))


@pytest.fixture
def cat5():
    return default_catalog(5)


@pytest.fixture
def cat7():
    return default_catalog(7)

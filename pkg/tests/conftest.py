import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qgeodesy.statespace import normalize  # noqa: E402

KET0 = normalize([1, 0])
KET1 = normalize([0, 1])
PLUS = normalize([1, 1])
PLUS_I = normalize([1, 1j])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def ket0():
    return KET0


@pytest.fixture
def ket1():
    return KET1


@pytest.fixture
def plus():
    return PLUS

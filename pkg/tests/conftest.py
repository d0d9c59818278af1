import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cb_lab import FieldSpec


@pytest.fixture(scope="session")
def gf101():
    return FieldSpec.prime(101)


@pytest.fixture(scope="session")
def gf7():
    return FieldSpec.prime(7)


@pytest.fixture(scope="session")
def rationals():
    return FieldSpec.rational()

import random
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def fixtures_dir():
    return FIXTURES

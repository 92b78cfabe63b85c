import pytest
from mpmath import mp, workdps

from xilab import PrecisionContext


@pytest.fixture(scope="session")
def ctx40() -> PrecisionContext:
    return PrecisionContext(40)


@pytest.fixture(scope="session")
def ctx30() -> PrecisionContext:
    return PrecisionContext(30)


@pytest.fixture(autouse=True)
def _stable_global_precision():
    """Pin the ambient mpmath precision so assertions compare at full accuracy."""
    with workdps(60):
        yield

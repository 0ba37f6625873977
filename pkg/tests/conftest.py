import mpmath as mp
import pytest


@pytest.fixture(autouse=True)
def _reference_precision():
    """Reference values computed inline in tests (mp.pi, mp.zeta, ...) must
    carry more digits than the quantities under test; library calls manage
    their own precision via PrecisionContext and are unaffected."""
    with mp.workdps(60):
        yield

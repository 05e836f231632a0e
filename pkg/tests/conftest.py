import numpy as np
import pytest

from qgalab.rng import stream


@pytest.fixture
def rng(request) -> np.random.Generator:
    """Per-test generator, derived from the test's own name so tests stay
    order-independent and reproducible."""
    return stream(0xDECAF, request.node.name)

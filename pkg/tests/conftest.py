import os
import zlib

import numpy as np
import pytest

# One base seed for the whole run, overridable for soak testing.
BASE_SEED = int(os.environ.get("UNITARIZE_SEED", "20260821"))


@pytest.fixture
def rng(request):
    """Fresh generator per test, salted by the test name."""
    salt = zlib.crc32(request.node.name.encode())
    return np.random.default_rng([BASE_SEED, salt])

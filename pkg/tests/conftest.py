from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hypersimplex_codes import make_field

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_ORDERS = (4, 5, 7, 8, 9)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=SMALL_ORDERS)
def field(request):
    return make_field(request.param)

import os

import pytest
from hypothesis import HealthCheck, settings

from algebra.autgroup import anick, anick_normalizer
from algebra.uenv import RING_UV

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def delta():
    return anick()


@pytest.fixture
def sigma():
    return anick_normalizer()


@pytest.fixture
def uv():
    return RING_UV

import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def g2_poset():
    from lieorder.eigenposet import get_poset

    return get_poset("G2")


@pytest.fixture(scope="session")
def f4_poset():
    """Built once, then read from the on-disk cache ($LIEORDER_CACHE_DIR)."""
    from lieorder.eigenposet import get_poset

    return get_poset("F4")

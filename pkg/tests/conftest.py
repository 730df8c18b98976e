import os

import pytest
from hypothesis import HealthCheck, settings

from fvoa import _kernels

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("FVOA_HYPOTHESIS_EXAMPLES", "60")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels():
    # keep jit compile time out of the timed tests
    _kernels.warmup()

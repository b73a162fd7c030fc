import pytest

from regfilter import kernels


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # JIT-compile (numba backend) before any timed assertion runs.
    kernels.warm_up()

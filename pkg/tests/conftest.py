import pytest

from prodquot import backend


@pytest.fixture(scope="session", autouse=True)
def warm_backend():
    """Compile the hot kernels once so tests measure algorithms, not codegen."""
    backend.warmup()

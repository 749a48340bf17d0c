import pytest

from muposet.store import MuCache


@pytest.fixture(scope="session")
def cache():
    return MuCache()

import pytest

from eulergas.radiation import PhysicalConstants


@pytest.fixture(scope="session")
def si():
    return PhysicalConstants.si()

import pytest
from hypothesis import settings

from complexrank import load_cars

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def cars():
    return load_cars()

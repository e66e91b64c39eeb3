import pytest

from vwheat import make_standard_bump, reference_grid


@pytest.fixture(scope="session")
def bump():
    return make_standard_bump()


@pytest.fixture(scope="session")
def ref_grid():
    return reference_grid()

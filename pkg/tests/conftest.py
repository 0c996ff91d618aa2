import pytest

from miespec import coulomb, kratzer_fues

DIMS = (2, 3, 4, 5)
ELLS = (0, 1, 2)


@pytest.fixture(scope="session")
def hydrogen():
    return coulomb(-1.0)


@pytest.fixture(scope="session")
def kratzer():
    return kratzer_fues(5.0, 1.0)


def channel_grid():
    return [(ell, dim) for dim in DIMS for ell in ELLS]

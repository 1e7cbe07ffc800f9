import pytest

from matcat.algebra import doubled_maps_algebra, truncated_delta, type_A


@pytest.fixture(scope="session")
def A2():
    return type_A(2)


@pytest.fixture(scope="session")
def A3():
    return type_A(3)


@pytest.fixture(scope="session")
def delta5():
    return truncated_delta(5)


@pytest.fixture(scope="session")
def maps_A2(A2):
    return doubled_maps_algebra(A2)

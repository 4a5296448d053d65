import pytest

from grasspace import build_space


@pytest.fixture(scope="session")
def pg22():
    return build_space(2, 2)


@pytest.fixture(scope="session")
def pg32():
    return build_space(3, 2)


@pytest.fixture(scope="session")
def pg23():
    return build_space(2, 3)


@pytest.fixture(scope="session")
def pg33():
    return build_space(3, 3)


@pytest.fixture(scope="session")
def pg42():
    return build_space(4, 2)

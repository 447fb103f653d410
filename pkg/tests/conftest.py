import pytest

from char3iso import FieldParams


@pytest.fixture(scope="session")
def f3():
    return FieldParams(1)


@pytest.fixture(scope="session")
def f9():
    return FieldParams(2)

import pytest

from submult.families import (heisenberg_generators, quaternion_generators,
                              wreath_generators)
from submult.groups import close


@pytest.fixture(scope="session")
def h3():
    return close(heisenberg_generators(3), name="heisenberg3")


@pytest.fixture(scope="session")
def h5():
    return close(heisenberg_generators(5), name="heisenberg5")


@pytest.fixture(scope="session")
def w3():
    return close(wreath_generators(3), name="wreath3")


@pytest.fixture(scope="session")
def q8():
    return close(quaternion_generators(), name="quaternion8")

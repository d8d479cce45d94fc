import pytest

from qlk import build_lookup, build_qlk, css_distance


@pytest.fixture(scope="session")
def qlk3():
    return build_qlk(3)


@pytest.fixture(scope="session")
def qlk4():
    return build_qlk(4)


@pytest.fixture(scope="session")
def qlk4_certified(qlk4):
    css_distance(qlk4, 4)
    return qlk4


@pytest.fixture(scope="session")
def tables3(qlk3):
    return build_lookup(qlk3, 1)


@pytest.fixture(scope="session")
def tables4(qlk4):
    return build_lookup(qlk4, 1)

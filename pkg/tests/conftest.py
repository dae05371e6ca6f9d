import pytest

from riverscape import (FreeGroup, IntegerGroup, TernaryLandscape, ball,
                        river_landscape)


@pytest.fixture(scope="session")
def f2():
    return FreeGroup(2)


@pytest.fixture(scope="session")
def zline():
    return IntegerGroup()


@pytest.fixture(scope="session")
def win5(f2):
    return ball(f2, 5)


@pytest.fixture(scope="session")
def win8(f2):
    return ball(f2, 8)


@pytest.fixture(scope="session")
def win10(f2):
    return ball(f2, 10)


@pytest.fixture(scope="session")
def river(f2):
    return river_landscape(f2)


@pytest.fixture(scope="session")
def ternary():
    return TernaryLandscape()


@pytest.fixture(scope="session")
def zwin_small(zline):
    return ball(zline, 1000)


@pytest.fixture(scope="session")
def zwin_large(zline):
    return ball(zline, 10000)

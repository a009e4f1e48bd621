import pytest

from twolevel import asymptotics as asy
from twolevel import gfsystem as gf


@pytest.fixture(scope="session")
def pointed30():
    return gf.solve_pointed(30)


@pytest.fixture(scope="session")
def unrooted30(pointed30):
    return gf.assemble_T(pointed30)


@pytest.fixture(scope="session")
def selfdual30(pointed30):
    return gf.solve_selfdual(pointed30)


@pytest.fixture(scope="session")
def char30(pointed30):
    return asy.solve_char_system(pointed30.a_R, pointed30.a_U)


@pytest.fixture(scope="session")
def expansion30(char30, pointed30):
    return asy.singular_expansions(char30, pointed30.a_R, pointed30.a_U)

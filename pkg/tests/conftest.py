"""Shared fixtures.  The two split-prime quintic factors dominate the suite's
runtime, so they are built once per session and reused everywhere."""

import pytest

from cyarith import DiagonalVariety, local_factor_middle, make_field


@pytest.fixture(scope="session")
def quintic():
    return DiagonalVariety.fermat(5, 3)


@pytest.fixture(scope="session")
def cubic():
    return DiagonalVariety.fermat(3, 1)


@pytest.fixture(scope="session")
def quartic():
    return DiagonalVariety.fermat(4, 2)


@pytest.fixture(scope="session")
def f11():
    return make_field(11)


@pytest.fixture(scope="session")
def quintic_lf11(quintic):
    return local_factor_middle(quintic, 11)


@pytest.fixture(scope="session")
def quintic_lf31(quintic):
    return local_factor_middle(quintic, 31)


@pytest.fixture(scope="session")
def quintic_lf2(quintic):
    return local_factor_middle(quintic, 2)

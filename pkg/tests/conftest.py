import pytest

from gaudinlab.liealg import build_algebra
from gaudinlab.talalaev import compute_Q


@pytest.fixture(scope="session")
def sl2():
    return build_algebra("sl", 2)


@pytest.fixture(scope="session")
def gl2():
    return build_algebra("gl", 2)


@pytest.fixture(scope="session")
def sl3():
    return build_algebra("sl", 3)


@pytest.fixture(scope="session")
def gl3():
    return build_algebra("gl", 3)


# the two expensive commuting families, shared across test modules
@pytest.fixture(scope="session")
def qfam_gl2(gl2):
    return compute_Q(gl2, 6)


@pytest.fixture(scope="session")
def qfam_gl3(gl3):
    return compute_Q(gl3, 3)

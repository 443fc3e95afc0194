import pytest

from homleib.structure import current_algebra, virasoro


@pytest.fixture(scope="session")
def vir():
    return virasoro()


@pytest.fixture(scope="session")
def cur2():
    # rank-2 current algebra: single product e2*e2 = e1, identity twist
    return current_algebra(2, {(1, 1): (1, 0)}, [[1, 0], [0, 1]])


@pytest.fixture(scope="session")
def twisted2():
    # same product, unipotent twist: exercises the alpha powers in every
    # formula (the other fixtures all carry the identity twist)
    return current_algebra(2, {(1, 1): (1, 0)}, [[1, 1], [0, 1]])

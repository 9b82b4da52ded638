import pytest

from gmalg.rings import Zmod
from gmalg.families import (
    block_triangular_gma,
    full_matrix_gma,
    triangular_gma,
)


@pytest.fixture(scope="session")
def m2_z3():
    return full_matrix_gma(Zmod(3), 2, 1)


@pytest.fixture(scope="session")
def m2_z5():
    return full_matrix_gma(Zmod(5), 2, 1)


@pytest.fixture(scope="session")
def t2_z3():
    return triangular_gma(Zmod(3), 2, 1)


@pytest.fixture(scope="session")
def t2_z5():
    return triangular_gma(Zmod(5), 2, 1)


@pytest.fixture(scope="session")
def t3_z3():
    return triangular_gma(Zmod(3), 3, 1)


@pytest.fixture(scope="session")
def b21_z3():
    return block_triangular_gma(Zmod(3), (2, 1), 1)

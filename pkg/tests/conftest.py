import os

import pytest

from utils.fixtures import all_fixture_datums, fixture_datum

SAMPLE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "sample_data")


@pytest.fixture
def sample_dir():
    """Directory holding the sample datum files."""
    return SAMPLE_DIR


@pytest.fixture
def datums():
    """Every fixture datum by name."""
    return all_fixture_datums()


@pytest.fixture
def real1():
    return fixture_datum("rank1_real")


@pytest.fixture
def imag0():
    return fixture_datum("rank1_imag0")


@pytest.fixture
def imag2():
    return fixture_datum("rank1_imag2")


@pytest.fixture
def mixed():
    """Real i, imaginary j with a_jj = -2 and a_ij = a_ji = -1."""
    return fixture_datum("rank2_mixed_a1")


@pytest.fixture
def mixed2():
    return fixture_datum("rank2_mixed_a2")


@pytest.fixture
def mixed2_reversed():
    """rank2_mixed_a2 with the arrow j -> i."""
    return fixture_datum("rank2_mixed_a2_reversed")


@pytest.fixture
def orth():
    """i - j - k with k imaginary and i . k = 0."""
    return fixture_datum("rank3_orth")

import logging

import pytest

from src.analysis.incidence import gen_cyclic
from src.models.catalog import load_known


@pytest.fixture(autouse=True)
def restore_root_logging():
    """The CLI reconfigures the root logger; put it back after each test"""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def fano():
    return gen_cyclic(7, 1, 3)


@pytest.fixture
def pappus():
    return load_known("pappus")


@pytest.fixture
def cyclic_nine():
    return load_known("9_3_2")


@pytest.fixture
def nine_three_three():
    return load_known("9_3_3")


@pytest.fixture
def desargues():
    return load_known("desargues")


@pytest.fixture
def ten_three_ten():
    return load_known("10_3_10")


@pytest.fixture
def pappus_table_text():
    return (
        "# Pappus configuration\n"
        "9\n"
        "1 1 1 2 2 2 3 3 3\n"
        "4 5 6 4 5 6 4 5 6\n"
        "7 8 9 8 9 7 9 7 8\n"
    )

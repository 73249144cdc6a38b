"""Shared fixtures: catalog algebras with their file orders, seeded generators."""

import numpy as np
import pytest

from QH_Toolkit import config
from QH_Toolkit.core.exactla import FieldSpec
from QH_Toolkit.data.catalog import HW_EXAMPLES, load_catalog


@pytest.fixture(scope="session")
def gf5():
    return FieldSpec.prime(5)


@pytest.fixture(scope="session")
def qq():
    return FieldSpec.rationals()


@pytest.fixture
def rng():
    return np.random.default_rng(config.RANDOM_SEED)


@pytest.fixture(scope="session")
def semisimple():
    return load_catalog("semisimple")


@pytest.fixture(scope="session")
def a2():
    return load_catalog("a2")


@pytest.fixture(scope="session")
def exm():
    return load_catalog("exm_strictness")


@pytest.fixture(scope="session")
def dual_numbers():
    return load_catalog("dual_numbers")


@pytest.fixture(scope="session")
def incidence4():
    return load_catalog("incidence4")


@pytest.fixture(scope="session")
def two_cycle():
    return load_catalog("two_cycle")


@pytest.fixture(scope="session")
def auslander():
    return load_catalog("auslander_dual_numbers")


@pytest.fixture(scope="session", params=HW_EXAMPLES)
def hw_example(request):
    """Every catalog algebra whose file order passes the highest weight check."""
    return load_catalog(request.param)


import numpy as np
import pytest

from fusionframes import catalog


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture(scope="session")
def mercedes():
    return catalog("mercedes")


@pytest.fixture(scope="session")
def mub_planes():
    return catalog("mub-planes-r4")


@pytest.fixture(scope="session")
def ortho_lines_r2():
    return catalog("cross-polytope-lines(2)")

import random

import matplotlib

matplotlib.use("Agg")

import pytest

from qsp_kmatrix import build_module, build_params, catalog_config
from qsp_kmatrix.core.quasik import compute_quasik
from qsp_kmatrix.qsp_kmatrix import make_quasiR_cache


@pytest.fixture(scope="session")
def a1_cfg():
    return catalog_config("A1_split")


@pytest.fixture(scope="session")
def a1(a1_cfg):
    return build_params(a1_cfg)


@pytest.fixture(scope="session")
def a1_qk(a1):
    return compute_quasik(a1, 8)


@pytest.fixture(scope="session")
def a1_V1(a1):
    return build_module(a1, "V(w1)")


@pytest.fixture(scope="session")
def a1_V2(a1):
    return build_module(a1, "V(2w1)")


@pytest.fixture(scope="session")
def a1_qrc(a1):
    return make_quasiR_cache(a1)


@pytest.fixture(scope="session")
def a1s(a1_cfg):
    return build_params(catalog_config("A1_s"))


@pytest.fixture(scope="session")
def a2_cfg():
    return catalog_config("A2_qsplit")


@pytest.fixture(scope="session")
def a2(a2_cfg):
    return build_params(a2_cfg)


@pytest.fixture(scope="session")
def a2_qk(a2):
    return compute_quasik(a2, 4)


@pytest.fixture(scope="session")
def a2_V1(a2):
    return build_module(a2, "V(w1)")


@pytest.fixture(scope="session")
def a2_V2(a2):
    return build_module(a2, "V(w2)")


@pytest.fixture(scope="session")
def a2_qrc(a2):
    return make_quasiR_cache(a2)


@pytest.fixture
def rng():
    return random.Random(20240611)

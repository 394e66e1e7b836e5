import random

import pytest

from Algebra.Generators import GeneratorSet
from MPC.Dealer import dealer_setup
from Utility.Logging import configure_logging


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="also run tests marked slow")


def pytest_configure(config):
    configure_logging("WARNING")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="slow, use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(scope="session")
def gens16():
    return GeneratorSet.derive(16, prefix="test/bp")


@pytest.fixture
def bundles_for():
    def make(n_parties, seed=7, **counts):
        return dealer_setup(n_parties, rng=random.Random(seed), **counts)
    return make

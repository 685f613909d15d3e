from pathlib import Path

import pytest

from cegarmc import parse_model

FIXTURES = Path(__file__).parent / "fixtures"


def load_fixture(name: str):
    return parse_model((FIXTURES / name).read_text())


@pytest.fixture
def traffic_light():
    return load_fixture("traffic_light.kmod")


@pytest.fixture
def faulty_traffic_light():
    return load_fixture("faulty_traffic_light.kmod")


@pytest.fixture
def two_block_chain():
    return load_fixture("two_block_chain.kmod")


@pytest.fixture
def dead_bad_isolated():
    return load_fixture("dead_bad_isolated.kmod")


@pytest.fixture
def splitting_cost():
    return load_fixture("splitting_cost.kmod")


@pytest.fixture
def fixture_dir():
    return FIXTURES

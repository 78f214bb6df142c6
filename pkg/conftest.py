"""
Shared fixtures for the poset polytopes test suite.
"""

from pathlib import Path

import pytest

from src.poset.core import Poset, parse_poset
from src.poset.families import antichain_poset, bottom_pair_poset, chain_poset
from src.utils.config import config_manager

ROOT = Path(__file__).parent
POSETS_DIR = ROOT / "posets"


@pytest.fixture
def posets_dir() -> Path:
    """Sample poset files shipped with the repository."""
    return POSETS_DIR


@pytest.fixture
def example_pair():
    """P = {p1 < p2}, Q = {q2 < q1}: no common linear extension."""
    return parse_poset(2, [(1, 2)]), parse_poset(2, [(2, 1)])


@pytest.fixture
def chain2() -> Poset:
    return chain_poset(2)


@pytest.fixture
def antichain2() -> Poset:
    return antichain_poset(2)


@pytest.fixture
def chain3() -> Poset:
    return chain_poset(3)


@pytest.fixture
def pair3() -> Poset:
    """p1, p2 incomparable below p3."""
    return bottom_pair_poset(3)


@pytest.fixture
def fresh_config():
    """Restore the global configuration after a test changes it."""
    yield config_manager
    config_manager.reload_config(str(ROOT / "config.yaml"))

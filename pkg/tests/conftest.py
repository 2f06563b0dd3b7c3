"""Shared windows for the test suite.

Materialization is deterministic, so the fixtures are session-scoped and
every test file sees the same category objects.  The five standard
windows mirror the desk-scale bounds used throughout the suite.
"""
import pytest

from catcheck.backends.materialize import materialize
from catcheck.backends.theories import get_backend
from catcheck.budget import DEFAULT_BUDGET

STANDARD_BOUNDS = {
    "finab": 4,
    "finptset": 3,
    "finmon": 3,
    "fingrp": 6,
    "grouppair": 4,
}


@pytest.fixture(scope="session")
def windows():
    return {name: materialize(get_backend(name), bound, budget=DEFAULT_BUDGET)
            for name, bound in STANDARD_BOUNDS.items()}


@pytest.fixture(scope="session")
def finab4(windows):
    return windows["finab"]


@pytest.fixture(scope="session")
def finptset3(windows):
    return windows["finptset"]


@pytest.fixture(scope="session")
def finmon3(windows):
    return windows["finmon"]


@pytest.fixture(scope="session")
def fingrp6(windows):
    return windows["fingrp"]


@pytest.fixture(scope="session")
def grouppair4(windows):
    return windows["grouppair"]


@pytest.fixture(scope="session")
def finab2():
    return materialize(get_backend("finab"), 2, budget=DEFAULT_BUDGET)

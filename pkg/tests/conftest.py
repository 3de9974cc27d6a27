"""Shared fixtures for the parity-psi test suites."""

import os
from functools import lru_cache

import pytest

from controllers.monodromy_controller import MonodromyController
from controllers.nearby_controller import NearbyController
from models.scalar import scalar_ring

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")


@lru_cache(maxsize=None)
def nearby_for(n):
    """One NearbyController per n for the whole session; kits are expensive to build."""
    return NearbyController(scalar_ring(n))


@pytest.fixture
def ring():
    return scalar_ring


@pytest.fixture
def nearby():
    return nearby_for


@pytest.fixture
def monodromy():
    def build(n):
        return MonodromyController(nearby_for(n))

    return build


@pytest.fixture
def golden():
    def read(name):
        with open(os.path.join(GOLDEN_DIR, name), encoding="utf-8") as handle:
            return handle.read()

    return read


def normalize(text):
    """Collapse whitespace runs so golden comparisons ignore indentation and line breaks."""
    return " ".join(text.split())

import random

import pytest

from meyer_signature.symplectic_meyer import SymplecticMatrix

SEED = 20240607


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture
def T():
    """Right-handed Dehn twist in genus 1."""
    return SymplecticMatrix.from_rows([[1, 1], [0, 1]])


@pytest.fixture
def S():
    return SymplecticMatrix.from_rows([[0, -1], [1, 0]])

import numpy as np
import pytest

from mixrenewal.measure import MixtureMeasure, Atom
from mixrenewal.families import uniform_piece, beta_piece, arcsine_piece


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def two_atom():
    """Symmetric two-atom law: the classic worked example."""
    return MixtureMeasure([Atom(0.25, 0.5), Atom(0.75, 0.5)],
                          probability=True)


@pytest.fixture
def bernoulli_half():
    return MixtureMeasure([Atom(0.5, 1.0)], probability=True)


@pytest.fixture
def defective_half():
    """Half the mass stuck at 0 (defective inter-arrival law)."""
    return MixtureMeasure([Atom(0.0, 0.5), Atom(0.5, 0.5)],
                          probability=True)


@pytest.fixture
def uniform01():
    return MixtureMeasure([], [uniform_piece(0.0, 1.0)], probability=True)


@pytest.fixture
def beta23():
    return MixtureMeasure([], [beta_piece(0.0, 1.0, 2.0, 3.0)],
                          probability=True)


@pytest.fixture
def mixed():
    """Atoms plus two interior density pieces."""
    return MixtureMeasure(
        [Atom(0.5, 0.3)],
        [uniform_piece(0.1, 0.4, weight=0.4),
         beta_piece(0.6, 0.9, 1.5, 2.0, weight=0.3)],
        probability=True)


@pytest.fixture
def arcsine03():
    return MixtureMeasure([], [arcsine_piece(0.0, 1.0, 0.3)],
                          probability=True)

"""Shared pytest fixtures; living at the repo root also puts the packages on sys.path."""

import numpy as np
import pytest

from data.sampling import make_rng, uniform_ball, unit_vectors
from quantum.flows import FlowParams


@pytest.fixture
def rng():
    return make_rng(20240611)


@pytest.fixture
def ball_points(rng):
    """100 seeded points inside the Bloch ball"""
    return uniform_ball(rng, 100)


@pytest.fixture
def sphere_points(rng):
    """100 seeded unit Bloch vectors"""
    return unit_vectors(rng, 100)


@pytest.fixture
def x_flow():
    return FlowParams(np.array([1.0, 0.0, 0.0]), 1.0)


@pytest.fixture
def z_flow():
    return FlowParams(np.array([0.0, 0.0, 1.0]), 1.0)

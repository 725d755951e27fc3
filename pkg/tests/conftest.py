# Shared fixtures for the test modules.

import numpy as np
import pytest
from quantum_smart_matter.wavepacket import GaussianState, make_grid, \
		gaussian_init


@pytest.fixture
def grid():
	return make_grid(-12., 12., 256)


@pytest.fixture
def ground(grid):
	'''
	Ground state of the omega = 1 oscillator.
	'''
	return gaussian_init(grid, GaussianState(0., 1 / np.sqrt(2)))


@pytest.fixture
def rng():
	return np.random.default_rng(1234)

# Grids, packets and observables.

import numpy as np
import pandas as pd
import pytest
from quantum_smart_matter.wavepacket import Grid, GaussianState, \
		WaveFunction, Trajectory, make_grid, gaussian_init, product_state, \
		superpose, reflect, mean_position, spread, excess_kurtosis, energy, \
		kinetic_energy, covariance, fidelity, marginal_moments
from quantum_smart_matter.potential import HarmonicPotential


@pytest.mark.parametrize("lo, hi, n", [
	(-1., 1., 100),
	(-1., 1., 8),
	(1., -1., 64),
	(0., 0., 64),
	(-np.inf, 1., 64)])
def test_make_grid_rejects(lo, hi, n):
	with pytest.raises(ValueError):
		make_grid(lo, hi, n)


def test_grid_points():
	g = make_grid(-4., 4., 16)
	assert g.dx == pytest.approx(0.5)
	assert g.x[0] == -4.
	assert g.x[-1] == pytest.approx(3.5)
	assert g.isSymmetric()
	assert len(g.k) == 16


def test_gaussian_moments(grid):
	wf = gaussian_init(grid, GaussianState(1.5, 0.8, momentum = 0.7))
	assert wf.norm() == pytest.approx(1., abs = 1e-12)
	assert mean_position(wf) == pytest.approx(1.5, abs = 1e-10)
	assert spread(wf) == pytest.approx(0.8, abs = 1e-10)
	assert abs(excess_kurtosis(wf)) < 1e-8


def test_gaussian_outside_domain(grid):
	with pytest.raises(ValueError, match = "exceeds the domain"):
		gaussian_init(grid, GaussianState(10., 1.))


def test_spread_must_be_positive():
	with pytest.raises(ValueError):
		GaussianState(0., 0.)


def test_ground_state_energy(ground):
	assert energy(ground, HarmonicPotential(1.)) == pytest.approx(0.5, abs = 1e-10)
	assert kinetic_energy(ground) == pytest.approx(0.25, abs = 1e-10)


def test_energy_under_stiffer_potential(ground):
	# <x^2> = 1/2 under omega = 2 gives potential energy 1
	assert energy(ground, HarmonicPotential(2.)) == pytest.approx(1.25, abs = 1e-5)


def test_displaced_ground_state_energy(grid):
	wf = gaussian_init(grid, GaussianState(1., 1 / np.sqrt(2)))
	assert energy(wf, HarmonicPotential(1.)) == pytest.approx(1., abs = 1e-5)


def test_moving_packet_kinetic_energy(grid):
	s = 0.9
	q = 1.3
	wf = gaussian_init(grid, GaussianState(0., s, momentum = q))
	expected = 0.5 * (q ** 2 + 1 / (4 * s ** 2))
	assert kinetic_energy(wf) == pytest.approx(expected, abs = 1e-10)


def test_reflect(grid):
	wf = gaussian_init(grid, GaussianState(2., 0.7))
	r = reflect(wf)
	assert mean_position(r) == pytest.approx(-2., abs = 1e-10)
	assert r.norm() == pytest.approx(wf.norm())


def test_reflect_needs_symmetric_grid():
	g = make_grid(-4., 8., 64)
	wf = gaussian_init(g, GaussianState(2., 0.5))
	with pytest.raises(ValueError):
		reflect(wf)


def test_superpose(grid):
	a = gaussian_init(grid, GaussianState(-3., 0.7))
	b = gaussian_init(grid, GaussianState(3., 0.7))
	wf = superpose([a, b], [1., 1.])
	assert wf.norm() == pytest.approx(1., abs = 1e-12)
	assert mean_position(wf) == pytest.approx(0., abs = 1e-10)
	other = gaussian_init(make_grid(-10., 10., 256), GaussianState(0., 0.7))
	with pytest.raises(ValueError):
		superpose([a, other], [1., 1.])


def test_product_state(grid):
	wf = product_state(grid, GaussianState(1., 0.7), GaussianState(-2., 0.6))
	assert wf.ndim == 2
	assert wf.norm() == pytest.approx(1., abs = 1e-12)
	assert mean_position(wf, 0) == pytest.approx(1., abs = 1e-10)
	assert mean_position(wf, 1) == pytest.approx(-2., abs = 1e-10)
	assert spread(wf, 1) == pytest.approx(0.6, abs = 1e-10)
	assert covariance(wf) == pytest.approx(0., abs = 1e-12)
	mean, second = marginal_moments(wf, 1)
	assert second - mean ** 2 == pytest.approx(0.36, abs = 1e-10)
	with pytest.raises(ValueError):
		marginal_moments(wf, 2)


def test_covariance_needs_2d(ground):
	with pytest.raises(ValueError):
		covariance(ground)


def test_fidelity(grid, ground):
	assert fidelity(ground, ground) == pytest.approx(1., abs = 1e-12)
	far = gaussian_init(grid, GaussianState(8., 0.5))
	assert fidelity(ground, far) < 1e-6


def test_amplitude_shape_checked(grid):
	with pytest.raises(ValueError):
		WaveFunction(grid, np.zeros(100))


def test_states_are_values(ground):
	c = ground.copy()
	c.amplitudes[:] = 0
	assert ground.norm() == pytest.approx(1.)


def test_trajectory_validation():
	with pytest.raises(ValueError, match = "missing"):
		Trajectory(pd.DataFrame({"t": [0., 1.]}))
	with pytest.raises(ValueError, match = "increasing"):
		Trajectory(pd.DataFrame({"t": [0., 1., 1.], "mean_x": [0., 1., 2.]}))


def test_trajectory_access():
	traj = Trajectory(pd.DataFrame({"t": [0., 1., 2.],
		"mean_x": [0., 2., 4.]}), autonomous = True)
	assert len(traj) == 3
	assert traj.final() == 4.
	assert traj.interp(1.5) == pytest.approx(3.)
	assert traj.has("mean_x") and not traj.has("energy")
	assert traj.ticks is None

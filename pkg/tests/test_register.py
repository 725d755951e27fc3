# Register states, control ticks and ticked evolution.

import numpy as np
import pytest
from quantum_smart_matter.wavepacket import GaussianState, make_grid, \
		gaussian_init, product_state, fidelity
from quantum_smart_matter.potential import HarmonicPotential, \
		ProgrammedPair, displaced_pair, sign_program, constant_program
from quantum_smart_matter.propagator import EvolutionSpec, evolve
from quantum_smart_matter.register import RegisterState, TickSchedule, \
		classify_init, cross_classify_init, control_tick, cross_program_tick, \
		mismatch_weight, marginal, occupancy, evolve_programmed, \
		evolve_cross_programmed


def _random_state(grid, components, rng):
	shape = (components,) + (grid.n,) * (2 if components == 4 else 1)
	amps = rng.normal(size = shape) + 1j * rng.normal(size = shape)
	state = RegisterState(grid, amps)
	return state.withAmplitudes(amps / np.sqrt(state.norm()))


def test_register_shape_checked(grid):
	with pytest.raises(ValueError):
		RegisterState(grid, np.zeros((3, grid.n)))


def test_classify_symmetric_packet(grid, ground):
	state = classify_init(ground, sign_program)
	occ = occupancy(state)
	assert occ.sum() == pytest.approx(1., abs = 1e-12)
	assert occ == pytest.approx([0.5, 0.5], abs = 0.03)
	assert mismatch_weight(state, sign_program) == pytest.approx(0., abs = 1e-15)


def test_classify_packet_on_one_side(grid):
	wf = gaussian_init(grid, GaussianState(-6., 0.5))
	state = classify_init(wf, sign_program)
	assert occupancy(state)[1] < 1e-30
	assert np.array_equal(marginal(state).amplitudes, wf.amplitudes)


def test_classify_constant_program(ground):
	state = classify_init(ground, constant_program(0))
	assert not np.any(state.amplitudes[1])
	assert mismatch_weight(state, constant_program(0)) == 0.


def test_classify_needs_normalized_state(grid, ground):
	with pytest.raises(ValueError, match = "normalized"):
		classify_init(ground.withAmplitudes(2 * ground.amplitudes), sign_program)


def test_tick_is_identity_on_consistent_state(ground):
	state = classify_init(ground, sign_program)
	ticked = control_tick(state, sign_program)
	assert np.array_equal(ticked.amplitudes, state.amplitudes)


def test_tick_moves_mismatched_amplitude(grid):
	wf = gaussian_init(grid, GaussianState(-4., 0.5))
	amps = np.zeros((2, grid.n), dtype = complex)
	amps[1] = wf.amplitudes
	state = RegisterState(grid, amps)
	assert mismatch_weight(state, sign_program) == pytest.approx(1.)
	ticked = control_tick(state, sign_program)
	left = grid.x <= 0
	assert np.array_equal(ticked.amplitudes[0][left], wf.amplitudes[left])
	assert not np.any(ticked.amplitudes[1][left])
	assert occupancy(ticked)[0] == pytest.approx(1., abs = 1e-12)
	assert mismatch_weight(ticked, sign_program) == pytest.approx(0., abs = 1e-15)
	assert ticked.norm() == pytest.approx(state.norm(), abs = 1e-15)


@pytest.mark.parametrize("components", [2, 4])
def test_tick_gathers_register(components, rng):
	g = make_grid(-6., 6., 16 if components == 4 else 64)
	state = _random_state(g, components, rng)
	assert mismatch_weight(state, sign_program) > 0.1
	ticked = control_tick(state, sign_program)
	assert ticked.norm() == pytest.approx(state.norm(), abs = 1e-14)
	assert mismatch_weight(ticked, sign_program) == 0.
	before = marginal(state).amplitudes
	after = marginal(ticked).amplitudes
	c = np.sqrt(state.norm() / np.sum(np.abs(before) ** 2 * state.volume))
	assert np.allclose(after, c * before, rtol = 1e-12, atol = 1e-14)


@pytest.mark.parametrize("components", [2, 4])
def test_tick_keeps_density_of_single_values(components, rng):
	g = make_grid(-6., 6., 16 if components == 4 else 64)
	state = _random_state(g, components, rng)
	# one occupied register value per point, chosen at random
	pick = rng.integers(components, size = state.amplitudes.shape[1:])
	values = np.arange(components).reshape((-1,) + (1,) * state.ndim)
	state = state.withAmplitudes(np.where(values == pick[None],
		state.amplitudes, 0))
	ticked = control_tick(state, sign_program)
	assert np.array_equal(ticked.density(), state.density())
	assert mismatch_weight(ticked, sign_program) == 0.


def test_cross_tick_sets_register_from_other_sign():
	g = make_grid(-8., 8., 64)
	wf = product_state(g, GaussianState(3., 0.5), GaussianState(3., 0.5))
	amps = np.zeros((4, g.n, g.n), dtype = complex)
	amps[0] = wf.amplitudes
	state = RegisterState(g, amps)
	ticked = cross_program_tick(state)
	assert occupancy(ticked)[3] == pytest.approx(1., abs = 1e-8)
	assert mismatch_weight(ticked, sign_program) == pytest.approx(0., abs = 1e-12)


def test_cross_tick_axis_convention():
	g = make_grid(-4., 4., 16)
	amps = np.zeros((4, g.n, g.n), dtype = complex)
	i1 = 12  # x1 = 2
	i2 = 8  # x2 = 0
	amps[3, i1, i2] = 1.
	state = RegisterState(g, amps / np.sqrt(g.dx ** 2))
	ticked = cross_program_tick(state)
	# C1 follows x2 = 0, hence 0; C2 follows x1 > 0, hence 1
	assert abs(ticked.amplitudes[1, i1, i2]) > 0
	assert ticked.norm() == pytest.approx(1.)


def test_cross_tick_needs_four_components(ground):
	with pytest.raises(ValueError):
		cross_program_tick(classify_init(ground, sign_program))


def test_cross_classify(grid):
	wf = product_state(grid, GaussianState(-3., 0.6), GaussianState(3., 0.6))
	state = cross_classify_init(wf, sign_program)
	# C1 = b(x2) = 1, C2 = b(x1) = 0
	assert occupancy(state)[2] == pytest.approx(1., abs = 1e-6)
	with pytest.raises(ValueError):
		cross_classify_init(gaussian_init(grid, GaussianState(0., 1.)),
				sign_program)


def test_schedule():
	spec = EvolutionSpec(0.01, 1.)
	assert TickSchedule(0.04).interval(spec) == 4
	assert TickSchedule.every(spec, 8).interval(spec) == 8
	with pytest.raises(ValueError):
		TickSchedule(0.025).interval(spec)
	with pytest.raises(ValueError):
		TickSchedule(0.005).interval(spec)
	with pytest.raises(ValueError):
		TickSchedule(0.)


def test_identical_branches_match_plain_evolution(grid):
	h = HarmonicPotential(1.)
	wf = gaussian_init(grid, GaussianState(-1., 0.7, momentum = 1.))
	spec = EvolutionSpec.auto(2., steps = 512)
	state, traj = evolve_programmed(classify_init(wf, sign_program),
			ProgrammedPair(h, h), TickSchedule.every(spec, 4), spec)
	plain, _ = evolve(wf, h, spec)
	assert np.max(np.abs(marginal(state).density() - plain.density())) < 1e-12
	assert traj.has("mismatch_weight")
	assert len(traj.ticks) == 128


def test_programmed_run_conserves_norm(grid):
	pair = displaced_pair(1., 1.)
	wf = gaussian_init(grid, GaussianState(-2.5, 1 / np.sqrt(2)))
	spec = EvolutionSpec.auto(2., steps = 512)
	state, traj = evolve_programmed(classify_init(wf, pair.program), pair,
			TickSchedule.every(spec, 8), spec)
	assert np.max(np.abs(traj.norm - 1)) < 1e-9
	assert (traj.ticks["mismatch_weight"] >= 0).all()


def test_evolve_programmed_checks_inputs(grid, ground):
	pair = displaced_pair()
	spec = EvolutionSpec.auto(1., steps = 256)
	state = classify_init(ground, pair.program)
	with pytest.raises(ValueError):
		evolve_programmed(state, pair, TickSchedule(1.5 * spec.stepSize()), spec)
	with pytest.raises(ValueError):
		evolve_cross_programmed(state, pair, TickSchedule.every(spec, 1), spec)


def _flat(x, t = 0.):
	return 0. * x


def test_halving_interval_halves_mismatch():
	# a fast packet crossing x = 0, so the weight carried across the program
	# boundary between ticks grows with the interval
	g = make_grid(-20., 20., 1024)
	wf = gaussian_init(g, GaussianState(-2., 1., momentum = 10.))
	spec = EvolutionSpec.auto(0.4, steps = 160)
	pair = ProgrammedPair(_flat, _flat)
	pre = {}
	for m in (8, 4):
		state, traj = evolve_programmed(classify_init(wf, sign_program), pair,
				TickSchedule.every(spec, m), spec)
		pre[m] = traj.ticks["mismatch_weight"].max()
		free, _ = evolve(wf, _flat, spec)
		assert fidelity(marginal(state), free) == pytest.approx(1., abs = 1e-10)
	assert 1.5 <= pre[8] / pre[4] <= 2.5


@pytest.mark.slow
def test_shorter_interval_approaches_effective_potential():
	g = make_grid(-16., 16., 1024)
	pair = displaced_pair(1., 1.)
	wf = gaussian_init(g, GaussianState(-2.5, 1 / np.sqrt(2)))
	spec = EvolutionSpec.auto(2 * np.pi, steps = 4096)
	static, _ = evolve(wf, pair.effective(), spec)
	fid = {}
	pre = {}
	for m in (64, 8, 1):
		state, traj = evolve_programmed(classify_init(wf, pair.program), pair,
				TickSchedule.every(spec, m), spec)
		fid[m] = fidelity(marginal(state), static)
		pre[m] = traj.ticks["mismatch_weight"].max()
	assert fid[1] > 0.999
	assert fid[1] >= fid[8] >= fid[64]
	assert pre[64] > pre[8] > pre[1]

# Programmed register: a packet joined to one register bit per system,
# the control tick recomputing the bits from position and the ticked
# evolution under the branch potentials.

import logging
from dataclasses import dataclass
import numpy as np
import pandas as pd
from .wavepacket import WaveFunction, NORM_TOL
from .potential import sign_program
from .propagator import evolve, _guard

logger = logging.getLogger(__name__)


class RegisterState:
	'''
	Packet amplitudes split over register values. Amplitudes have shape
	(m, n) for one system with m = 2, or (m, n, n) for two cross-programmed
	systems with m = 4, the register value being 2 C1 + C2.

	Shares the interface of WaveFunction that evolve and the observables
	rely on: density and moments are those of the position marginal,
	summed over register values.
	'''

	def __init__(self, grid, amplitudes):
		amplitudes = np.asarray(amplitudes, dtype = complex)
		shapes = {(2, grid.n): 1, (4, grid.n, grid.n): 2}
		if amplitudes.shape not in shapes:
			raise ValueError(("Register amplitudes must have shape (2, n) or "
				"(4, n, n), got {}.").format(amplitudes.shape))
		self.grid = grid
		self.amplitudes = amplitudes

	@property
	def ndim(self):
		return self.amplitudes.ndim - 1

	@property
	def components(self):
		return self.amplitudes.shape[0]

	@property
	def volume(self):
		return self.grid.dx ** self.ndim

	def coords(self):
		x = self.grid.x
		if self.ndim == 1:
			return x
		return tuple(np.meshgrid(x, x, indexing = "ij"))

	def component(self, c):
		return WaveFunction(self.grid, self.amplitudes[c])

	def density(self):
		return np.sum(np.abs(self.amplitudes) ** 2, axis = 0)

	def norm(self):
		return float(np.sum(self.density()) * self.volume)

	def withAmplitudes(self, amplitudes):
		return RegisterState(self.grid, amplitudes)

	def copy(self):
		return RegisterState(self.grid, self.amplitudes.copy())

	def __repr__(self):
		return "RegisterState(n={}, components={}, norm={:.12f})".format(
				self.grid.n, self.components, self.norm())


@dataclass(frozen = True)
class TickSchedule:
	'''
	Control interval tau_c between ticks, a whole number of time steps.
	'''
	tau_c: float

	def __post_init__(self):
		if not self.tau_c > 0:
			raise ValueError("tau_c must be positive, got {}.".format(self.tau_c))

	@classmethod
	def every(cls, spec, steps):
		return cls(steps * spec.stepSize())

	def interval(self, spec):
		'''
		Steps between ticks under the given stepping.

		Raises
		------
		ValueError
			tau_c shorter than a step or not a multiple of it.
		'''
		dt = spec.stepSize()
		ratio = self.tau_c / dt
		steps = int(round(ratio))
		if steps < 1 or abs(ratio - steps) > 1e-9 * max(1., ratio):
			raise ValueError(("tau_c = {:.6g} must be a whole multiple >= 1 of "
				"the time step {:.6g}.").format(self.tau_c, dt))
		return steps


class RegisterPotential:
	'''
	Branch potentials stacked by register value: component C of a single
	system feels pair branch C.
	'''

	isQuadratic = False

	def __init__(self, pair):
		self.pair = pair
		self.isAutonomous = (getattr(pair.v0, "isAutonomous", False) and
				getattr(pair.v1, "isAutonomous", False))

	def __call__(self, x, t = 0.):
		return np.stack([self.pair.v0(x, t), self.pair.v1(x, t)])

	def maxFrequency(self):
		return self.pair.maxFrequency()


class CrossRegisterPotential(RegisterPotential):
	'''
	Two systems sharing one pair: component (C1, C2) feels
	V(x1, C1) + V(x2, C2).
	'''

	def __call__(self, x, t = 0.):
		x1, x2 = x
		b = self.pair.branch
		return np.stack([b(c1)(x1, t) + b(c2)(x2, t)
			for c1 in (0, 1) for c2 in (0, 1)])


def _targets(state, program):
	'''
	Register value each grid point should hold: program(x) for one system,
	2 program(x2) + program(x1) for the cross-programmed pair.
	'''
	if state.components == 2:
		return _bits(program, state.grid.x)
	x1, x2 = state.coords()
	return 2 * _bits(program, x2) + _bits(program, x1)


def _bits(program, x):
	b = np.asarray(program(x))
	if b.shape != np.shape(x) or not np.all((b == 0) | (b == 1)):
		raise ValueError("Program must return one bit per position.")
	return b.astype(int)


def classify_init(wf, program):
	'''
	Route the amplitude at each x to register value program(x).

	Parameters
	----------
	wf: WaveFunction
		Normalized one dimensional state.
	program: callable
		Maps positions to bits.

	Returns
	-------
	state: RegisterState
		Two component state with the other component zero at every point.
	'''
	if wf.ndim != 1:
		raise ValueError("classify_init needs a one dimensional state; use "
				"cross_classify_init for two systems.")
	if abs(wf.norm() - 1) > NORM_TOL:
		raise ValueError("classify_init needs a normalized state, norm is {}."
				.format(wf.norm()))
	b = _bits(program, wf.grid.x)
	amps = np.zeros((2, wf.grid.n), dtype = complex)
	amps[0] = np.where(b == 0, wf.amplitudes, 0)
	amps[1] = np.where(b == 1, wf.amplitudes, 0)
	return RegisterState(wf.grid, amps)


def cross_classify_init(wf, program):
	'''
	Four component state of two systems with C1 = program(x2) and
	C2 = program(x1) at every point of the 2D grid.
	'''
	if wf.ndim != 2:
		raise ValueError("cross_classify_init needs a two dimensional state.")
	if abs(wf.norm() - 1) > NORM_TOL:
		raise ValueError("cross_classify_init needs a normalized state, norm "
				"is {}.".format(wf.norm()))
	x1, x2 = wf.coords()
	target = 2 * _bits(program, x2) + _bits(program, x1)
	amps = np.stack([np.where(target == c, wf.amplitudes, 0)
		for c in range(4)])
	return RegisterState(wf.grid, amps)


def _gather(amps, target):
	# all register values of a point summed into the target value, then one
	# common factor restoring the norm
	values = np.arange(amps.shape[0]).reshape((-1,) + (1,) * target.ndim)
	merged = np.where(values == target[None], amps.sum(axis = 0)[None], 0)
	before = np.sum(np.sum(np.abs(amps) ** 2, axis = 0))
	after = np.sum(np.sum(np.abs(merged) ** 2, axis = 0))
	if after > 0 and after != before:
		merged = merged * np.sqrt(before / after)
	return merged


def control_tick(state, program):
	'''
	Position controlled reset of the register.

	At every point the register values are gathered into program(x): the
	target value receives the sum of the components and the others are
	emptied, after which one common factor restores the norm. The position
	marginal keeps its shape, no weight is left in a value other than the
	program's, a consistent state is returned unchanged and a fully
	mismatched state is moved entirely into the program's value. Where a
	point holds a single occupied value the density at that point is kept
	as well.

	Parameters
	----------
	state: RegisterState
		One system, two components.
	program: callable
		Maps positions to bits.

	Returns
	-------
	state: RegisterState
	'''
	if state.components != 2:
		return cross_program_tick(state, program)
	return state.withAmplitudes(_gather(state.amplitudes,
		_targets(state, program)))


def cross_program_tick(state, program = sign_program):
	'''
	Tick of the cross-programmed pair: the register is reset to
	C1 = program(x2), C2 = program(x1) by the same gathering as
	control_tick. The sign program is used when none is given.
	'''
	if state.components != 4 or state.ndim != 2:
		raise ValueError("cross_program_tick needs a 4 component 2D state.")
	return state.withAmplitudes(_gather(state.amplitudes,
		_targets(state, program)))


def mismatch_weight(state, program):
	'''
	Weight held in register values other than the program's,
	sum over x of |psi_C(x)|^2 dx for C != program(x).
	'''
	target = _targets(state, program)
	values = np.arange(state.components).reshape((-1,) + (1,) * state.ndim)
	wrong = (values != target[None]) * np.abs(state.amplitudes) ** 2
	return min(float(np.sum(wrong) * state.volume), 1.)


def marginal(state):
	'''
	Position amplitude with the register erased, the sum of the components.
	Ticks change it by at most a common factor, and on a consistent state
	it is the packet itself.
	'''
	return WaveFunction(state.grid, state.amplitudes.sum(axis = 0))


def occupancy(state):
	'''
	Weight of each register value.
	'''
	w = np.abs(state.amplitudes) ** 2
	return w.reshape(state.components, -1).sum(axis = 1) * state.volume


def _run(state, potential, schedule, spec, program, tick, guard):
	every = schedule.interval(spec)
	dt = spec.stepSize()
	ticks = []

	def hook(s, t):
		i = int(round(t / dt))
		if i % every:
			return s
		ticks.append({"t": t, "mismatch_weight": mismatch_weight(s, program)})
		return tick(s, program)

	# boundary guard on the position marginal
	def observer(s, t):
		if guard is not None:
			_guard(marginal(s), t, guard)
		return {"mismatch_weight": mismatch_weight(s, program)}

	state, traj = evolve(state, potential, spec, control_hook = hook,
			observer = observer, guard = None)
	traj.ticks = pd.DataFrame(ticks, columns = ["t", "mismatch_weight"])
	logger.debug("programmed run: %d ticks every %d steps, max pre-tick "
			"mismatch %.3e", len(ticks), every,
			traj.ticks["mismatch_weight"].max() if ticks else 0.)
	return state, traj


def evolve_programmed(state, pair, schedule, spec, guard = 4.):
	'''
	Evolve a two component state with component C under pair branch C and
	a control tick every tau_c.

	Parameters
	----------
	state: RegisterState
		Initial state, usually from classify_init.
	pair: ProgrammedPair
		Branch potentials and program.
	schedule: TickSchedule
		Control interval, a whole multiple of the time step.
	spec: EvolutionSpec
		Stepping parameters.
	guard: float or None, optional
		Boundary guard, in spreads, checked on the position marginal at
		every record.

	Returns
	-------
	state: RegisterState
		Final state.
	traj: Trajectory
		Records with a mismatch_weight channel; traj.ticks holds the
		mismatch weight right before each tick.
	'''
	if state.components != 2:
		raise ValueError("evolve_programmed needs a two component state.")
	return _run(state, RegisterPotential(pair), schedule, spec, pair.program,
			control_tick, guard)


def evolve_cross_programmed(state, pair, schedule, spec, guard = 4.):
	'''
	Ticked evolution of two cross-programmed systems on the 2D grid, with
	component (C1, C2) under V(x1, C1) + V(x2, C2).
	'''
	if state.components != 4:
		raise ValueError("evolve_cross_programmed needs a four component state.")
	return _run(state, CrossRegisterPotential(pair), schedule, spec,
			pair.program, cross_program_tick, guard)

# Time evolution: split-operator integration of the Schrodinger equation,
# the closed-form gaussian center path and an expectation-value ODE used
# as an independent oracle for quadratic potentials.

import logging
from dataclasses import dataclass
import numpy as np
import pandas as pd
from scipy import fft
from scipy.integrate import quad, solve_ivp, cumulative_trapezoid
from .potential import HarmonicPotential, ControlLaw, ControlledHarmonic
from .wavepacket import (Trajectory, mean_position, second_moment, spread,
		covariance, energy, spatial_axes, k_squared)

logger = logging.getLogger(__name__)

RESOLUTION_GUARD = 0.1


class BoundaryError(RuntimeError):
	'''
	Raised when a packet comes closer to the periodic boundary than the
	guard distance during evolution.

	Attributes
	----------
	time: float
		Time of the violation.
	'''

	def __init__(self, time, message):
		super().__init__(message)
		self.time = time


@dataclass(frozen = True)
class EvolutionSpec:
	'''
	Time stepping parameters.

	Attributes
	----------
	dt: float
		Requested time step. It is shortened slightly when needed so that
		a whole number of steps lands exactly on t_final.
	t_final: float
		Horizon T.
	record_every: int, optional
		Steps between records, default is 8.
	'''
	dt: float
	t_final: float
	record_every: int = 8

	def __post_init__(self):
		if not self.dt > 0:
			raise ValueError("dt must be positive, got {}.".format(self.dt))
		if self.t_final < 0:
			raise ValueError("t_final must be >= 0, got {}.".format(self.t_final))
		if self.t_final > 0 and self.dt > self.t_final * (1 + 1e-12):
			raise ValueError("dt ({}) exceeds t_final ({}).".format(
				self.dt, self.t_final))
		if int(self.record_every) != self.record_every or self.record_every < 1:
			raise ValueError("record_every must be a positive integer, got {}."
					.format(self.record_every))

	@classmethod
	def auto(cls, t_final, steps = 4096, record_every = 8):
		'''
		Default stepping, dt = T / 4096 recorded every 8 steps.
		'''
		return cls(t_final / steps if t_final > 0 else 1., t_final, record_every)

	def steps(self):
		if self.t_final == 0:
			return 0
		return int(np.ceil(self.t_final / self.dt * (1 - 1e-12)))

	def stepSize(self):
		n = self.steps()
		return self.t_final / n if n else self.dt

	def isRecorded(self, i):
		'''
		Whether the state after step i (counting from 1) is recorded.
		'''
		return i % self.record_every == 0 or i == self.steps()

	def time(self, i):
		'''
		Time after step i, t_final exactly after the last step.
		'''
		n = self.steps()
		if n == 0:
			return 0. * np.asarray(i, dtype = float)
		return self.t_final * (np.asarray(i, dtype = float) / n)

	def recordTimes(self):
		n = self.steps()
		idx = [0] + [i for i in range(1, n + 1) if self.isRecorded(i)]
		return self.time(np.array(idx))

	def checkResolution(self, omegaMax):
		'''
		Reject steps too coarse for the largest frequency in play. A zero
		horizon takes no step and passes.
		'''
		if self.steps() == 0:
			return
		if omegaMax is not None and self.stepSize() * omegaMax >= RESOLUTION_GUARD:
			raise ValueError(("Time step {:.4g} too coarse for frequency {:.4g}: "
				"dt * omega must stay below {}.").format(
					self.stepSize(), omegaMax, RESOLUTION_GUARD))


def kinetic_phase(grid, ndim, dt):
	'''
	exp(-i k^2 dt / 2) on the spectral grid.
	'''
	return np.exp(-0.5j * k_squared(grid, ndim) * dt)


def _split(amps, axes, half, vphase):
	phi = fft.ifftn(half * fft.fftn(amps, axes = axes), axes = axes)
	phi = phi * vphase
	return fft.ifftn(half * fft.fftn(phi, axes = axes), axes = axes)


def step(wf, potential, t, dt):
	'''
	One Strang step: half kinetic, full potential phase sampled at
	t + dt/2, half kinetic.

	Parameters
	----------
	wf: WaveFunction or RegisterState
		State at time t. Leading axes beyond the spatial ones are register
		components and are stepped independently.
	potential: callable
		Evaluable potential, potential(coords, t). For register states it
		returns one potential per component stacked along the first axis.
	t: float
		Current time.
	dt: float
		Step size.

	Returns
	-------
	wf: same type as input
		State at t + dt.
	'''
	half = kinetic_phase(wf.grid, wf.ndim, dt / 2)
	vphase = np.exp(-1j * potential(wf.coords(), t + dt / 2) * dt)
	return wf.withAmplitudes(_split(wf.amplitudes, spatial_axes(wf),
		half, vphase))


def _observe(wf, potential, t):
	row = {"t": t,
		"mean_x": mean_position(wf),
		"sigma": spread(wf),
		"norm": wf.norm(),
		"energy": energy(wf, potential, t)}
	if wf.ndim == 2:
		row["mean_x2"] = mean_position(wf, 1)
		row["covariance"] = covariance(wf)
	return row


def _guard(wf, t, distance):
	grid = wf.grid
	for axis in range(wf.ndim):
		mu = mean_position(wf, axis)
		s = spread(wf, axis)
		if not grid.contains(mu - distance * s, mu + distance * s):
			raise BoundaryError(t, ("Packet within {} spreads of the boundary at "
				"t = {:.6g} (mean {:.4g}, spread {:.4g}, domain [{:.4g}, {:.4g}])."
				).format(distance, t, mu, s, grid.x_min, grid.x_max))


def evolve(wf, potential, spec, control_hook = None, observer = None,
		guard = 4.):
	'''
	Repeated Strang steps with observables recorded every
	spec.record_every steps.

	Parameters
	----------
	wf: WaveFunction or RegisterState
		Initial state.
	potential: callable
		Evaluable potential.
	spec: EvolutionSpec
		Stepping parameters.
	control_hook: callable, optional
		Called as control_hook(state, t) after every step and after the
		record of that step, returning the state to continue with.
	observer: callable, optional
		Called as observer(state, t) at every record, returning extra
		columns for the record.
	guard: float or None, optional
		Minimum distance, in spreads, between the packet and the domain
		boundary, checked at every record. None disables the check.

	Returns
	-------
	wf: same type as input
		Final state.
	traj: Trajectory
		Records, with force expectation and accumulated cost
		int <F_c^2> dt when the potential carries a control law.
	'''
	spec.checkResolution(getattr(potential, "maxFrequency", lambda: None)())
	n = spec.steps()
	dt = spec.stepSize()
	autonomous = getattr(potential, "isAutonomous", False)
	controlled = hasattr(potential, "forceSquareExpect") and wf.ndim == 1
	axes = spatial_axes(wf)
	coords = wf.coords()
	half = kinetic_phase(wf.grid, wf.ndim, dt / 2)
	if autonomous:
		vphase = np.exp(-1j * potential(coords, 0.) * dt)
	logger.debug("evolve: %d steps of %.6g, record every %d", n, dt,
			spec.record_every)

	rows = []
	cost = [0.]

	def record(state, t):
		if guard is not None:
			_guard(state, t, guard)
		row = _observe(state, potential, t)
		if controlled:
			m = row["mean_x"]
			row["force_expect"] = float(potential.forceExpect(m, t))
			f2 = float(potential.forceSquareExpect(m, second_moment(state), t))
			if rows:
				cost[0] += 0.5 * (rows[-1]["_f2"] + f2) * (t - rows[-1]["t"])
			row["_f2"] = f2
		else:
			row["force_expect"] = 0.
		row["cost_accum"] = cost[0]
		if observer is not None:
			row.update(observer(state, t))
		rows.append(row)

	record(wf, 0.)
	amps = wf.amplitudes
	for i in range(1, n + 1):
		t0 = float(spec.time(i - 1))
		if not autonomous:
			vphase = np.exp(-1j * potential(coords, t0 + dt / 2) * dt)
		amps = _split(amps, axes, half, vphase)
		t = float(spec.time(i))
		if spec.isRecorded(i) or control_hook is not None:
			wf = wf.withAmplitudes(amps)
		if spec.isRecorded(i):
			record(wf, t)
		if control_hook is not None:
			wf = control_hook(wf, t)
			amps = wf.amplitudes
	wf = wf.withAmplitudes(amps)
	data = pd.DataFrame(rows).drop(columns = ["_f2"], errors = "ignore")
	return wf, Trajectory(data, autonomous = autonomous)


def _omega(omega, k):
	w2 = omega ** 2 + k
	if w2 <= 0:
		raise ValueError("Unbound oscillator: omega^2 + k = {} must be positive."
				.format(w2))
	return np.sqrt(w2)


def analytic_center(p0, omega, k, force, T):
	'''
	Center of a gaussian packet at time T under a uniform force f(t),
	p(T) = p0 cos(Omega T) + (1/Omega) int_0^T f(t) sin(Omega (T-t)) dt,
	with Omega = sqrt(omega^2 + k). The packet starts at rest.

	Parameters
	----------
	p0: float
		Initial center.
	omega: float
		Oscillator frequency.
	k: float
		Spring modification.
	force: callable or None
		Force profile f(t); None means no force.
	T: float
		Time.

	Returns
	-------
	p: float
	'''
	W = _omega(omega, k)
	p = p0 * np.cos(W * T)
	if force is None or T == 0:
		return float(p)
	points = None
	if hasattr(force, "times"):
		points = [s for s in force.times if 0 < s < T] or None
	val, err = quad(lambda t: force(t) * np.sin(W * (T - t)), 0, T,
			epsabs = 1e-13, epsrel = 1e-12, limit = 400, points = points)
	return float(p + val / W)


def analytic_spread(sigma0, Omega, t):
	'''
	Width of an initially real gaussian under a fixed frequency Omega,
	sigma(t)^2 = sigma0^2 cos^2(Omega t) + sin^2(Omega t) / (4 sigma0^2 Omega^2).
	'''
	if not sigma0 > 0 or not Omega > 0:
		raise ValueError("sigma0 and Omega must be positive.")
	t = np.asarray(t, dtype = float)
	s2 = (sigma0 ** 2 * np.cos(Omega * t) ** 2 +
			np.sin(Omega * t) ** 2 / (4 * sigma0 ** 2 * Omega ** 2))
	return np.sqrt(s2)


def _checkQuadratic(h, c):
	if not isinstance(h, HarmonicPotential) or not isinstance(c, ControlLaw):
		raise ValueError("The expectation oracle is exact only for a harmonic "
				"potential under a ControlLaw.")
	return _omega(h.omega, c.spring())


def solve_expectation(p0, v0, h, c, T, t_eval = None):
	'''
	scipy.integrate.solve_ivp solution of the center's equation of motion
	over [0, T], with dense output.
	'''
	W = _checkQuadratic(h, c)

	def rhs(t, y):
		acc = (-W ** 2 * y[0] + c.uniformForce(t) + c.external(t))
		return [y[1], acc]

	max_step = np.pi / (8 * W)
	return solve_ivp(rhs, (0., T), [p0, v0], method = "RK45", t_eval = t_eval,
			dense_output = True, rtol = 1e-11, atol = 1e-12, max_step = max_step)


def ehrenfest_path(p0, v0, h, c, spec, sigma0 = None):
	'''
	Integrate the expectation dynamics
	p'' = -(omega^2 + k + alpha) p + alpha p_ref(t) + f(t) + drive(t),
	exact for quadratic-plus-linear potentials.

	Parameters
	----------
	p0: float
		Initial center.
	v0: float
		Initial mean velocity.
	h: HarmonicPotential
		Bare oscillator, anything else is rejected.
	c: ControlLaw
		Controller parameters.
	spec: EvolutionSpec
		Horizon and record schedule, matching a grid run's records.
	sigma0: float, optional
		Initial spread of a real gaussian. When given the record also has
		the spread channel and the control cost.

	Returns
	-------
	traj: Trajectory
	'''
	times = spec.recordTimes()
	if spec.t_final == 0:
		mean = np.array([p0], dtype = float)
	else:
		sol = solve_expectation(p0, v0, h, c, spec.t_final, times)
		mean = sol.y[0]
	data = pd.DataFrame({"t": times, "mean_x": mean})
	if sigma0 is not None:
		pot = ControlledHarmonic(h, c)
		sig = analytic_spread(sigma0, pot.frequency(), times)
		f2 = pot.forceSquareExpect(mean, sig ** 2 + mean ** 2, times)
		data["sigma"] = sig
		data["force_expect"] = pot.forceExpect(mean, times)
		data["cost_accum"] = cumulative_trapezoid(f2, times, initial = 0.)
	return Trajectory(data, autonomous = c.isAutonomous())


class ControlledHarmonicMoments:
	'''
	First and second position moments of a gaussian packet under a
	harmonic potential and control law, as continuous functions of time:
	the center from the expectation ODE, the width from analytic_spread.
	'''

	def __init__(self, h, c, p0 = 0., v0 = 0., sigma0 = None, T = None):
		self.potential = ControlledHarmonic(h, c)
		self.sigma0 = sigma0
		self.sol = None
		if T is not None and T > 0:
			self.sol = solve_expectation(p0, v0, h, c, T)
		self.p0 = p0

	def frequency(self):
		return self.potential.frequency()

	def mean(self, t):
		if self.sol is None:
			return self.p0 + 0. * np.asarray(t, dtype = float)
		return self.sol.sol(t)[0]

	def second(self, t):
		s = analytic_spread(self.sigma0, self.frequency(), t)
		return s ** 2 + self.mean(t) ** 2


def gaussian_moments(p0, sigma0, h, c, T, v0 = 0.):
	'''
	Moments (mean, second moment) of a real gaussian packet over [0, T]
	as callables of time.
	'''
	return ControlledHarmonicMoments(h, c, p0, v0, sigma0, T)

# Numerical invariants of the propagator and the stability criteria on
# recorded runs.

import numpy as np
from .analysis import Scenario
from .process import SignalProc
from .wavepacket import GaussianState, WaveFunction, gaussian_init, \
		excess_kurtosis
from .potential import HarmonicPotential, ControlLaw, ControlledHarmonic, \
		Drive
from .propagator import EvolutionSpec, evolve, step, ehrenfest_path
from .synthesis import SteeringProblem, open_loop_law, feedback_law
from .stability import LyapunovSpec, energy_drift, lyapunov_verify

LONG_RUN_STEPS = 10000
REFINEMENT_STEPS = (512, 1024)
CONVERGENCE_STEPS = (64, 128)
CONVERGENCE_REFERENCE = 4096
TAIL_START = 0.6


class StabilitySuite(SignalProc, Scenario):
	'''
	Energy conservation, Lyapunov descent and convergence checks.
	'''

	def __init__(self, projMan = None):
		SignalProc.__init__(self)
		Scenario.__init__(self, projMan)

	def loadDefault(self, name):
		'''
		Override parent class method.
		'''
		default = {
				"physics": {"omega_true": 1.,
					"p0": 1.,
					"p_hat": 5.,
					"T": 5.,
					"alpha": 10.,
					"k": 0.5,
					"sigma0": None,
					"drive": {"amplitude": 0.05, "freq": 1.2}},
				"numerics": {"grid_n": 1024,
					"domain": "auto",
					"dt": "auto",
					"steps": 4096,
					"record_every": 8},
				"programmed": {}}
		return default[name]

	def profile(self):
		'''
		Override parent class method.
		'''
		prof = [
			{"name": "stability-suite",
				"description": "Energy drift, dt convergence, norm conservation, "
					"linearity and Lyapunov descent checks.",
				"foo": self.stabilitySuite,
				"suite": "stability",
				"param": {}}]
		return prof

	def stabilitySuite(self):
		p = self.physics
		w = p.omega_true
		h = HarmonicPotential(w)
		sigma0 = self.sigma0()
		spring = ControlledHarmonic(h, ControlLaw(k = p.k))
		period = float(2 * np.pi / spring.frequency())
		law = open_loop_law(SteeringProblem(w, p.p0, p.p_hat, p.T))
		oracle = ehrenfest_path(p.p0, 0., h, law, EvolutionSpec.auto(p.T))
		grid = self.grid(max(abs(p.p0), float(np.max(np.abs(oracle.mean_x)))),
				sigma0)
		ground = gaussian_init(grid, GaussianState(0., sigma0))
		displaced = gaussian_init(grid, GaussianState(p.p0, sigma0))
		spec = self.evolution(period)
		self.energyChecks(h, spring, ground, displaced, spec, period)
		self.lyapunovChecks(h, spring, ground, displaced, spec)
		self.convergenceCheck(h, law, displaced)
		self.invariantChecks(spring, displaced, period)

	def energyChecks(self, h, spring, ground, displaced, spec, period):
		'''
		Drift of the ground state under h and of a displaced packet under a
		fixed spring, second order refinement, and the driven run marked not
		applicable.
		'''
		p = self.physics
		_, traj = evolve(ground, h, spec)
		drift = energy_drift(traj)
		self.check("ground_drift", drift.value, drift.value < 1e-8,
				"ground state energy drift < 1e-8")
		wf, traj = evolve(displaced, spring, spec)
		drift = energy_drift(traj)
		self.check("displaced_drift", drift.value, drift.value < 1e-6,
				"displaced packet drift over one period < 1e-6")
		kurt = abs(excess_kurtosis(wf))
		self.check("gaussian_closure", kurt, kurt < 1e-3,
				"|excess kurtosis| < 1e-3 under a quadratic potential")
		self.final("displaced_drift", drift.value)
		self.plt(traj, "energy", label = "displaced_energy")
		coarse, fine = (energy_drift(evolve(displaced, spring, EvolutionSpec(
			period / n, period, spec.record_every))[1]).value
			for n in REFINEMENT_STEPS)
		ratio = coarse / fine if fine > 0 else np.inf
		self.check("drift_refinement", ratio, ratio >= 3,
				"energy drift ratio >= 3 when dt halves")
		driven = ControlledHarmonic(h, ControlLaw(drive = Drive(
			p.drive.amplitude, p.drive.freq)))
		_, traj = evolve(displaced, driven, spec)
		drift = energy_drift(traj)
		self.check("driven_not_applicable", drift.value, not drift.applicable,
				"driven run flagged as non-autonomous")

	def lyapunovChecks(self, h, spring, ground, displaced, spec):
		'''
		Distance to the target on the matched feedback tail, the energy on an
		autonomous run, a sign-reversed candidate and a constant.
		'''
		p = self.physics
		prob = SteeringProblem(p.omega_true, p.p0, p.p_hat, p.T)
		steer = EvolutionSpec(p.T / self.numerics.steps, p.T,
				self.numerics.record_every)
		path = ehrenfest_path(p.p0, 0., h, feedback_law(prob, p.alpha), steer)
		target = LyapunovSpec(lambda o, t: (o["mean_x"] - p.p_hat) ** 2,
				equilibrium = p.p_hat)
		report = lyapunov_verify(target, path, start = TAIL_START * p.T)
		self.check("lyapunov_feedback_tail", report.max_derivative,
				report.passed, "(<x> - p_hat)^2 non-increasing on the tail")
		self.plt(path, label = "feedback_path")
		e0 = 0.5 * p.omega_true
		_, traj = evolve(ground, h, spec)
		report = lyapunov_verify(LyapunovSpec(lambda o, t: o["energy"] - e0,
			equilibrium = {"energy": e0}), traj)
		self.check("lyapunov_energy", report.max_derivative, report.passed,
				"energy candidate on an autonomous run")
		_, traj = evolve(displaced, spring, spec)
		report = lyapunov_verify(LyapunovSpec(lambda o, t: -o["mean_x"] ** 2),
				traj)
		self.check("lyapunov_bad_candidate", report.violations,
				report.violations > 0, "-<x>^2 reports violations")
		report = lyapunov_verify(LyapunovSpec(lambda o, t: 0.), traj)
		self.check("lyapunov_constant", report.violations, report.passed,
				"constant candidate has no violations")

	def convergenceCheck(self, h, law, wf0):
		'''
		Endpoint error of the open loop steering run against a fine step run
		on the same grid, for two step counts.
		'''
		p = self.physics
		pot = ControlledHarmonic(h, law)

		def endpoint(n):
			return evolve(wf0, pot, EvolutionSpec(p.T / n, p.T, n))[1].final()

		ref = endpoint(CONVERGENCE_REFERENCE)
		coarse, fine = (abs(endpoint(n) - ref) for n in CONVERGENCE_STEPS)
		ratio = coarse / fine if fine > 0 else np.inf
		self.check("second_order", ratio, ratio >= 3,
				"endpoint error ratio >= 3 when dt halves")
		self.final("endpoint_error_coarse", coarse)
		self.final("endpoint_error_fine", fine)

	def invariantChecks(self, spring, displaced, period):
		'''
		Norm over a long run and linearity of one step on a random
		superposition.
		'''
		spec = EvolutionSpec(period / LONG_RUN_STEPS, period, 100)
		_, traj = evolve(displaced, spring, spec)
		dev = float(np.max(np.abs(traj.norm - traj.norm[0])))
		self.check("norm_drift", dev, dev < 1e-9,
				"norm drift over {} steps < 1e-9".format(LONG_RUN_STEPS))
		seed = self.config.seed if self.config is not None else None
		rng = np.random.default_rng(seed)
		grid = displaced.grid
		a = WaveFunction(grid, rng.normal(size = grid.n) +
				1j * rng.normal(size = grid.n)).normalized()
		b = displaced
		ca, cb = rng.normal(size = 2) + 1j * rng.normal(size = 2)
		dt = spec.stepSize()
		both = step(WaveFunction(grid, ca * a.amplitudes + cb * b.amplitudes),
				spring, 0., dt)
		apart = (ca * step(a, spring, 0., dt).amplitudes +
				cb * step(b, spring, 0., dt).amplitudes)
		err = float(np.max(np.abs(both.amplitudes - apart)))
		self.check("linearity", err, err < 1e-12,
				"one step is linear to 1e-12")
		self.final("norm_drift", dev)

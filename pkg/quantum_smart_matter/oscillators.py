# Oscillators whose behavior is reshaped by control: coupled pairs and
# their correlations, detuning toward a drive and width manipulation.

import numpy as np
import pandas as pd
from .analysis import Scenario
from .process import SignalProc
from .wavepacket import GaussianState, Trajectory, gaussian_init, \
		product_state, covariance, excess_kurtosis
from .potential import HarmonicPotential, ControlLaw, ControlledHarmonic, \
		Drive, TabulatedForce, normal_modes, coupled_ground_state
from .propagator import evolve, ehrenfest_path, analytic_spread
from .synthesis import coupling_law, detuned_frequency, driven_response

CORRELATION_COUPLINGS = (0., 0.5)
RESONANCE_FREQUENCIES = (1.0, 1.1, 1.19)
UNIFORM_FORCE = 0.5


class Oscillators(SignalProc, Scenario):
	'''
	Presets on coupled, detuned and width-controlled oscillators.
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
					"p0": 0.,
					"T": 4 * np.pi,
					"k": 0.,
					"coupling_k": 0.,
					"sigma0": None,
					"drive": {"amplitude": 0., "freq": 1.2}},
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
			{"name": "coupled-correlation",
				"description": "Coupling k(x2 - x1): normal mode frequencies and "
					"ground state position correlation of two oscillators.",
				"foo": self.coupledCorrelation,
				"suite": "oscillators",
				"param": {"physics": {"coupling_k": 1.5, "p0": 1.5},
					"numerics": {"grid_n": 256}}},
			{"name": "resonance-shift",
				"description": "Spring k tunes Omega toward a drive at 1.2; the "
					"response amplitude grows as Omega approaches it.",
				"foo": self.resonanceShift,
				"suite": "oscillators",
				"param": {"physics": {"T": 60.,
					"drive": {"amplitude": 0.05, "freq": 1.2}}}},
			{"name": "width-control",
				"description": "A fixed spring makes the packet width oscillate; "
					"a uniform force leaves it unchanged.",
				"foo": self.widthControl,
				"suite": "oscillators",
				"param": {"physics": {"k": 3., "T": 2 * np.pi}}}]
		return prof

	def coupledCorrelation(self):
		'''
		Ground state covariance over couplings, and mode frequencies measured
		from displaced packets.
		'''
		p = self.physics
		w = p.omega_true
		k = p.coupling_k
		a = p.p0
		sigma0 = self.sigma0()
		grid = self.grid(abs(a), sigma0)
		pot = coupling_law(k).induced(w)
		w1, w2 = normal_modes(pot)
		rows = []
		for kk in sorted(set(CORRELATION_COUPLINGS + (k,))):
			c = coupling_law(kk).induced(w)
			m1, m2 = normal_modes(c)
			rows.append({"k": kk, "covariance": covariance(
				coupled_ground_state(grid, c)), "oracle": 0.25 * (1 / m1 - 1 / m2)})
		table = pd.DataFrame(rows)
		self.tables["ground_covariance"] = table
		cov = table["covariance"].to_numpy()
		self.check("covariance_increasing", np.min(np.diff(cov)),
				bool(np.all(np.diff(cov) > 0)), "covariance strictly increasing in k")
		last = table.iloc[-1]
		err = abs(last["covariance"] - last["oracle"])
		self.check("ground_covariance", last["covariance"], err <= 0.005,
				"within 0.005 of {:.6g}".format(last["oracle"]))
		spec = self.evolution(p.T)
		for name, sign, omega in (("mode_1", 1., w1), ("mode_2", -1., w2)):
			wf0 = product_state(grid, GaussianState(a, sigma0),
					GaussianState(sign * a, sigma0))
			_, traj = evolve(wf0, pot, spec)
			amp, freq, phase, offset = self.oscillationFit(traj.times, traj.mean_x)
			rel = abs(freq / omega - 1)
			self.check(name + "_frequency", freq, rel <= 0.01,
					"within 1% of {:.6g}".format(omega))
			self.final(name + "_frequency", freq)
			self.plt(traj, label = name)
			self.plt(traj, "covariance", label = name + "_covariance")
		self.final("ground_covariance", last["covariance"])

	def resonanceShift(self):
		'''
		Peak response to the drive as k moves Omega toward its frequency.
		'''
		p = self.physics
		w = p.omega_true
		drive = Drive(p.drive.amplitude, p.drive.freq)
		h = HarmonicPotential(w)
		spec = self.evolution(p.T)
		rows = []
		paths = []
		for Omega in RESONANCE_FREQUENCIES:
			k = Omega ** 2 - w ** 2
			law = ControlLaw(k = k, drive = drive)
			path = ehrenfest_path(p.p0, 0., h, law, spec, self.sigma0())
			paths.append((k, law, path))
			rows.append({"Omega": detuned_frequency(w, k), "k": k,
				"amplitude": driven_response(w, k, drive, p.T, p.p0),
				"record_peak": self.peakAmplitude(path.times, path.mean_x),
				"steady_state": abs(drive.amplitude / (Omega ** 2 - drive.freq ** 2))})
			self.plt(path, label = "Omega_{:g}".format(Omega))
		table = pd.DataFrame(rows)
		self.tables["response"] = table
		amp = table["amplitude"].to_numpy()
		self.check("amplitude_increasing", np.min(np.diff(amp)),
				bool(np.all(np.diff(amp) > 0)),
				"peak |<x>| strictly increasing as Omega approaches the drive")
		k, law, path = paths[-1]
		sigma0 = self.sigma0()
		grid = self.grid(path.mean_x.max() - path.mean_x.min() + abs(p.p0), sigma0)
		wf0 = gaussian_init(grid, GaussianState(p.p0, sigma0))
		_, traj = evolve(wf0, ControlledHarmonic(h, law), spec)
		peak = self.peakAmplitude(traj.times, traj.mean_x)
		d = abs(peak - table["record_peak"].iloc[-1])
		self.check("grid_response", d, d <= 0.02,
				"grid peak within 0.02 of the ODE peak")
		self.plt(traj, label = "grid_Omega_{:g}".format(RESONANCE_FREQUENCIES[-1]))
		for r in rows:
			self.final("amplitude_Omega_{:g}".format(r["Omega"]), r["amplitude"])

	def widthControl(self):
		'''
		Width of a ground state packet under a fixed spring k and under a
		uniform force.
		'''
		p = self.physics
		w = p.omega_true
		h = HarmonicPotential(w)
		sigma0 = self.sigma0()
		spring = ControlLaw(k = p.k)
		Omega = ControlledHarmonic(h, spring).frequency()
		uniform = ControlLaw(force = TabulatedForce([0., p.T],
			[UNIFORM_FORCE, UNIFORM_FORCE]))
		spec = self.evolution(p.T)
		reach = abs(p.p0) + 2 * UNIFORM_FORCE / w ** 2
		grid = self.grid(reach, sigma0)
		wf0 = gaussian_init(grid, GaussianState(p.p0, sigma0))
		wf_k, t_k = evolve(wf0, ControlledHarmonic(h, spring), spec)
		wf_f, t_f = evolve(wf0, ControlledHarmonic(h, uniform), spec)
		s_an = analytic_spread(sigma0, Omega, t_k.times)
		d = float(np.max(np.abs(t_k.spread - s_an)))
		self.check("spring_width", d, d <= 1e-3,
				"grid spread within 1e-3 of the closed form")
		d = float(np.max(np.abs(t_f.spread - sigma0)))
		self.check("uniform_width", d, d <= 1e-3,
				"uniform force keeps the spread within 1e-3 of sigma0")
		kurt = max(abs(excess_kurtosis(wf_k)), abs(excess_kurtosis(wf_f)))
		self.check("gaussian_closure", kurt, kurt < 1e-3,
				"|excess kurtosis| < 1e-3")
		self.final("min_spread", float(t_k.spread.min()))
		self.final("max_spread", float(t_k.spread.max()))
		self.final("Omega", Omega)
		self.plt(t_k, "sigma", label = "spring")
		self.plt(t_f, "sigma", label = "uniform")
		self.plt(Trajectory(pd.DataFrame({"t": t_k.times, "mean_x": t_k.mean_x,
			"sigma": s_an})), "sigma", label = "analytic")

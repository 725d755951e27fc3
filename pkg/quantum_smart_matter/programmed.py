# Programmed potentials: a packet joined to register bits that a control
# tick recomputes from position, compared with the static effective
# potential it approximates.

import numpy as np
import pandas as pd
from .analysis import Scenario
from .process import SignalProc
from .wavepacket import GaussianState, gaussian_init, product_state, fidelity
from .potential import displaced_pair
from .propagator import evolve
from .register import TickSchedule, classify_init, cross_classify_init, \
		cross_program_tick, evolve_programmed, evolve_cross_programmed, \
		marginal, mismatch_weight, occupancy

SCALING_PAIR = (64, 32)
GROWTH_PAIR = (8, 1)
# largest spread of the ticked packets, in initial widths
SPREAD_ALLOWANCE = 2.
MONOTONE_TOL = 1e-6


class Programmed(SignalProc, Scenario):
	'''
	Presets on the programmed pair of displaced harmonic branches.
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
					"p0": -2.5,
					"T": 2 * np.pi,
					"sigma0": None},
				"numerics": {"grid_n": 1024,
					"domain": "auto",
					"dt": "auto",
					"steps": 4096,
					"record_every": 8},
				"programmed": {"branch_offset": 1.,
					"tau_c": "auto",
					"tick_multiples": [64, 32, 16, 8, 4, 1]}}
		return default[name]

	def profile(self):
		'''
		Override parent class method.
		'''
		prof = [
			{"name": "programmed-effective",
				"description": "Ticked register evolution under two displaced "
					"branches approaches the static effective potential as the "
					"control interval shrinks.",
				"foo": self.programmedEffective,
				"suite": "programmed",
				"param": {}},
			{"name": "programmed-coupled",
				"description": "Two systems whose register bits are set from the "
					"sign of the other's position, on a 2D grid.",
				"foo": self.programmedCoupled,
				"suite": "programmed",
				"param": {"numerics": {"grid_n": 256, "steps": 2048}}}]
		return prof

	def _pair(self):
		return displaced_pair(self.physics.omega_true,
				self.programmed.branch_offset)

	def _schedule(self, spec):
		'''
		Configured control interval and its multiple of the time step.
		'''
		tau_c = self.programmed.tau_c
		if tau_c == "auto":
			schedule = TickSchedule.every(spec, 1)
		else:
			schedule = TickSchedule(tau_c)
		m = schedule.interval(spec)
		self.resolve("programmed.tau_c", schedule.tau_c)
		return schedule, m

	def programmedEffective(self):
		'''
		Static effective potential run as the oracle, and ticked runs over
		the control intervals.
		'''
		p = self.physics
		d = self.programmed.branch_offset
		pair = self._pair()
		sigma0 = self.sigma0()
		grid = self.grid(abs(p.p0) + 2 * d, SPREAD_ALLOWANCE * sigma0)
		spec = self.evolution(p.T)
		_, m = self._schedule(spec)
		wf0 = gaussian_init(grid, GaussianState(p.p0, sigma0))
		static, t_static = evolve(wf0, pair.effective(), spec)
		self.plt(t_static, label = "static")
		multiples = sorted(set(self.programmed.tick_multiples) |
				set(SCALING_PAIR) | set(GROWTH_PAIR) | {m}, reverse = True)
		rows = []
		norm_dev = 0.
		for mm in multiples:
			state = classify_init(wf0, pair.program)
			state, traj = evolve_programmed(state, pair,
					TickSchedule.every(spec, mm), spec)
			pre = traj.ticks["mismatch_weight"]
			rows.append({"tick_multiple": mm, "tau_c": mm * spec.stepSize(),
				"fidelity": fidelity(marginal(state), static),
				"max_pretick_mismatch": float(pre.max()) if len(pre) else 0.,
				"ticks": len(pre)})
			norm_dev = max(norm_dev, float(np.max(np.abs(traj.norm - 1))))
			if mm in (m, max(multiples)):
				self.plt(traj, label = "tau_{}dt".format(mm))
				self.plt(traj, "mismatch_weight",
						label = "mismatch_tau_{}dt".format(mm))
			self.prt("tau_c = {} dt: fidelity {:.8f}, max pre-tick mismatch "
					"{:.3e}".format(mm, rows[-1]["fidelity"],
						rows[-1]["max_pretick_mismatch"]))
		table = pd.DataFrame(rows)
		self.tables["schedules"] = table
		by = table.set_index("tick_multiple")
		fid = by.loc[m, "fidelity"]
		self.check("fidelity_limit", fid, fid > 0.999,
				"fidelity at tau_c = {} dt > 0.999".format(m))
		# rows run from the longest interval to the shortest
		steps = np.diff(table["fidelity"].to_numpy())
		self.check("fidelity_monotone", steps.min() if len(steps) else 0.,
				bool(np.all(steps >= -MONOTONE_TOL)),
				"fidelity non-decreasing as tau_c shrinks, within {:g}".format(
					MONOTONE_TOL))
		hi, lo = (by.loc[g, "max_pretick_mismatch"] for g in GROWTH_PAIR)
		self.check("mismatch_growth", hi - lo, hi > lo,
				"max pre-tick mismatch at {} dt above {} dt".format(*GROWTH_PAIR))
		hi, lo = (by.loc[g, "max_pretick_mismatch"] for g in SCALING_PAIR)
		ratio = hi / lo if lo > 0 else np.inf
		self.check("mismatch_scaling", ratio, 1.5 <= ratio <= 2.5,
				"halving tau_c halves the pre-tick mismatch within 25%")
		self.check("norm", norm_dev, norm_dev < 1e-9, "max |norm - 1| < 1e-9")
		self.final("fidelity", fid)
		self.final("static_mean_x", t_static.final())
		for r in rows:
			self.final("fidelity_tau_{}dt".format(r["tick_multiple"]),
					r["fidelity"])

	def programmedCoupled(self):
		'''
		Cross-programmed pair: system 1 starts displaced, system 2 at rest in
		its branch; each system's potential follows the other's sign.
		'''
		p = self.physics
		d = self.programmed.branch_offset
		pair = self._pair()
		sigma0 = self.sigma0()
		grid = self.grid(abs(p.p0) + 4 * d, SPREAD_ALLOWANCE * sigma0)
		spec = self.evolution(p.T)
		schedule, m = self._schedule(spec)
		wf0 = product_state(grid, GaussianState(p.p0, sigma0),
				GaussianState(-d, sigma0))
		state = cross_classify_init(wf0, pair.program)
		state, traj = evolve_cross_programmed(state, pair, schedule, spec)
		norm_dev = float(np.max(np.abs(traj.norm - 1)))
		self.check("norm_conserved", norm_dev, norm_dev < 1e-9,
				"max |norm - 1| < 1e-9")
		ticked = cross_program_tick(state, pair.program)
		left = mismatch_weight(ticked, pair.program)
		self.check("tick_consistent", left, left <= 1e-15,
				"no weight outside the programmed register values after a tick")
		m0 = marginal(state).amplitudes
		m1 = marginal(ticked).amplitudes
		c = np.vdot(m0, m1) / np.vdot(m0, m0)
		dm = float(np.max(np.abs(m1 - c * m0)) / np.max(np.abs(m0)))
		self.check("tick_marginal_kept", dm, dm <= 1e-12,
				"position marginal unchanged by a tick up to a common factor")
		occ = occupancy(state)
		ds = abs(float(occ.sum()) - state.norm())
		self.check("occupancy_sum", ds, ds <= 1e-12,
				"register weights sum to the norm")
		cov = traj.channel("covariance")
		peak = float(np.max(np.abs(cov)))
		self.check("program_correlation", peak, peak > 1e-3,
				"max |covariance| > 1e-3")
		for c, w in enumerate(occ):
			self.final("occupancy_{}{}".format(c // 2, c % 2), w)
		self.final("covariance", traj.final("covariance"))
		self.final("mean_x", traj.final())
		self.final("mean_x2", traj.final("mean_x2"))
		self.plt(traj, label = "system_1")
		self.plt(traj, "mean_x2", label = "system_2")
		self.plt(traj, "covariance", label = "covariance")
		self.plt(traj, "mismatch_weight", label = "mismatch")

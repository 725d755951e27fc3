# Base class defining common methods for scenario classes.

import copy
import logging
from dataclasses import dataclass
import numpy as np
from .wavepacket import make_grid
from .propagator import EvolutionSpec
from .project import Project
from . import plot

logger = logging.getLogger(__name__)


@dataclass
class Check:
	'''
	One pass/fail criterion attached to a scenario run.

	Attributes
	----------
	name: str
		Criterion name, unique within a run.
	value: float
		Measured value.
	target: str
		Human readable pass condition.
	passed: bool
	'''
	name: str
	value: float
	target: str
	passed: bool

	def asDict(self):
		return {"name": self.name, "value": float(self.value),
			"target": self.target, "passed": bool(self.passed)}


class Scenario:
	'''
	Base scenario class defining the methods the runner needs to find,
	configure and run presets, and the methods presets use for output.
	'''

	def __init__(self, projMan = None):
		'''
		Define attributes.

		Attributes
		----------
		projMan: Project
			Output manager, nothing is written when it has no directory.
		checks: list of Check
			Criteria evaluated by the last run.
		curves: list
			Curve buffer filled by plt.
		tables: dict
			Extra data tables to write, keyed by channel.
		resolved: dict
			Values chosen for "auto" settings, keyed by "group.field".
		finals: dict
			Final observables reported in the run summary.
		'''
		self.projMan = Project() if projMan is None else projMan
		self.config = None
		self.reset()

	def reset(self):
		self.checks = []
		self.curves = []
		self.tables = {}
		self.resolved = {}
		self.finals = {}

	def loadDefault(self, name):
		'''
		Define default parameters used by the presets of this module and
		return them by group name ("physics", "numerics", "programmed"),
		used when parameters are not specified or as template for
		specifying them.
		'''
		raise NotImplementedError("Default parameters need to be defined.")

	def profile(self):
		'''
		Return the profile of this module so that the runner could list and
		run its presets.

		Returns
		-------
		prof: list of dictionaries
			The profile for presets. Each dictionary describes one preset.
			The key : value pairs are:
			- "name" : preset name, unique across modules
			- "description" : one line description
			- "foo" : the method running the preset
			- "param" : overrides of the module defaults, by group
			- "suite" : name of the check suite the preset belongs to
		'''
		raise NotImplementedError("Module profile needs to be defined.")

	def defaults(self, preset):
		'''
		Module defaults with the preset's overrides applied, by group.
		'''
		entry = self.entry(preset)
		out = {}
		for g in ("physics", "numerics", "programmed"):
			group = copy.deepcopy(self.loadDefault(g))
			group.update(copy.deepcopy(entry.get("param", {}).get(g, {})))
			out[g] = group
		return out

	def entry(self, preset):
		for p in self.profile():
			if p["name"] == preset:
				return p
		raise KeyError(preset)

	def setParams(self, config):
		'''
		Set the validated configuration used by the next run.

		Parameters
		----------
		config: ScenarioConfig
		'''
		self.config = config
		self.physics = config.physics
		self.numerics = config.numerics
		self.programmed = config.programmed

	def run(self, preset):
		self.reset()
		self.entry(preset)["foo"]()

	def prt(self, *args, sep = ' ', level = logging.INFO):
		'''
		Report scenario progress through the module logger.

		Parameters
		----------
		*args:
			Objects to be printed.
		sep: str
			Separating string.
		level: int, optional
			Logging level, default is INFO.
		'''
		logger.log(level, sep.join([d.__str__() for d in args]))

	def plt(self, traj, channel = "mean_x", label = None):
		'''
		Add a curve to the curve buffer written at the end of the run.
		'''
		plot.plot_trace_buffer(traj, channel, label = label or channel,
				ax = self.curves)

	def check(self, name, value, passed, target):
		'''
		Record a pass/fail criterion and report it.
		'''
		if any(c.name == name for c in self.checks):
			raise ValueError("Check {!r} recorded twice.".format(name))
		c = Check(name, float(value), target, bool(passed))
		self.checks.append(c)
		self.prt("check", name, "=", "{:.6g}".format(c.value), "(" + target + ")",
				"pass" if c.passed else "FAIL")
		return c.passed

	def resolve(self, key, value):
		if isinstance(value, np.generic):
			value = value.item()
		self.resolved[key] = value
		return value

	def omegaModel(self):
		p = self.physics
		return self.resolve("physics.omega_model", p.omega_model if
				p.omega_model is not None else p.omega_true)

	def sigma0(self, omega = None):
		'''
		Initial spread, by default the ground state width 1/sqrt(2 omega)
		of the true oscillator.
		'''
		p = self.physics
		if p.sigma0 is not None:
			return self.resolve("physics.sigma0", p.sigma0)
		omega = p.omega_true if omega is None else omega
		return self.resolve("physics.sigma0", float(1 / np.sqrt(2 * omega)))

	def grid(self, reach, sigma, n = None):
		'''
		Simulation grid. With domain "auto" the grid is [-L, L] with L the
		largest planned |position| plus 8 spreads, rounded up.

		Parameters
		----------
		reach: float
			Largest |<x>| expected during the run.
		sigma: float
			Largest expected spread.
		n: int, optional
			Grid size, default is numerics.grid_n.
		'''
		num = self.numerics
		n = num.grid_n if n is None else n
		self.resolve("numerics.grid_n", n)
		if num.domain == "auto":
			L = float(np.ceil(reach + 8 * sigma))
			lo, hi = -L, L
		else:
			lo, hi = num.domain
		self.resolve("numerics.domain", [float(lo), float(hi)])
		return make_grid(lo, hi, n)

	def evolution(self, T):
		'''
		Stepping for a horizon T; dt "auto" is T / numerics.steps.
		'''
		num = self.numerics
		if num.dt == "auto":
			spec = EvolutionSpec(T / num.steps, T, num.record_every)
		else:
			spec = EvolutionSpec(num.dt, T, num.record_every)
		self.resolve("numerics.dt", float(spec.stepSize()))
		return spec

	def final(self, name, value):
		self.finals[name] = float(value)
		return value

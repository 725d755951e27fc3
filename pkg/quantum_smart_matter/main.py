# Scenario runner: the registry of preset modules, configuration loading
# and the run pipeline writing data files and summaries.

import copy
import time
import logging
from dataclasses import dataclass, field
from .param import ParamMan, ConfigError, validate_config, GROUPS
from .project import Project
from .plot import export_curves
from .steering import Steering
from .oscillators import Oscillators
from .programmed import Programmed
from .stabilitySuite import StabilitySuite

logger = logging.getLogger(__name__)


class ScenarioError(RuntimeError):
	'''
	Runtime failure of a preset, carrying the preset name.
	'''

	def __init__(self, preset, error):
		self.preset = preset
		self.error = error
		super().__init__("Scenario {} failed: {}".format(preset, error))


@dataclass
class RunSummary:
	'''
	Outcome of one scenario run.

	Attributes
	----------
	name: str
		Preset name.
	resolved: dict
		Configuration with every "auto" value replaced by the value used.
	finals: dict
		Final observables.
	checks: list of Check
		Criteria of the preset, each once.
	wall_time: float
		Seconds spent running the preset.
	files: list of str
		Paths written.
	'''
	name: str
	resolved: dict
	finals: dict
	checks: list
	wall_time: float = 0.
	files: list = field(default_factory = list)

	@property
	def passed(self):
		return all(c.passed for c in self.checks)

	def failed(self):
		return [c.name for c in self.checks if not c.passed]

	def asDict(self):
		'''
		Summary content written to file, without the wall time so that
		repeated runs produce identical files.
		'''
		return {"name": self.name,
			"passed": self.passed,
			"checks": [c.asDict() for c in self.checks],
			"finals": dict(self.finals),
			"resolved": self.resolved}


class Runner:
	'''
	Registry of the scenario modules and their presets.
	'''

	def __init__(self):
		self.modules = []  # list of (name, module class)
		self.presets = {}  # preset name -> module class
		self.addModule("Steering", Steering)
		self.addModule("Oscillators", Oscillators)
		self.addModule("Programmed potentials", Programmed)
		self.addModule("Stability", StabilitySuite)

	def addModule(self, name, module):
		'''
		Register a scenario module and its presets.

		Parameters
		----------
		name: string
			Name of this module.
		module: class
			Scenario subclass running the presets.
		'''
		self.modules.append((name, module))
		for p in module().profile():
			if p["name"] in self.presets:
				raise ValueError("Preset {} defined twice.".format(p["name"]))
			self.presets[p["name"]] = module

	def profiles(self):
		out = []
		for _, module in self.modules:
			out += module().profile()
		return out

	def suites(self):
		'''
		Preset names by check suite, "all" holding every preset.
		'''
		suites = {}
		for p in self.profiles():
			suites.setdefault(p["suite"], []).append(p["name"])
		suites["all"] = [p["name"] for p in self.profiles()]
		return suites

	def module(self, preset, projMan = None):
		if preset not in self.presets:
			raise ConfigError("preset: unknown preset {!r}, available: {}".format(
				preset, ", ".join(self.presets)))
		return self.presets[preset](projMan)


RUNNER = Runner()
SUITES = RUNNER.suites()


def list_presets():
	'''
	Preset names with their one line descriptions, in registration order.

	Returns
	-------
	presets: list of tuple
		(name, description) pairs.
	'''
	return [(p["name"], p["description"]) for p in RUNNER.profiles()]


def _merge(base, update):
	for k, v in update.items():
		if isinstance(v, dict) and isinstance(base.get(k), dict):
			_merge(base[k], v)
		else:
			base[k] = copy.deepcopy(v)
	return base


def load_config(paramMan):
	'''
	Merge the parameters of a ParamMan over the defaults of the preset it
	names and validate the result.

	Parameters
	----------
	paramMan: ParamMan
		Parameters, with at least the preset name.

	Returns
	-------
	config: ScenarioConfig

	Raises
	------
	ConfigError
		Unknown preset or invalid fields, all listed.
	'''
	params = copy.deepcopy(paramMan.params)
	preset = params.get("preset")
	names = list(RUNNER.presets)
	if preset in RUNNER.presets:
		defaults = RUNNER.module(preset).defaults(preset)
		for g in GROUPS:
			if g in params and not isinstance(params[g], dict):
				continue
			params[g] = _merge(defaults[g], params.get(g, {}))
	return validate_config(params, names)


def _resolved(config, m):
	out = config.model_dump(mode = "json")
	for key, value in m.resolved.items():
		group, name = key.split('.')
		out[group][name] = value
	return out


def run_scenario(config, outDir = None):
	'''
	Run the preset of a validated configuration and write its outputs.

	Parameters
	----------
	config: ScenarioConfig
		Validated configuration.
	outDir: string, optional
		Output directory. Default is None, nothing is written.

	Returns
	-------
	summary: RunSummary

	Raises
	------
	ConfigError
		Configuration problems found while running.
	ScenarioError
		Any other failure of the preset, boundary violations included.
	'''
	preset = config.preset
	proj = Project(outDir or '', preset)
	m = RUNNER.module(preset, proj)
	m.setParams(config)
	logger.info("running %s", preset)
	t0 = time.perf_counter()
	try:
		m.run(preset)
	except ConfigError:
		raise
	except Exception as e:
		raise ScenarioError(preset, e) from e
	wall = time.perf_counter() - t0
	resolved = _resolved(config, m)
	summary = RunSummary(preset, resolved, dict(m.finals), list(m.checks),
			wall)
	if proj.isActive():
		outputs = [(o.channel, o.path) for o in config.outputs]
		try:
			export_curves(m.curves, proj, preset, outputs)
		except ValueError as e:
			raise ConfigError("outputs: {}".format(e))
		for name, df in m.tables.items():
			proj.writeTable(df, proj.genName(preset, name))
		proj.writeYaml(resolved, proj.genName(preset, "resolved", ".yaml"))
		proj.writeYaml(summary.asDict(), proj.genName(preset, "summary",
			".yaml"))
		summary.files = list(proj.written)
	logger.info("%s: %d/%d checks passed in %.1f s", preset,
			sum(c.passed for c in summary.checks), len(summary.checks), wall)
	for name in summary.failed():
		logger.warning("%s: check %s failed", preset, name)
	return summary


def run_suite(suite, outDir = None, seed = None):
	'''
	Run every preset of a check suite with its default parameters.

	Parameters
	----------
	suite: string
		Suite name, one of SUITES.
	outDir: string, optional
		Output directory shared by the presets.
	seed: int, optional
		Seed overriding the default one.

	Returns
	-------
	summaries: list of RunSummary
	'''
	if suite not in SUITES:
		raise ConfigError("suite: unknown suite {!r}, available: {}".format(
			suite, ", ".join(SUITES)))
	summaries = []
	for preset in SUITES[suite]:
		params = {"preset": preset}
		if seed is not None:
			params["seed"] = seed
		summaries.append(run_scenario(load_config(ParamMan(params)), outDir))
	return summaries

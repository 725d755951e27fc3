# Manage scenario parameters in a grand parameter file, including
# loading, setting, validating and exporting.

import copy
import logging
from typing import List, Literal, Optional, Tuple, Union
import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, \
		field_validator, model_validator

logger = logging.getLogger(__name__)

GROUPS = ("physics", "numerics", "programmed")


class ConfigError(ValueError):
	'''
	Invalid scenario configuration.

	Attributes
	----------
	errors: list of str
		One "field.path: message" entry per offending field.
	'''

	def __init__(self, errors):
		if isinstance(errors, str):
			errors = [errors]
		self.errors = list(errors)
		super().__init__("Invalid configuration:\n  " + "\n  ".join(self.errors))


class _Strict(BaseModel):
	model_config = ConfigDict(extra = "forbid", allow_inf_nan = False)


class DriveConfig(_Strict):
	amplitude: float = 0.
	freq: float = 1.2


class PhysicsConfig(_Strict):
	'''
	Physical parameters; omega_model and sigma0 default to omega_true and
	its ground state width when left empty.
	'''
	omega_true: float = Field(1., gt = 0)
	omega_model: Optional[float] = Field(None, gt = 0)
	p0: float = 1.
	p_hat: float = 5.
	T: float = Field(5., gt = 0)
	alpha: float = Field(0., ge = 0)
	k: float = 0.
	coupling_k: float = Field(0., ge = 0)
	sigma0: Optional[float] = Field(None, gt = 0)
	drive: DriveConfig = Field(default_factory = DriveConfig)


class NumericsConfig(_Strict):
	grid_n: int = 1024
	domain: Union[Literal["auto"], Tuple[float, float]] = "auto"
	dt: Union[Literal["auto"], float] = "auto"
	steps: int = Field(4096, ge = 1)
	record_every: int = Field(8, ge = 1)

	@field_validator("grid_n")
	@classmethod
	def _powerOfTwo(cls, v):
		if v < 16 or v & (v - 1):
			raise ValueError("grid_n must be a power of two >= 16")
		return v

	@field_validator("domain")
	@classmethod
	def _interval(cls, v):
		if v != "auto" and not v[0] < v[1]:
			raise ValueError("domain must be an interval lo < hi")
		return v

	@field_validator("dt")
	@classmethod
	def _positive(cls, v):
		if v != "auto" and not v > 0:
			raise ValueError("dt must be positive")
		return v


class ProgrammedConfig(_Strict):
	branch_offset: float = Field(1., gt = 0)
	tau_c: Union[Literal["auto"], float] = "auto"
	tick_multiples: List[int] = [64, 32, 16, 8, 4, 1]

	@field_validator("tau_c")
	@classmethod
	def _positive(cls, v):
		if v != "auto" and not v > 0:
			raise ValueError("tau_c must be positive")
		return v

	@field_validator("tick_multiples")
	@classmethod
	def _multiples(cls, v):
		if not v or min(v) < 1:
			raise ValueError("tick_multiples must be positive integers")
		return v


class OutputConfig(_Strict):
	channel: str
	path: str


class ScenarioConfig(_Strict):
	'''
	Complete scenario description, as read from a configuration file and
	merged with the preset defaults.
	'''
	preset: str
	seed: Optional[int] = 0
	physics: PhysicsConfig = Field(default_factory = PhysicsConfig)
	numerics: NumericsConfig = Field(default_factory = NumericsConfig)
	programmed: ProgrammedConfig = Field(default_factory = ProgrammedConfig)
	outputs: List[OutputConfig] = []

	@model_validator(mode = "after")
	def _named(self):
		if not self.preset:
			raise ValueError("preset must be named")
		return self


def _location(err):
	return ".".join(str(d) for d in err["loc"]) or "config"


def validate_config(params, presets = None):
	'''
	Build a ScenarioConfig from a parameter dictionary.

	Parameters
	----------
	params: dictionary
		Nested parameters.
	presets: list, optional
		Available preset names; the named preset must be one of them.

	Returns
	-------
	config: ScenarioConfig

	Raises
	------
	ConfigError
		Listing every offending field.
	'''
	errors = []
	try:
		config = ScenarioConfig.model_validate(params)
	except ValidationError as e:
		errors = ["{}: {}".format(_location(d), d["msg"]) for d in e.errors()]
		config = None
	name = params.get("preset") if isinstance(params, dict) else None
	if presets is not None and name not in presets:
		errors.insert(0, "preset: unknown preset {!r}, available: {}".format(
			name, ", ".join(presets)))
	if errors:
		raise ConfigError(errors)
	return config


class ParamMan(object):
	'''
	Manage parameters used in the scenarios, including loading, setting
	and exporting.
	'''

	def __init__(self, params = None):
		'''
		Initializing by setting the parameters.

		Attributes
		----------
		params: dictionary
			Parameters in a dictionary.
		'''
		self.params = {} if params is None else copy.deepcopy(params)

	def load(self, paramFile):
		'''
		Load parameters from yaml file.

		Parameters
		----------
		paramFile: string
			Parameter file directory.
		'''
		try:
			with open(paramFile, 'r') as f:
				tmp = yaml.safe_load(f)
		except IOError:
			logger.error("File %s not found.", paramFile)
			raise
		except yaml.YAMLError as e:
			raise ConfigError("{}: not a valid YAML file ({})".format(
				paramFile, e))
		if tmp is None:
			tmp = {}
		if not isinstance(tmp, dict):
			raise ConfigError("{}: top level must be a mapping".format(paramFile))
		for k in tmp:
			if isinstance(tmp[k], dict) and isinstance(self.params.get(k), dict):
				self.params[k].update(tmp[k])
			else:
				self.params[k] = tmp[k]

	def save(self, paramFile):
		'''
		Save parameters to a yaml file.

		Parameters
		----------
		paramFile: string
		'''
		try:
			with open(paramFile, 'w') as f:
				f.write(self.dump())
		except IOError:
			logger.error("Unable to open parameter file %s. Parameters not "
					"saved.", paramFile)
			raise

	def dump(self):
		return yaml.safe_dump(self.params, sort_keys = True)

	def set(self, name, target):
		'''
		Set a top level parameter, such as the preset name or the seed.
		'''
		self.params[name] = target

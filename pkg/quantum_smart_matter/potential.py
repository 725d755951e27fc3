# Potentials of the controlled systems and the map from controller state
# to the effective potential felt by the packet.
#
# Every potential is called as potential(coords, t) where coords is the
# x array of a 1D state or the (x1, x2) meshgrid pair of a 2D state.

from dataclasses import dataclass
from typing import Callable, Optional
import numpy as np
from .wavepacket import WaveFunction


@dataclass(frozen = True)
class HarmonicPotential:
	'''
	V(x) = omega^2 x^2 / 2 centered at *center*.
	'''
	omega: float
	center: float = 0.

	def __post_init__(self):
		if not self.omega > 0:
			raise ValueError("omega must be positive, got {}.".format(self.omega))

	isAutonomous = True
	isQuadratic = True

	def __call__(self, x, t = 0.):
		return 0.5 * self.omega ** 2 * (np.asarray(x) - self.center) ** 2

	def maxFrequency(self):
		return self.omega


@dataclass(frozen = True)
class Drive:
	'''
	Spatially uniform external force amplitude * sin(freq * t).
	'''
	amplitude: float
	freq: float

	def __call__(self, t):
		return self.amplitude * np.sin(self.freq * t)


class TabulatedForce:
	'''
	Force profile given by samples, interpolated linearly between them and
	held at the end values outside the table.
	'''

	def __init__(self, times, values):
		self.times = np.asarray(times, dtype = float)
		self.values = np.asarray(values, dtype = float)
		if self.times.shape != self.values.shape or self.times.ndim != 1:
			raise ValueError("Force table needs matching 1D time and value arrays.")
		if np.any(np.diff(self.times) <= 0):
			raise ValueError("Force table times must be strictly increasing.")

	def __call__(self, t):
		return np.interp(t, self.times, self.values)


def _zero(t):
	return 0. * np.asarray(t, dtype = float)


@dataclass(frozen = True)
class ControlLaw:
	'''
	Parameters of the control potential
	V_c(x, t) = (k + alpha) x^2 / 2 - (alpha p_ref(t) + f(t)) x,
	with an optional external drive entering as -A sin(w t) x.

	Attributes
	----------
	k: float
		Spring modification.
	force: callable or None
		Open loop force profile f(t); None means f = 0.
	alpha: float
		Feedback gain, non-negative.
	ref_path: callable or None
		Reference path p_ref(t) tracked by the feedback term. Required when
		alpha > 0.
	drive: Drive or None
		External sinusoidal force.
	'''
	k: float = 0.
	force: Optional[Callable] = None
	alpha: float = 0.
	ref_path: Optional[Callable] = None
	drive: Optional[Drive] = None

	def __post_init__(self):
		if self.alpha < 0:
			raise ValueError("Feedback gain alpha must be >= 0, got {}.".format(
				self.alpha))
		if self.alpha > 0 and self.ref_path is None:
			raise ValueError("A reference path is required when alpha > 0.")

	def f(self, t):
		return _zero(t) if self.force is None else self.force(t)

	def ref(self, t):
		return _zero(t) if self.ref_path is None else self.ref_path(t)

	def external(self, t):
		return _zero(t) if self.drive is None else self.drive(t)

	def spring(self):
		'''
		Total x^2 coefficient k + alpha added by the controller.
		'''
		return self.k + self.alpha

	def uniformForce(self, t):
		'''
		Position independent part of the control force, alpha p_ref + f.
		'''
		if self.alpha == 0:
			return self.f(t)
		return self.alpha * self.ref(t) + self.f(t)

	def isAutonomous(self):
		return self.force is None and self.drive is None and self.alpha == 0


def eval_controlled(h, c, x, t):
	'''
	Total potential omega^2 x^2/2 + (k+alpha) x^2/2
	- (alpha p_ref(t) + f(t) + drive(t)) x.

	Parameters
	----------
	h: HarmonicPotential
		Bare oscillator.
	c: ControlLaw
		Controller parameters.
	x: float or array_like
		Positions.
	t: float
		Time.

	Returns
	-------
	v: float or numpy.array
	'''
	x = np.asarray(x)
	omega2 = h.omega ** 2 + c.spring()
	return (0.5 * omega2 * x ** 2 -
			(c.uniformForce(t) + c.external(t)) * x)


class ControlledHarmonic:
	'''
	Evaluable potential of a harmonic oscillator under a ControlLaw.
	'''

	isQuadratic = True

	def __init__(self, harmonic, law):
		if harmonic.omega ** 2 + law.spring() <= 0:
			raise ValueError(("Unbound oscillator: omega^2 + k + alpha = {} "
				"must be positive.").format(harmonic.omega ** 2 + law.spring()))
		self.harmonic = harmonic
		self.law = law
		self.isAutonomous = law.isAutonomous()

	def __call__(self, x, t = 0.):
		return eval_controlled(self.harmonic, self.law, x, t)

	def frequency(self):
		return np.sqrt(self.harmonic.omega ** 2 + self.law.spring())

	def maxFrequency(self):
		return self.frequency()

	def forceExpect(self, mean, t):
		'''
		<F_c> = -(k+alpha) <x> + alpha p_ref(t) + f(t).
		'''
		return -self.law.spring() * mean + self.law.uniformForce(t)

	def forceSquareExpect(self, mean, second, t):
		'''
		<F_c^2> from the first and second position moments.
		'''
		s = self.law.spring()
		u = self.law.uniformForce(t)
		return s ** 2 * second - 2 * s * u * mean + u ** 2


def sign_program(x):
	'''
	C = 0 for x <= 0 and C = 1 for x > 0.
	'''
	return (np.asarray(x) > 0).astype(int)


def constant_program(bit):
	def program(x):
		return np.full(np.shape(x), int(bit), dtype = int)
	return program


class ProgrammedPair:
	'''
	Two potential branches V(x, 0), V(x, 1) and the program computing the
	register bit C from x.

	Attributes
	----------
	v0: callable
		Branch for C = 0, called as v0(x, t).
	v1: callable
		Branch for C = 1.
	program: callable
		Maps positions to bits 0 or 1.
	'''

	def __init__(self, v0, v1, program = sign_program):
		self.v0 = v0
		self.v1 = v1
		self.program = program

	def branch(self, c):
		return self.v1 if c else self.v0

	def bits(self, x):
		b = np.asarray(self.program(x))
		if b.shape != np.shape(x) or not np.all((b == 0) | (b == 1)):
			raise ValueError("Program must return one bit per position.")
		return b

	def maxFrequency(self):
		return max(getattr(v, "maxFrequency", lambda: 0.)()
				for v in (self.v0, self.v1))

	def effective(self):
		return EffectivePotential(self)


def effective_potential(p, x, t = 0.):
	'''
	V_eff(x) = V(x, C(x)), selecting the branch by the program output.
	'''
	x = np.asarray(x)
	return np.where(p.bits(x) == 1, p.v1(x, t), p.v0(x, t))


class EffectivePotential:
	'''
	Static potential V_eff of a programmed pair, as one evaluable potential.
	'''

	isQuadratic = False

	def __init__(self, pair):
		self.pair = pair
		self.isAutonomous = (getattr(pair.v0, "isAutonomous", False) and
				getattr(pair.v1, "isAutonomous", False))

	def __call__(self, x, t = 0.):
		return effective_potential(self.pair, x, t)

	def maxFrequency(self):
		return self.pair.maxFrequency()


def displaced_pair(omega = 1., d = 1., program = sign_program):
	'''
	Preset pair of displaced harmonic branches v0 = omega^2 (x+d)^2/2 and
	v1 = omega^2 (x-d)^2/2.
	'''
	return ProgrammedPair(HarmonicPotential(omega, -d),
			HarmonicPotential(omega, d), program)


@dataclass(frozen = True)
class CoupledPotential:
	'''
	Two oscillators coupled by the control forces k(x2-x1), k(x1-x2):
	V_eff = (omega^2 + k)(x1^2 + x2^2)/2 - k x1 x2.
	'''
	omega: float
	k: float = 0.

	def __post_init__(self):
		if not self.omega > 0:
			raise ValueError("omega must be positive, got {}.".format(self.omega))
		if self.k < 0:
			raise ValueError("Coupling k must be >= 0, got {}.".format(self.k))

	isAutonomous = True
	isQuadratic = True

	def __call__(self, x, t = 0.):
		x1, x2 = x
		return coupled_effective(self, x1, x2)

	def maxFrequency(self):
		return normal_modes(self)[1]


def coupled_effective(c, x1, x2):
	'''
	Effective potential of the coupled pair at (x1, x2).
	'''
	x1 = np.asarray(x1)
	x2 = np.asarray(x2)
	return 0.5 * (c.omega ** 2 + c.k) * (x1 ** 2 + x2 ** 2) - c.k * x1 * x2


def normal_modes(c):
	'''
	Frequencies of the sum mode y1 = (x1+x2)/sqrt(2) and of the difference
	mode y2 = (x1-x2)/sqrt(2).

	Returns
	-------
	freqs: tuple
		(omega, sqrt(omega^2 + 2k)).
	'''
	w2 = c.omega ** 2 + 2 * c.k
	if c.omega <= 0 or w2 <= 0:
		raise ValueError("Unbound normal mode: omega^2 + 2k = {}.".format(w2))
	return float(c.omega), float(np.sqrt(w2))


def rotate(x1, x2):
	'''
	Normal mode coordinates (y1, y2) of the coupled pair.
	'''
	s = np.sqrt(0.5)
	return s * (np.asarray(x1) + x2), s * (np.asarray(x1) - x2)


def coupled_ground_state(grid, c, margin = 6.):
	'''
	Ground state of the coupled pair, the product of the normal mode ground
	states exp(-omega1 y1^2 / 2) exp(-omega2 y2^2 / 2), sampled on the 2D
	grid and normalized.

	Parameters
	----------
	grid: Grid
		Grid used along both axes.
	c: CoupledPotential
		Coupled pair.
	margin: float, optional
		Number of mode widths that must fit inside the domain, default is 6.

	Returns
	-------
	wf: WaveFunction
	'''
	w1, w2 = normal_modes(c)
	width = max(1 / np.sqrt(2 * w1), 1 / np.sqrt(2 * w2))
	if not grid.contains(-margin * width, margin * width):
		raise ValueError("Ground state width {:.4g} does not fit the domain."
				.format(width))
	x1, x2 = np.meshgrid(grid.x, grid.x, indexing = "ij")
	y1, y2 = rotate(x1, x2)
	amps = np.exp(-0.5 * w1 * y1 ** 2 - 0.5 * w2 * y2 ** 2)
	return WaveFunction(grid, amps).normalized()

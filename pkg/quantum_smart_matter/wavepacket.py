# Grids, wave functions and gaussian packets, with the observables
# extracted from them. Units are hbar = m = 1 throughout.

from dataclasses import dataclass
import numpy as np
import pandas as pd
from scipy import fft

NORM_TOL = 1e-9


@dataclass(frozen = True)
class Grid:
	'''
	Uniform periodic grid on [x_min, x_max) with n points.

	Attributes
	----------
	x_min: float
		Lower bound of the domain.
	x_max: float
		Upper bound of the domain, excluded from the sample points.
	n: int
		Number of points, a power of two no smaller than 16.
	'''
	x_min: float
	x_max: float
	n: int

	def __post_init__(self):
		if not np.isfinite(self.x_min) or not np.isfinite(self.x_max):
			raise ValueError("Grid bounds must be finite, got [{}, {}].".format(
				self.x_min, self.x_max))
		if self.x_max <= self.x_min:
			raise ValueError("Empty domain: x_max ({}) must exceed x_min ({})."
					.format(self.x_max, self.x_min))
		n = int(self.n)
		if n != self.n or n < 16 or n & (n - 1):
			raise ValueError("Grid size must be a power of two >= 16, got {}."
					.format(self.n))

	@property
	def dx(self):
		return (self.x_max - self.x_min) / self.n

	@property
	def x(self):
		return self.x_min + self.dx * np.arange(self.n)

	@property
	def k(self):
		'''
		Angular wave numbers in fft ordering.
		'''
		return 2 * np.pi * fft.fftfreq(self.n, self.dx)

	def contains(self, lo, hi):
		return self.x_min <= lo and hi <= self.x_max

	def isSymmetric(self):
		return abs(self.x_min + self.x_max) <= 1e-12 * (self.x_max - self.x_min)


def make_grid(x_min, x_max, n):
	'''
	Build a uniform grid, rejecting inverted bounds and sizes that are
	not powers of two.

	Parameters
	----------
	x_min: float
		Lower bound.
	x_max: float
		Upper bound.
	n: int
		Number of points.

	Returns
	-------
	grid: Grid
	'''
	return Grid(float(x_min), float(x_max), n)


@dataclass(frozen = True)
class GaussianState:
	'''
	Parameters of a gaussian packet
	psi(x) = (2 pi sigma^2)^(-1/4) exp(-(x-p)^2/(4 sigma^2) + i q (x-p) + i phi).

	Attributes
	----------
	center: float
		Expected position p.
	spread: float
		Standard deviation sigma of the position density.
	momentum: float, optional
		Mean momentum q, default is 0.
	phase: float, optional
		Global phase phi, default is 0.
	'''
	center: float
	spread: float
	momentum: float = 0.
	phase: float = 0.

	def __post_init__(self):
		if not self.spread > 0:
			raise ValueError("Packet spread must be positive, got {}.".format(
				self.spread))

	def sample(self, x):
		s = self.spread
		return ((2 * np.pi * s ** 2) ** -0.25 *
				np.exp(-(x - self.center) ** 2 / (4 * s ** 2) +
					1j * self.momentum * (x - self.center) + 1j * self.phase))


class WaveFunction:
	'''
	Complex amplitudes on a Grid. One dimensional states hold an array of
	shape (n,), two dimensional states an array of shape (n, n) indexed as
	[x1, x2] on the same grid along both axes.

	States are treated as values: operations return new instances and never
	modify the amplitudes of their inputs.
	'''

	def __init__(self, grid, amplitudes):
		'''
		Parameters
		----------
		grid: Grid
			Spatial grid.
		amplitudes: array_like
			Complex amplitudes, shape (n,) or (n, n).
		'''
		amplitudes = np.asarray(amplitudes, dtype = complex)
		if amplitudes.shape not in ((grid.n,), (grid.n, grid.n)):
			raise ValueError("Amplitude shape {} does not match grid size {}."
					.format(amplitudes.shape, grid.n))
		self.grid = grid
		self.amplitudes = amplitudes

	@property
	def ndim(self):
		return self.amplitudes.ndim

	@property
	def volume(self):
		'''
		Volume element, dx or dx^2.
		'''
		return self.grid.dx ** self.ndim

	def coords(self):
		'''
		Coordinates to evaluate potentials on: the x array in 1D, the pair
		of meshgrids (x1, x2) in 2D.
		'''
		x = self.grid.x
		if self.ndim == 1:
			return x
		return tuple(np.meshgrid(x, x, indexing = "ij"))

	def density(self):
		return np.abs(self.amplitudes) ** 2

	def norm(self):
		return float(np.sum(self.density()) * self.volume)

	def normalized(self):
		return WaveFunction(self.grid, self.amplitudes / np.sqrt(self.norm()))

	def copy(self):
		return WaveFunction(self.grid, self.amplitudes.copy())

	def withAmplitudes(self, amplitudes):
		return WaveFunction(self.grid, amplitudes)

	def __repr__(self):
		return "WaveFunction(n={}, ndim={}, norm={:.12f})".format(
				self.grid.n, self.ndim, self.norm())


def gaussian_init(grid, state, margin = 6.):
	'''
	Sample a gaussian packet onto a grid and renormalize it once.

	Parameters
	----------
	grid: Grid
		Target grid.
	state: GaussianState
		Packet parameters.
	margin: float, optional
		Number of spreads that must fit inside the domain on both sides of
		the center, default is 6.

	Returns
	-------
	wf: WaveFunction
		Normalized one dimensional state.
	'''
	lo = state.center - margin * state.spread
	hi = state.center + margin * state.spread
	if not grid.contains(lo, hi):
		raise ValueError(("Packet support [{:.4g}, {:.4g}] exceeds the domain "
			"[{:.4g}, {:.4g}].").format(lo, hi, grid.x_min, grid.x_max))
	return WaveFunction(grid, state.sample(grid.x)).normalized()


def product_state(grid, state1, state2, margin = 6.):
	'''
	Two dimensional product of two gaussian packets, psi1(x1) psi2(x2).
	'''
	a = gaussian_init(grid, state1, margin).amplitudes
	b = gaussian_init(grid, state2, margin).amplitudes
	return WaveFunction(grid, np.outer(a, b)).normalized()


def superpose(states, weights):
	'''
	Normalized linear combination of states sharing one grid.

	Parameters
	----------
	states: list of WaveFunction
	weights: list of complex

	Returns
	-------
	wf: WaveFunction
	'''
	grid = states[0].grid
	for s in states[1:]:
		if s.grid != grid:
			raise ValueError("Cannot superpose states on different grids.")
	amps = sum(w * s.amplitudes for w, s in zip(weights, states))
	return WaveFunction(grid, amps).normalized()


def reflect(wf):
	'''
	Mirror a state through x = 0, x_i -> x_(n-i) on a symmetric grid.
	'''
	if not wf.grid.isSymmetric():
		raise ValueError("Reflection needs a grid symmetric about 0.")
	idx = (-np.arange(wf.grid.n)) % wf.grid.n
	amps = wf.amplitudes[idx]
	if wf.ndim == 2:
		amps = amps[:, idx]
	return WaveFunction(wf.grid, amps)


def _marginals(wf):
	p = wf.density()
	if wf.ndim == 1:
		return [p]
	return [p.sum(axis = 1) * wf.grid.dx, p.sum(axis = 0) * wf.grid.dx]


def marginal_moments(wf, axis = 0):
	'''
	First and second moments <x>, <x^2> of the position density of one
	coordinate.

	Parameters
	----------
	wf: WaveFunction
		One or two dimensional state.
	axis: int, optional
		Coordinate of a 2D state, 0 for x1 and 1 for x2. Default is 0.

	Returns
	-------
	mean: float
	second: float
	'''
	if axis not in range(wf.ndim):
		raise ValueError("No coordinate {} in a {}D state.".format(axis,
			wf.ndim))
	p = _marginals(wf)[axis]
	x = wf.grid.x
	dx = wf.grid.dx
	return float(np.sum(x * p) * dx), float(np.sum(x ** 2 * p) * dx)


def mean_position(wf, axis = 0):
	'''
	Expected position sum x |psi|^2 dx, of coordinate *axis* for 2D states.
	'''
	return marginal_moments(wf, axis)[0]


def second_moment(wf, axis = 0):
	return marginal_moments(wf, axis)[1]


def spread(wf, axis = 0):
	'''
	Position standard deviation sqrt(<x^2> - <x>^2).
	'''
	p = _marginals(wf)[axis]
	x = wf.grid.x
	mu = np.sum(x * p) * wf.grid.dx
	# central moment, not <x^2> - <x>^2
	var = np.sum((x - mu) ** 2 * p) * wf.grid.dx
	return float(np.sqrt(max(var, 0.)))


def excess_kurtosis(wf, axis = 0):
	'''
	Excess kurtosis of the position density, zero for a gaussian.
	'''
	p = _marginals(wf)[axis]
	x = wf.grid.x
	dx = wf.grid.dx
	mu = np.sum(x * p) * dx
	var = np.sum((x - mu) ** 2 * p) * dx
	m4 = np.sum((x - mu) ** 4 * p) * dx
	return float(m4 / var ** 2 - 3)


def spatial_axes(wf):
	'''
	Axes of the amplitude array that run over grid points; leading axes,
	if any, index register components.
	'''
	return tuple(range(-wf.ndim, 0))


def k_squared(grid, ndim):
	k = grid.k
	if ndim == 1:
		return k ** 2
	return k[:, None] ** 2 + k[None, :] ** 2


def kinetic_energy(wf):
	'''
	Spectral <p^2/2>, using Parseval's relation on the discrete transform.
	'''
	phi = fft.fftn(wf.amplitudes, axes = spatial_axes(wf))
	k2 = k_squared(wf.grid, wf.ndim)
	scale = wf.volume / wf.grid.n ** wf.ndim
	return float(0.5 * np.sum(k2 * np.abs(phi) ** 2) * scale)


def potential_energy(wf, potential, t = 0.):
	v = potential(wf.coords(), t)
	return float(np.sum(v * np.abs(wf.amplitudes) ** 2) * wf.volume)


def energy(wf, potential, t = 0.):
	'''
	Expected energy <T + V> at time t.

	Parameters
	----------
	wf: WaveFunction
		Normalized state.
	potential: callable
		Evaluable potential, called as potential(wf.coords(), t).
	t: float, optional
		Time the potential is evaluated at, default is 0.

	Returns
	-------
	e: float
	'''
	return kinetic_energy(wf) + potential_energy(wf, potential, t)


def covariance(wf):
	'''
	Position covariance <x1 x2> - <x1><x2> of a two dimensional state.
	'''
	if wf.ndim != 2:
		raise ValueError("Covariance needs a two dimensional state.")
	x = wf.grid.x
	p = wf.density() * wf.volume
	m1 = np.sum(x[:, None] * p)
	m2 = np.sum(x[None, :] * p)
	c = np.sum((x[:, None] - m1) * (x[None, :] - m2) * p)
	return float(c)


def fidelity(a, b):
	'''
	Overlap magnitude |<a|b>| of two states on the same grid.
	'''
	if a.grid != b.grid or a.amplitudes.shape != b.amplitudes.shape:
		raise ValueError("Fidelity needs states on the same grid.")
	return float(abs(np.vdot(a.amplitudes, b.amplitudes)) * a.volume)


class Trajectory:
	'''
	Recorded time series of observables, one row per record, held in a
	pandas DataFrame whose columns are the data file header:
	t, mean_x, sigma, norm, energy, force_expect, cost_accum, plus
	mean_x2 and covariance for 2D runs and mismatch_weight for programmed
	runs.

	Attributes
	----------
	data: pandas.DataFrame
		The records.
	autonomous: bool
		Whether the potential that produced the records had no explicit
		time dependence.
	ticks: pandas.DataFrame or None
		Pre-tick mismatch weights of a programmed run, columns t and
		mismatch_weight.
	'''
	COLUMNS = ["t", "mean_x", "sigma", "norm", "energy", "force_expect",
			"cost_accum"]

	def __init__(self, data, autonomous = False):
		data = pd.DataFrame(data).reset_index(drop = True)
		missing = [c for c in ("t", "mean_x") if c not in data.columns]
		if missing:
			raise ValueError("Trajectory is missing columns {}.".format(missing))
		t = data["t"].to_numpy()
		if len(t) > 1 and np.any(np.diff(t) <= 0):
			raise ValueError("Trajectory times must be strictly increasing.")
		self.data = data
		self.autonomous = autonomous
		self.ticks = None

	def __len__(self):
		return len(self.data)

	def has(self, channel):
		return channel in self.data.columns

	def channel(self, name):
		return self.data[name].to_numpy()

	@property
	def times(self):
		return self.channel("t")

	@property
	def mean_x(self):
		return self.channel("mean_x")

	@property
	def spread(self):
		return self.channel("sigma")

	@property
	def norm(self):
		return self.channel("norm")

	@property
	def energy(self):
		return self.channel("energy")

	@property
	def cost_accum(self):
		return self.channel("cost_accum")

	def final(self, name = "mean_x"):
		return float(self.data[name].iloc[-1])

	def interp(self, t, name = "mean_x"):
		'''
		Linear interpolation of a channel at times t, for plotting and
		comparisons between runs recorded on different schedules.
		'''
		return np.interp(t, self.times, self.channel(name))

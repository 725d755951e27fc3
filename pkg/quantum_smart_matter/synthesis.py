# Control laws for a harmonic packet: minimum effort open loop forcing,
# reference paths, feedback, cost evaluation, coupling and detuning.

from dataclasses import dataclass, field
import numpy as np
import pandas as pd
from scipy.integrate import quad, trapezoid
from .potential import ControlLaw, ControlledHarmonic, CoupledPotential, \
		HarmonicPotential, Drive
from .propagator import analytic_center, solve_expectation, _omega


@dataclass(frozen = True)
class SteeringProblem:
	'''
	Bring the expected position from p0 to p_hat at time T, using the
	modeled frequency omega_model.
	'''
	omega_model: float
	p0: float
	p_hat: float
	T: float

	def __post_init__(self):
		if not self.omega_model > 0:
			raise ValueError("omega_model must be positive, got {}.".format(
				self.omega_model))
		if not self.T > 0:
			raise ValueError("Horizon T must be positive, got {}.".format(self.T))
		if self.denominator() == 0:
			raise ValueError("Degenerate steering problem: 2 omega T = sin(2 omega T).")

	def denominator(self):
		w = self.omega_model
		return 2 * w * self.T - np.sin(2 * w * self.T)


class OptimalForce:
	'''
	Minimum effort force
	f(t) = 4 omega^2 (p_hat - p0 cos(omega T)) / (2 omega T - sin(2 omega T))
	* sin(omega (T - t)).

	Attributes
	----------
	amplitude: float
		Prefactor of sin(omega (T - t)).
	'''

	def __init__(self, prob):
		w = prob.omega_model
		self.problem = prob
		self.omega = w
		self.T = prob.T
		self.amplitude = (4 * w ** 2 * (prob.p_hat - prob.p0 * np.cos(w * prob.T)) /
				prob.denominator())

	def __call__(self, t):
		return self.amplitude * np.sin(self.omega * (self.T - np.asarray(t)))

	def closedFormCost(self):
		'''
		int_0^T f^2 dt = A^2 (2 omega T - sin(2 omega T)) / (4 omega).
		'''
		return self.amplitude ** 2 * self.problem.denominator() / (4 * self.omega)


def optimal_force(prob):
	'''
	Open loop force with k = 0 reaching p_hat at T with the least
	int <F_c^2> dt.

	Parameters
	----------
	prob: SteeringProblem

	Returns
	-------
	f: OptimalForce
		Callable profile f(t).
	'''
	return OptimalForce(prob)


class ReferencePath:
	'''
	Center path predicted by the model under the optimal force,
	p_ref(t) = p0 cos(omega t) + (1/omega) int_0^t f(s) sin(omega (t - s)) ds,
	evaluated in closed form for f(s) = A sin(omega (T - s)).
	'''

	def __init__(self, prob, force = None):
		self.problem = prob
		self.force = optimal_force(prob) if force is None else force

	def __call__(self, t):
		prob = self.problem
		w = prob.omega_model
		T = prob.T
		A = self.force.amplitude
		t = np.asarray(t, dtype = float)
		conv = (0.5 * t * np.cos(w * (T - t)) -
				(np.sin(w * (T + t)) - np.sin(w * (T - t))) / (4 * w))
		return prob.p0 * np.cos(w * t) + A / w * conv

	def quadrature(self, t):
		'''
		The same path by numerical quadrature of the defining integral.
		'''
		prob = self.problem
		return analytic_center(prob.p0, prob.omega_model, 0., self.force, t)


def reference_path(prob):
	return ReferencePath(prob)


def open_loop_law(prob):
	return ControlLaw(force = optimal_force(prob))


def feedback_law(prob, alpha):
	'''
	Control law V_c = alpha x^2/2 - (alpha p_ref(t) + f_ideal(t)) x built
	from the model problem.

	Parameters
	----------
	prob: SteeringProblem
		Model the open loop force and reference path are built from.
	alpha: float
		Feedback gain, >= 0. With 0 the law is the open loop law.

	Returns
	-------
	law: ControlLaw
	'''
	if alpha < 0:
		raise ValueError("Feedback gain alpha must be >= 0, got {}.".format(alpha))
	path = reference_path(prob)
	return ControlLaw(k = 0., force = path.force, alpha = float(alpha),
			ref_path = path)


@dataclass
class CostReport:
	'''
	Criterion J = int_0^T <F_c^2> dt and its parts.

	Attributes
	----------
	J: float
		Total cost.
	breakdown: dict
		"k": int k^2 <x^2>, "f": int f^2, "feedback": int alpha^2
		<(x - p_ref)^2>, "cross": J minus the three squared terms.
	'''
	J: float
	breakdown: dict = field(default_factory = dict)


def _integrate(fun, T, times):
	if times is None:
		val, err = quad(fun, 0, T, epsabs = 1e-10, epsrel = 1e-12, limit = 400)
		return float(val)
	return float(trapezoid(fun(times), times))


def control_cost(c, source, T, omega = 1.):
	'''
	Evaluate J = int_0^T <F_c^2> dt with F_c = -(k + alpha) x + alpha p_ref + f.

	Parameters
	----------
	c: ControlLaw
		Controller.
	source: Trajectory, moments object or None
		Position moments over [0, T]: a recorded Trajectory with mean_x and
		sigma channels (trapezoid rule at record resolution), or an object
		with mean(t) and second(t) callables (adaptive quadrature). None is
		accepted when k + alpha = 0, as the cost then needs no moments.
	T: float
		Horizon.
	omega: float, optional
		Bare frequency, only used to build the evaluable potential.

	Returns
	-------
	report: CostReport
	'''
	spring = c.spring()
	times = None
	if source is None:
		if spring != 0:
			raise ValueError("Position moments are required when k + alpha != 0.")
		mean = second = lambda t: 0. * np.asarray(t, dtype = float)
	elif hasattr(source, "data"):
		data = source.data[source.data["t"] <= T * (1 + 1e-12)]
		if spring != 0 and "sigma" not in data.columns:
			raise ValueError("Trajectory has no spread channel; the second "
					"moment is required when k + alpha != 0.")
		times = data["t"].to_numpy()
		m = data["mean_x"].to_numpy()
		s2 = (data["sigma"].to_numpy() ** 2 if "sigma" in data.columns
				else np.zeros_like(m))
		lookup = dict(zip(times, zip(m, s2 + m ** 2)))
		mean = lambda t: np.array([lookup[s][0] for s in np.atleast_1d(t)])
		second = lambda t: np.array([lookup[s][1] for s in np.atleast_1d(t)])
	else:
		mean = source.mean
		second = source.second
	pot = ControlledHarmonic(HarmonicPotential(omega), c)
	total = _integrate(lambda t: pot.forceSquareExpect(mean(t), second(t), t),
			T, times)
	parts = {
		"k": _integrate(lambda t: c.k ** 2 * second(t), T, times),
		"f": _integrate(lambda t: c.f(t) ** 2, T, times),
		"feedback": _integrate(lambda t: c.alpha ** 2 * (second(t) -
			2 * c.ref(t) * mean(t) + c.ref(t) ** 2), T, times)}
	parts["cross"] = total - sum(parts.values())
	return CostReport(max(total, 0.), parts)


class SinePerturbation:
	'''
	Force perturbation sum_n c_n sin(n pi t / T) minus its component along
	g(t) = sin(omega (T - t)), so that the endpoint is unchanged.
	'''

	def __init__(self, coeffs, T, g = None, lam = 0.):
		self.coeffs = np.asarray(coeffs, dtype = float)
		self.T = T
		self.g = g
		self.lam = lam

	def __call__(self, t):
		t = np.asarray(t, dtype = float)
		n = np.arange(1, len(self.coeffs) + 1)
		val = np.sin(np.multiply.outer(t, n) * np.pi / self.T) @ self.coeffs
		if self.g is not None:
			val = val - self.lam * self.g(t)
		return val


def optimality_certificate(prob, trials, seed, modes = 8, scale = 1.,
		project = True, tol = 1e-9):
	'''
	Check that random endpoint-preserving perturbations of the optimal
	force never lower the cost.

	Parameters
	----------
	prob: SteeringProblem
		Problem whose optimal force is tested.
	trials: int
		Number of perturbations, >= 1.
	seed: int
		Master seed; trial seeds are spawned from it deterministically.
	modes: int, optional
		Number of sine modes in each perturbation, default is 8.
	scale: float, optional
		Standard deviation of the mode coefficients, default is 1.
	project: bool, optional
		Remove the component that would move the endpoint, default True.
		Unprojected perturbations are reported as constraint violations.
	tol: float, optional
		Tolerance on the cost comparison and on the constraint.

	Returns
	-------
	report: pandas.DataFrame
		One row per trial with the constraint value, endpoint error, cost,
		excess over the optimum and a status of "pass", "fail" or
		"constraint-violation". report.attrs["passed"] holds the verdict.
	'''
	if trials < 1:
		raise ValueError("At least one trial is required.")
	fstar = optimal_force(prob)
	w = prob.omega_model
	T = prob.T

	def g(t):
		return np.sin(w * (T - np.asarray(t, dtype = float)))

	gg = quad(lambda t: g(t) ** 2, 0, T, epsabs = 1e-13)[0]
	basis = np.array([quad(lambda t, n = n: np.sin(n * np.pi * t / T) * g(t),
		0, T, epsabs = 1e-13)[0] for n in range(1, modes + 1)])
	jstar = quad(lambda t: fstar(t) ** 2, 0, T, epsabs = 1e-12, epsrel = 1e-13,
			limit = 200)[0]
	rows = []
	for i, child in enumerate(np.random.SeedSequence(seed).spawn(trials)):
		rng = np.random.default_rng(child)
		coeffs = scale * rng.standard_normal(modes)
		lam = float(coeffs @ basis) / gg if project else 0.
		df = SinePerturbation(coeffs, T, g, lam)
		constraint = float(coeffs @ basis - lam * gg)
		perturbed = lambda t, df = df: fstar(t) + df(t)
		endpoint = analytic_center(prob.p0, w, 0., perturbed, T) - prob.p_hat
		if abs(constraint) > tol * max(1., np.abs(coeffs).sum()):
			status = "constraint-violation"
			J = np.nan
		else:
			J = quad(lambda t: perturbed(t) ** 2, 0, T, epsabs = 1e-12,
					epsrel = 1e-13, limit = 200)[0]
			status = "pass" if J >= jstar - tol else "fail"
		rows.append({"trial": i, "constraint": constraint,
			"endpoint_error": endpoint, "J": J, "J_opt": jstar,
			"excess": J - jstar, "status": status})
	report = pd.DataFrame(rows).set_index("trial")
	report.attrs["passed"] = bool((report["status"] == "pass").all())
	return report


@dataclass(frozen = True)
class CouplingLaw:
	'''
	Control forces k(x2 - x1) on the first oscillator and k(x1 - x2) on
	the second.
	'''
	k: float

	def __post_init__(self):
		if self.k < 0:
			raise ValueError("Coupling k must be >= 0, got {}.".format(self.k))

	def forces(self, x1, x2):
		x1 = np.asarray(x1, dtype = float)
		x2 = np.asarray(x2, dtype = float)
		return self.k * (x2 - x1), self.k * (x1 - x2)

	def controlPotential(self, x1, x2):
		'''
		k (x1 - x2)^2 / 2, whose negative gradient gives the forces.
		'''
		return 0.5 * self.k * (np.asarray(x1) - x2) ** 2

	def induced(self, omega):
		return CoupledPotential(omega, self.k)


def coupling_law(k):
	return CouplingLaw(float(k))


def detuned_frequency(omega, k):
	'''
	Omega = sqrt(omega^2 + k).
	'''
	return float(_omega(omega, k))


def driven_response(omega, k, drive, T, p0 = 0., samples = 4001):
	'''
	Peak |<x>| over [0, T] of a packet starting at rest at p0 under the
	spring k and a sinusoidal drive, from the expectation dynamics.

	Parameters
	----------
	omega: float
		Bare frequency.
	k: float
		Spring modification tuning Omega.
	drive: Drive
		External force.
	T: float
		Horizon.

	Returns
	-------
	amp: float
	'''
	if not isinstance(drive, Drive):
		drive = Drive(*drive)
	law = ControlLaw(k = k, drive = drive)
	t = np.linspace(0, T, samples)
	sol = solve_expectation(p0, 0., HarmonicPotential(omega), law, T, t)
	return float(np.max(np.abs(sol.y[0])))

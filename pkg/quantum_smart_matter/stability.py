# Stability checks on recorded trajectories: energy conservation for
# autonomous control and descent of a Lyapunov candidate otherwise.

import logging
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Tuple, Union
import numpy as np

logger = logging.getLogger(__name__)

DERIVATIVE_TOL = 1e-6


@dataclass
class DriftReport:
	'''
	Energy drift of a trajectory.

	Attributes
	----------
	value: float
		max |E(t) - E(0)| / |E(0)|, or the absolute drift when E(0) = 0.
	relative: bool
		False when the absolute drift is reported.
	applicable: bool
		False for runs whose potential depends explicitly on time.
	flags: list of str
		Reasons the value needs care.
	'''
	value: float
	relative: bool = True
	applicable: bool = True
	flags: list = field(default_factory = list)

	def __float__(self):
		return float(self.value)


def energy_drift(traj):
	'''
	Largest deviation of the recorded energy from its initial value.

	Parameters
	----------
	traj: Trajectory
		Records with an energy channel.

	Returns
	-------
	report: DriftReport
	'''
	if not traj.has("energy"):
		raise ValueError("Trajectory has no energy channel.")
	e = traj.energy
	dev = float(np.max(np.abs(e - e[0])))
	report = DriftReport(dev)
	if e[0] == 0:
		report.relative = False
		report.flags.append("zero initial energy, absolute drift reported")
	else:
		report.value = dev / abs(e[0])
	if not traj.autonomous:
		report.applicable = False
		report.flags.append("non-autonomous run, energy is not conserved")
	for f in report.flags:
		logger.warning("energy drift: %s", f)
	return report


@dataclass(frozen = True)
class LyapunovSpec:
	'''
	Lyapunov candidate over recorded observables.

	Attributes
	----------
	candidate: callable
		Called as candidate(obs, t) with obs a mapping of observable names
		(mean_x, sigma, energy, ...) to values.
	region: tuple or None
		Interval (lo, hi) of mean positions where the candidate is meant to
		apply; None for the whole line.
	equilibrium: float or mapping
		Equilibrium point, a mean position or a mapping of observables. The
		candidate must vanish there.
	'''
	candidate: Callable
	region: Optional[Tuple[float, float]] = None
	equilibrium: Union[float, Mapping] = 0.

	def __post_init__(self):
		if self.region is not None and not self.region[0] < self.region[1]:
			raise ValueError("Region must be an interval lo < hi, got {}.".format(
				self.region))
		obs = self.equilibriumObservables()
		for t in (0., 1.):
			try:
				v = self.candidate(obs, t)
			except KeyError as e:
				raise ValueError(("Candidate needs observable {} at the "
					"equilibrium; give the equilibrium as a mapping.").format(e))
			if abs(v) > 1e-9:
				raise ValueError(("Candidate must vanish at the equilibrium, got "
					"{:.3g} at t = {}.").format(v, t))

	def equilibriumObservables(self):
		if isinstance(self.equilibrium, Mapping):
			return dict(self.equilibrium)
		return {"mean_x": float(self.equilibrium)}

	def contains(self, x):
		if self.region is None:
			return np.ones(np.shape(x), dtype = bool)
		x = np.asarray(x)
		return (x >= self.region[0]) & (x <= self.region[1])


@dataclass
class LyapunovReport:
	'''
	Outcome of lyapunov_verify.

	Attributes
	----------
	max_derivative: float
		Largest finite difference d(Lambda)/dt over the checked records.
	violations: int
		Number of record intervals with derivative above the tolerance.
	violation_fraction: float
		violations over the number of checked intervals.
	in_region: bool
		Whether the mean position stayed in the region.
	exit_time: float or None
		First record time outside the region; the check stops there.
	values: numpy.array
		Candidate values at the checked records.
	'''
	max_derivative: float
	violations: int
	violation_fraction: float
	in_region: bool
	exit_time: Optional[float] = None
	values: np.ndarray = None

	@property
	def passed(self):
		return self.violations == 0


def lyapunov_verify(spec, traj, tol = DERIVATIVE_TOL, start = None):
	'''
	Check that a Lyapunov candidate does not increase along a trajectory.

	Parameters
	----------
	spec: LyapunovSpec
		Candidate, region and equilibrium.
	traj: Trajectory
		Records the candidate is evaluated on.
	tol: float, optional
		Tolerance on positive derivatives, default is 1e-6.
	start: float, optional
		Only records at t >= start are checked, to skip a transient.

	Returns
	-------
	report: LyapunovReport
	'''
	data = traj.data
	if start is not None:
		data = data[data["t"] >= start]
	t = data["t"].to_numpy()
	inside = spec.contains(data["mean_x"].to_numpy())
	exit_time = None
	if not inside.all():
		first = int(np.argmin(inside))
		exit_time = float(t[first])
		data = data.iloc[:first]
		t = t[:first]
		logger.info("Lyapunov check: mean position leaves the region at "
				"t = %.6g, not applicable beyond", exit_time)
	rows = data.to_dict("records")
	values = np.array([spec.candidate(r, r["t"]) for r in rows], dtype = float)
	if len(values) < 2:
		return LyapunovReport(0., 0, 0., exit_time is None, exit_time, values)
	deriv = np.diff(values) / np.diff(t)
	bad = int(np.sum(deriv > tol))
	return LyapunovReport(float(deriv.max()), bad, bad / len(deriv),
			exit_time is None, exit_time, values)

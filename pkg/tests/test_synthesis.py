# Optimal force, reference path, feedback, cost and coupling.

import numpy as np
import pytest
from quantum_smart_matter.potential import HarmonicPotential, ControlLaw, \
		Drive
from quantum_smart_matter.propagator import EvolutionSpec, analytic_center, \
		ehrenfest_path, gaussian_moments
from quantum_smart_matter.synthesis import SteeringProblem, optimal_force, \
		reference_path, open_loop_law, feedback_law, control_cost, \
		optimality_certificate, coupling_law, detuned_frequency, \
		driven_response

FIG = SteeringProblem(1., 1., 5., 5.)


def test_problem_validation():
	with pytest.raises(ValueError):
		SteeringProblem(0., 1., 5., 5.)
	with pytest.raises(ValueError):
		SteeringProblem(1., 1., 5., 0.)


def test_optimal_force_reaches_target():
	f = optimal_force(FIG)
	assert analytic_center(1., 1., 0., f, 5.) == pytest.approx(5., abs = 1e-6)


@pytest.mark.parametrize("omega, p0, p_hat, T", [
	(0.5, -3., 4., 1.),
	(1.7, 2., -5., 9.3),
	(1.0, 0., 1., 2.5),
	(2.0, 2.9, 2.9, 7.)])
def test_endpoint_closure(omega, p0, p_hat, T):
	prob = SteeringProblem(omega, p0, p_hat, T)
	end = analytic_center(p0, omega, 0., optimal_force(prob), T)
	assert end == pytest.approx(p_hat, abs = 1e-6)


def test_closed_form_cost():
	f = optimal_force(FIG)
	assert f.closedFormCost() == pytest.approx(8.439, rel = 1e-3)
	report = control_cost(open_loop_law(FIG), None, 5.)
	assert report.J == pytest.approx(f.closedFormCost(), rel = 1e-8)
	assert report.breakdown["f"] == pytest.approx(report.J, rel = 1e-8)


def test_reference_path():
	ref = reference_path(FIG)
	assert ref(0.) == pytest.approx(1.)
	assert ref(5.) == pytest.approx(5., abs = 1e-9)
	for t in (0.7, 2.2, 4.1):
		assert ref(t) == pytest.approx(ref.quadrature(t), abs = 1e-8)


def test_feedback_law():
	with pytest.raises(ValueError):
		feedback_law(FIG, -1.)
	law = feedback_law(FIG, 10.)
	assert law.spring() == 10.
	assert not law.isAutonomous()
	assert law.uniformForce(5.) == pytest.approx(10. * 5. + law.f(5.))


def test_matched_feedback_tracks_reference():
	h = HarmonicPotential(1.)
	spec = EvolutionSpec.auto(5., steps = 1024)
	path = ehrenfest_path(1., 0., h, feedback_law(FIG, 10.), spec)
	ref = reference_path(FIG)
	assert np.max(np.abs(path.mean_x - ref(path.times))) < 1e-7


def test_feedback_reduces_mismatch_error():
	h = HarmonicPotential(1.)
	model = SteeringProblem(1.5, 1., 5., 5.)
	spec = EvolutionSpec.auto(5., steps = 1024)
	open_end = ehrenfest_path(1., 0., h, feedback_law(model, 0.), spec).final()
	fb_end = ehrenfest_path(1., 0., h, feedback_law(model, 10.), spec).final()
	assert open_end == pytest.approx(2.0690, abs = 1e-3)
	assert fb_end == pytest.approx(5.7829, abs = 1e-3)
	assert abs(fb_end - 5.) < abs(open_end - 5.)
	ratio = abs(open_end - 5.) / abs(fb_end - 5.)
	assert ratio == pytest.approx(3.744, rel = 1e-2)


def test_cost_needs_moments_with_spring():
	with pytest.raises(ValueError):
		control_cost(ControlLaw(k = 1.), None, 1.)


def test_cost_from_moments_and_records_agree():
	h = HarmonicPotential(1.)
	law = feedback_law(SteeringProblem(1.5, 1., 5., 5.), 2.)
	moments = gaussian_moments(1., 1 / np.sqrt(2), h, law, 5.)
	quad_cost = control_cost(law, moments, 5.)
	traj = ehrenfest_path(1., 0., h, law, EvolutionSpec.auto(5., steps = 4096,
		record_every = 1), sigma0 = 1 / np.sqrt(2))
	rec_cost = control_cost(law, traj, 5.)
	assert rec_cost.J == pytest.approx(quad_cost.J, rel = 1e-4)
	assert traj.final("cost_accum") == pytest.approx(quad_cost.J, rel = 1e-4)
	assert sum(quad_cost.breakdown.values()) == pytest.approx(quad_cost.J)


def test_certificate_passes():
	report = optimality_certificate(FIG, 20, seed = 7)
	assert report.attrs["passed"]
	assert (report["excess"] >= -1e-9).all()
	assert np.max(np.abs(report["endpoint_error"])) < 1e-6
	assert report["J_opt"].iloc[0] == pytest.approx(8.439, rel = 1e-3)


def test_certificate_is_deterministic():
	a = optimality_certificate(FIG, 5, seed = 3)
	b = optimality_certificate(FIG, 5, seed = 3)
	assert a.equals(b)


def test_unprojected_perturbations_violate_constraint():
	report = optimality_certificate(FIG, 5, seed = 3, project = False)
	assert (report["status"] == "constraint-violation").all()
	assert not report.attrs["passed"]


def test_certificate_needs_trials():
	with pytest.raises(ValueError):
		optimality_certificate(FIG, 0, seed = 1)


def test_coupling_law():
	c = coupling_law(1.5)
	f1, f2 = c.forces(1., -1.)
	assert f1 == pytest.approx(-3.)
	assert f1 + f2 == 0.
	assert c.controlPotential(1., -1.) == pytest.approx(3.)
	assert c.induced(1.).k == 1.5
	with pytest.raises(ValueError):
		coupling_law(-1.)


def test_detuned_frequency():
	assert detuned_frequency(1., 3.) == pytest.approx(2.)
	with pytest.raises(ValueError):
		detuned_frequency(1., -2.)


def test_response_grows_toward_drive():
	drive = Drive(0.05, 1.2)
	amps = [driven_response(1., W ** 2 - 1., drive, 60.)
			for W in (1.0, 1.1, 1.19)]
	assert amps[0] < amps[1] < amps[2]

# Potentials, control laws, programmed pairs and the coupled pair.

import numpy as np
import pytest
from quantum_smart_matter.wavepacket import make_grid, covariance
from quantum_smart_matter.potential import HarmonicPotential, ControlLaw, \
		ControlledHarmonic, TabulatedForce, Drive, ProgrammedPair, \
		CoupledPotential, eval_controlled, effective_potential, \
		displaced_pair, sign_program, constant_program, normal_modes, \
		coupled_ground_state, rotate


def test_harmonic():
	h = HarmonicPotential(2., center = 1.)
	assert h(3.) == pytest.approx(8.)
	assert h.maxFrequency() == 2.
	with pytest.raises(ValueError):
		HarmonicPotential(0.)


def test_control_law_validation():
	with pytest.raises(ValueError, match = "alpha"):
		ControlLaw(alpha = -1.)
	with pytest.raises(ValueError, match = "reference path"):
		ControlLaw(alpha = 1.)
	assert ControlLaw(k = 2.).isAutonomous()
	assert not ControlLaw(drive = Drive(0.1, 1.)).isAutonomous()


def test_eval_controlled():
	h = HarmonicPotential(1.)
	law = ControlLaw(k = 1., force = lambda t: 0.5 + 0. * np.asarray(t),
			alpha = 2., ref_path = lambda t: 1. + 0. * np.asarray(t))
	x = np.array([-1., 0., 2.])
	expected = 0.5 * 4 * x ** 2 - (2. + 0.5) * x
	assert eval_controlled(h, law, x, 0.3) == pytest.approx(expected)


def test_force_expectations():
	pot = ControlledHarmonic(HarmonicPotential(1.), ControlLaw(k = 3.,
		force = TabulatedForce([0., 1.], [1., 1.])))
	assert pot.frequency() == pytest.approx(2.)
	assert pot.forceExpect(0.5, 0.) == pytest.approx(-3 * 0.5 + 1.)
	# <(u - s x)^2> with <x> = 0.5, <x^2> = 1
	assert pot.forceSquareExpect(0.5, 1., 0.) == pytest.approx(
			9 * 1. - 2 * 3 * 1. * 0.5 + 1.)


def test_unbound_spring():
	with pytest.raises(ValueError, match = "Unbound"):
		ControlledHarmonic(HarmonicPotential(1.), ControlLaw(k = -2.))


def test_tabulated_force():
	f = TabulatedForce([0., 1., 2.], [0., 2., 0.])
	assert f(0.5) == pytest.approx(1.)
	assert f(5.) == 0.
	with pytest.raises(ValueError):
		TabulatedForce([0., 0.], [1., 1.])


def test_sign_program_boundary():
	assert list(sign_program(np.array([-1., 0., 1e-12]))) == [0, 0, 1]


def test_effective_potential_selects_branch():
	pair = displaced_pair(1., 1.)
	x = np.array([-1., 0., 1.])
	v = effective_potential(pair, x)
	assert v == pytest.approx([0., 0.5, 0.])
	assert pair.effective()(x) == pytest.approx(v)


def test_constant_program_keeps_one_branch():
	pair = ProgrammedPair(HarmonicPotential(1., -1.), HarmonicPotential(1., 1.),
			constant_program(1))
	x = np.linspace(-3, 3, 7)
	assert effective_potential(pair, x) == pytest.approx(pair.v1(x))


def test_program_must_return_bits():
	pair = ProgrammedPair(HarmonicPotential(1.), HarmonicPotential(1.),
			lambda x: 2 * np.ones_like(x))
	with pytest.raises(ValueError):
		pair.bits(np.zeros(3))


def test_normal_modes():
	assert normal_modes(CoupledPotential(1., 1.5)) == pytest.approx((1., 2.))
	with pytest.raises(ValueError):
		CoupledPotential(1., -0.1)


def test_coupled_potential_rotates_to_modes():
	c = CoupledPotential(1., 1.5)
	x1, x2 = np.meshgrid(np.linspace(-2, 2, 5), np.linspace(-1, 3, 5),
			indexing = "ij")
	y1, y2 = rotate(x1, x2)
	w1, w2 = normal_modes(c)
	assert c((x1, x2)) == pytest.approx(0.5 * w1 ** 2 * y1 ** 2 +
			0.5 * w2 ** 2 * y2 ** 2)


@pytest.mark.parametrize("k, expected", [
	(0., 0.),
	(1.5, 0.125)])
def test_coupled_ground_covariance(k, expected):
	g = make_grid(-8., 8., 256)
	wf = coupled_ground_state(g, CoupledPotential(1., k))
	assert covariance(wf) == pytest.approx(expected, abs = 5e-3)


def test_coupled_ground_state_must_fit():
	g = make_grid(-1., 1., 64)
	with pytest.raises(ValueError):
		coupled_ground_state(g, CoupledPotential(1., 0.))

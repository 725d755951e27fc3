# Controlled wave packet simulations: steering, feedback, coupling and
# programmed potentials, run as presets from the command line.
# If imported as a package, the modules could be used in console.

from . import plot
from .wavepacket import Grid, make_grid, GaussianState, WaveFunction, \
		gaussian_init, Trajectory
from .potential import HarmonicPotential, ControlLaw, ControlledHarmonic, \
		ProgrammedPair, CoupledPotential, effective_potential, displaced_pair
from .propagator import EvolutionSpec, BoundaryError, evolve, \
		analytic_center, ehrenfest_path
from .synthesis import SteeringProblem, optimal_force, feedback_law, \
		control_cost, optimality_certificate, coupling_law
from .register import RegisterState, TickSchedule, classify_init, \
		control_tick, evolve_programmed
from .stability import LyapunovSpec, energy_drift, lyapunov_verify
from .param import ParamMan, ConfigError
from .main import RunSummary, ScenarioError, list_presets, load_config, \
		run_scenario, run_suite
from .steering import Steering
from .oscillators import Oscillators
from .programmed import Programmed
from .stabilitySuite import StabilitySuite

# Command line entry point

import sys
import argparse
import logging
from .param import ParamMan, ConfigError
from .main import ScenarioError, SUITES, list_presets, load_config, \
		run_scenario, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_ERROR = 2


def build_parser():
	parser = argparse.ArgumentParser(prog = "quantum_smart_matter",
			description = ("Simulate controlled wave packets and reproduce the "
				"steering, feedback, coupling and programmed potential results."))
	verbosity = parser.add_mutually_exclusive_group()
	verbosity.add_argument("--quiet", action = "store_true",
			help = "only report warnings and errors")
	verbosity.add_argument("--verbose", action = "store_true",
			help = "report debugging output")
	sub = parser.add_subparsers(dest = "command", required = True)

	run = sub.add_parser("run", help = "run one scenario")
	run.add_argument("--config", default = None,
			help = "YAML scenario file")
	run.add_argument("--preset", default = None,
			help = "preset name, overrides the one in the config file")
	run.add_argument("--out-dir", default = None,
			help = "directory for data files and summaries")
	run.add_argument("--seed", type = int, default = None,
			help = "seed for randomized certificates")

	sub.add_parser("list-presets", help = "list presets with descriptions")

	check = sub.add_parser("check", help = "run a suite of presets")
	check.add_argument("--suite", default = "all", choices = list(SUITES),
			help = "suite to run, default all")
	check.add_argument("--out-dir", default = None,
			help = "directory for data files and summaries")
	return parser


def _report(summaries):
	for s in summaries:
		print("{}: {} ({}/{} checks passed, {:.1f} s)".format(s.name,
			"pass" if s.passed else "FAIL", sum(c.passed for c in s.checks),
			len(s.checks), s.wall_time))
		for c in s.checks:
			if not c.passed:
				print("  {} = {:.6g}, expected {}".format(c.name, c.value,
					c.target))
	return EXIT_OK if all(s.passed for s in summaries) else EXIT_CHECKS_FAILED


def _runCommand(args):
	paramMan = ParamMan()
	if args.config is not None:
		paramMan.load(args.config)
	if args.preset is not None:
		paramMan.set("preset", args.preset)
	if args.seed is not None:
		paramMan.set("seed", args.seed)
	if "preset" not in paramMan.params:
		raise ConfigError("preset: give --preset or a config file naming one")
	return _report([run_scenario(load_config(paramMan), args.out_dir)])


def main(argv = None):
	'''
	Run the command line interface.

	Parameters
	----------
	argv: list of str, optional
		Arguments, default is sys.argv[1:].

	Returns
	-------
	code: int
		0 when every check passed, 1 when a check failed, 2 on
		configuration or runtime errors.
	'''
	args = build_parser().parse_args(argv)
	level = logging.INFO
	if args.quiet:
		level = logging.WARNING
	elif args.verbose:
		level = logging.DEBUG
	logging.basicConfig(level = level,
			format = "%(levelname)s %(name)s: %(message)s")
	try:
		if args.command == "list-presets":
			for name, description in list_presets():
				print("{:<24}{}".format(name, description))
			return EXIT_OK
		if args.command == "run":
			return _runCommand(args)
		return _report(run_suite(args.suite, args.out_dir))
	except ConfigError as e:
		logger.error("%s", e)
		return EXIT_ERROR
	except ScenarioError as e:
		logger.error("%s", e)
		return EXIT_ERROR
	except OSError as e:
		logger.error("%s", e)
		return EXIT_ERROR


if __name__ == "__main__":
	sys.exit(main())

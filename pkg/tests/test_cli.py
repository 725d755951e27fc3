# Command line surface.

import pytest
import yaml
from quantum_smart_matter.start import build_parser, main, EXIT_OK, \
		EXIT_ERROR


def test_parser_defaults():
	parser = build_parser()
	args = parser.parse_args(["run", "--preset", "fig-position"])
	assert args.command == "run"
	assert args.preset == "fig-position"
	assert args.config is None and args.out_dir is None and args.seed is None
	args = parser.parse_args(["check"])
	assert args.suite == "all"
	assert parser.parse_args(["list-presets"]).command == "list-presets"


def test_parser_rejects():
	parser = build_parser()
	with pytest.raises(SystemExit):
		parser.parse_args([])
	with pytest.raises(SystemExit):
		parser.parse_args(["check", "--suite", "nothing"])
	with pytest.raises(SystemExit):
		parser.parse_args(["--quiet", "--verbose", "list-presets"])
	with pytest.raises(SystemExit):
		parser.parse_args(["run", "--seed", "x"])


def test_list_presets(capsys):
	assert main(["list-presets"]) == EXIT_OK
	out = capsys.readouterr().out
	for name in ("fig-position", "fig-feedback", "coupled-correlation",
			"programmed-effective", "resonance-shift", "optimality-certificate",
			"stability-suite"):
		assert name in out


def test_run_needs_preset():
	assert main(["--quiet", "run"]) == EXIT_ERROR


def test_unknown_preset(caplog):
	assert main(["run", "--preset", "fig-nothing"]) == EXIT_ERROR
	assert "available" in caplog.text


def test_missing_config_file(tmp_path):
	assert main(["run", "--config", str(tmp_path / "none.yaml")]) == EXIT_ERROR


def test_invalid_config_values(tmp_path, caplog):
	path = tmp_path / "bad.yaml"
	path.write_text(yaml.safe_dump({"preset": "fig-position",
		"physics": {"T": -5.}, "numerics": {"grid_n": 1000}}))
	assert main(["run", "--config", str(path)]) == EXIT_ERROR
	assert "physics.T" in caplog.text
	assert "numerics.grid_n" in caplog.text


def test_run_certificate(tmp_path, capsys):
	code = main(["--quiet", "run", "--preset", "optimality-certificate",
		"--seed", "5", "--out-dir", str(tmp_path)])
	assert code == EXIT_OK
	assert "optimality-certificate: pass" in capsys.readouterr().out
	saved = yaml.safe_load(open(tmp_path /
		"optimality-certificate_resolved.yaml"))
	assert saved["seed"] == 5


@pytest.mark.slow
def test_run_from_config(tmp_path):
	path = tmp_path / "scenario.yaml"
	path.write_text(yaml.safe_dump({"preset": "fig-position",
		"outputs": [{"channel": "controlled", "path": "position.csv"}]}))
	out = tmp_path / "out"
	assert main(["run", "--config", str(path), "--out-dir", str(out)]) == EXIT_OK
	assert (out / "position.csv").exists()
	assert not (out / "fig-position_uncontrolled.csv").exists()
	assert (out / "fig-position_summary.yaml").exists()


@pytest.mark.slow
def test_unknown_output_channel(tmp_path):
	path = tmp_path / "scenario.yaml"
	path.write_text(yaml.safe_dump({"preset": "fig-position",
		"outputs": [{"channel": "energy_plot", "path": "e.csv"}]}))
	assert main(["run", "--config", str(path), "--out-dir",
		str(tmp_path / "out")]) == EXIT_ERROR


@pytest.mark.slow
def test_run_stability_writes_resolved(tmp_path):
	code = main(["--quiet", "run", "--preset", "stability-suite", "--out-dir",
		str(tmp_path)])
	assert code == EXIT_OK
	saved = yaml.safe_load(open(tmp_path / "stability-suite_resolved.yaml"))
	assert isinstance(saved["numerics"]["dt"], float)

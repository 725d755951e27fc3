# Plotting data: curves collected by the scenarios are emitted as data
# files with a manifest that external plotters can read.

import numpy as np
import pandas as pd
from .wavepacket import Trajectory

EXTRA_COLUMNS = ["mean_x2", "covariance", "mismatch_weight"]


def trajectory_table(traj):
	'''
	Trajectory records in the data file layout: the standard columns first,
	absent ones left empty, then the 2D and programmed columns when present,
	then any others.

	Parameters
	----------
	traj: Trajectory or pandas.DataFrame

	Returns
	-------
	table: pandas.DataFrame
	'''
	data = traj.data if isinstance(traj, Trajectory) else pd.DataFrame(traj)
	cols = list(Trajectory.COLUMNS)
	cols += [c for c in EXTRA_COLUMNS if c in data.columns]
	cols += [c for c in data.columns if c not in cols]
	return data.reindex(columns = cols).astype(float)


def plot_trace_buffer(traj, channel = "mean_x", **kargs):
	'''
	Collect a curve specification in the list ax, which could be used for
	actual plotting or written out with export_curves.

	Parameters
	----------
	traj: Trajectory
		Records holding the curve.
	channel: string, optional
		Column plotted against t, default is "mean_x".
	label: string
		Curve name, also the output channel it is written to.
	ax: list, optional
		Curve specifications collected so far. Default is an empty list.

	Returns
	-------
	ax: list
		Of curve dictionaries.
	'''
	ax = kargs.pop("ax", [])
	if not isinstance(traj, Trajectory):
		traj = Trajectory(traj)
	if not traj.has(channel):
		raise ValueError("Trajectory has no channel {!r}.".format(channel))
	kargs["traj"] = traj
	kargs["channel"] = channel
	kargs.setdefault("label", channel)
	ax.append(kargs)
	return ax


def export_curves(ax, proj, preset, outputs = None):
	'''
	Write each collected curve's trajectory to a data file and a manifest
	describing the curves.

	Parameters
	----------
	ax: list
		Curve specifications from plot_trace_buffer.
	proj: Project
		Output manager.
	preset: string
		Preset name used in file names.
	outputs: list, optional
		Pairs (channel, path) restricting the written curves and naming
		their files. Default writes every curve under the generated name.

	Returns
	-------
	manifest: list
		Curve entries (label, file, x, y).
	'''
	labels = [c["label"] for c in ax]
	if outputs:
		unknown = [ch for ch, _ in outputs if ch not in labels]
		if unknown:
			raise ValueError("Unknown output channels {}, available: {}".format(
				unknown, labels))
		names = dict(outputs)
	else:
		names = {lb: proj.genName(preset, lb) for lb in labels}
	manifest = []
	for c in ax:
		if c["label"] not in names:
			continue
		fileName = names[c["label"]]
		proj.writeTable(trajectory_table(c["traj"]), fileName)
		manifest.append({"label": c["label"], "file": fileName, "x": "t",
			"y": c["channel"]})
	if manifest:
		proj.writeYaml({"preset": preset, "curves": manifest},
				proj.genName(preset, "curves", ".yaml"))
	return manifest


def curve_difference(a, b, channel = "mean_x"):
	'''
	Largest |a - b| of a channel, b interpolated onto the record times of a.
	'''
	return float(np.max(np.abs(a.channel(channel) -
		b.interp(a.times, channel))))

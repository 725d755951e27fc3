# Frequency and amplitude measurements on recorded observable traces.

import logging
import numpy as np
from scipy.optimize import curve_fit

logger = logging.getLogger(__name__)


class SignalProc:
	'''
	Mixin measuring oscillation frequency and amplitude of recorded
	mean position traces.
	'''
	def __init__(self):
		pass

	def oscillationFit(self, t, x, p0 = None):
		'''
		Fit a sinusoid, used to measure oscillation frequencies of recorded
		mean positions.

		Parameters
		----------
		t: numpy.array
			Record times.
		x: numpy.array
			Trace to fit.
		p0: array_like, optional
			Initial guess of (amplitude, frequency, phase, offset), default as
			None, in which case a guess will be made from the spectrum of the
			trace.

		Returns
		-------
		amp: float
			Amplitude, non-negative.
		freq: float
			Angular frequency.
		phase: float
			Phase at t = 0.
		offset: float
			Constant offset.
		'''
		t = np.asarray(t, dtype = float)
		x = np.asarray(x, dtype = float)
		if p0 is None:
			offset = np.mean(x)
			g_freq = self.zeroCrossingFrequency(t, x - offset)
			if not np.isfinite(g_freq):
				spec = np.abs(np.fft.rfft(x - offset))
				freqs = 2 * np.pi * np.fft.rfftfreq(len(t), t[1] - t[0])
				g_freq = freqs[1 + np.argmax(spec[1:])]
			g_amp = 0.5 * (x.max() - x.min())
			g_phase = np.arccos(np.clip((x[0] - offset) / g_amp, -1, 1)) \
					if g_amp > 0 else 0.
			p_0 = [g_amp, g_freq, g_phase, offset]
		else:
			p_0 = p0
		try:
			popt, pcov = curve_fit(self.fit_fun, t, x, p0 = p_0, maxfev = 20000)
		except RuntimeError:
			logger.error("Oscillation fit did not converge from %s", p_0)
			raise
		amp, freq, phase, offset = popt
		if amp < 0:
			amp = -amp
			phase = phase + np.pi
		return float(amp), float(abs(freq)), float(phase), float(offset)

	def fit_fun(self, t, amp, freq, phase, offset):
		'''
		Sinusoid amp * cos(freq * t - phase) + offset.
		'''
		return amp * np.cos(freq * t - phase) + offset

	def zeroCrossingFrequency(self, t, x):
		'''
		Angular frequency from the mean spacing of sign changes, using
		linear interpolation between records. NaN with fewer than two
		crossings.
		'''
		t = np.asarray(t, dtype = float)
		x = np.asarray(x, dtype = float)
		idx = np.nonzero(np.signbit(x[:-1]) != np.signbit(x[1:]))[0]
		if len(idx) < 2:
			return np.nan
		tc = t[idx] - x[idx] * (t[idx + 1] - t[idx]) / (x[idx + 1] - x[idx])
		half = np.mean(np.diff(tc))
		return float(np.pi / half)

	def peakAmplitude(self, t, x, win = None):
		'''
		Largest |x| within a time window.

		Parameters
		----------
		t: numpy.array
			Record times.
		x: numpy.array
			Trace.
		win: array_like, optional
			Pair of times, default is None for the whole trace.
		'''
		t = np.asarray(t)
		x = np.asarray(x)
		if win is not None:
			sel = (t >= win[0]) & (t <= win[1])
			x = x[sel]
		return float(np.max(np.abs(x)))

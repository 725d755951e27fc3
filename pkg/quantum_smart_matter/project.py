# Manage the output directory of scenario runs: file naming and atomic
# writes of data tables, parameters and summaries.

import os
import tempfile
import logging
import yaml

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


class Project:
	'''
	Contain functions used to write scenario outputs.

	Attributes
	----------
	workDir: string
		Directory the output files go to.
	name: string
		Name of the run, used as file name prefix.
	formatParam: dictionary
		File naming parameters: "link" between name parts and "suffix"
		of data tables.
	written: list
		Paths written so far, in order.
	'''
	def __init__(self, workDir = '', name = '', formatParam = {}):
		'''
		Parameters
		----------
		workDir: string, optional
			Output directory, created when missing. Default is empty, in
			which case nothing is written to disk.
		name: string, optional
			Run name, default is empty.
		formatParam: dictionary, optional
			File naming parameters.
		'''
		self.workDir = workDir
		self.name = name
		self.formatParam = {"link": '_', "suffix": ".csv"}
		self.formatParam.update(formatParam)
		self.written = []
		if len(workDir):
			os.makedirs(workDir, exist_ok = True)

	def isActive(self):
		return len(self.workDir) > 0

	def genName(self, preset, channel, suffix = None):
		'''
		Generate the file name of one channel of a preset.

		Parameters
		----------
		preset: string
			Preset name.
		channel: string
			Output channel, e.g. "controlled" or "summary".
		suffix: string, optional
			File suffix, default is the data table suffix.

		Returns
		-------
		fileName: string
		'''
		p = self.formatParam
		if suffix is None:
			suffix = p["suffix"]
		return preset + p["link"] + channel + suffix

	def path(self, fileName):
		return os.path.join(self.workDir, fileName)

	def _atomicWrite(self, fileName, text):
		target = self.path(fileName)
		folder = os.path.dirname(target) or '.'
		os.makedirs(folder, exist_ok = True)
		fd, tmp = tempfile.mkstemp(dir = folder, prefix = ".tmp_")
		try:
			with os.fdopen(fd, 'w', newline = '') as f:
				f.write(text)
			os.replace(tmp, target)
		except BaseException:
			if os.path.exists(tmp):
				os.remove(tmp)
			raise
		self.written.append(target)
		logger.debug("wrote %s", target)
		return target

	def writeTable(self, df, fileName):
		'''
		Write a data table as comma separated text with 17 significant
		digits, replacing any previous file atomically.

		Parameters
		----------
		df: pandas.DataFrame
			Table to write, index not included.
		fileName: string
			File name relative to workDir.

		Returns
		-------
		target: string
			Path written, None when the project has no directory.
		'''
		if not self.isActive():
			return None
		text = df.to_csv(index = False, float_format = FLOAT_FORMAT,
				lineterminator = '\n')
		return self._atomicWrite(fileName, text)

	def writeYaml(self, content, fileName):
		if not self.isActive():
			return None
		return self._atomicWrite(fileName, yaml.safe_dump(content,
			sort_keys = False))

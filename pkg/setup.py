# Set up the quantum_smart_matter package.

from setuptools import setup

def readme():
	with open("README.md") as f:
		return f.read()

setup(name = "quantum_smart_matter",
      version = '0.1.0',
      description = ("Simulation of controlled quantum wave packets: steering, "
		  "feedback, coupled oscillators and programmed potentials."),
	  long_description = readme(),
	  long_description_content_type = "text/markdown",
      license = "MIT",
      packages = ["quantum_smart_matter"],
	  install_requires = [
		  "numpy >= 1.17.3",
		  "pandas >= 1.5",
		  "scipy >= 1.3.1",
		  "PyYAML >= 5.1.2",
		  "pydantic >= 2"],
	  extras_require = {
		  "tests": ["pytest"]},
	  entry_points = {
		  "console_scripts": [
			  "quantum_smart_matter = quantum_smart_matter.start:main"]},
      zip_safe = False,
	  python_requires = ">=3.8",
	  classifiers = [
		  "Development Status :: 3 - Alpha",
		  "License :: OSI Approved :: MIT License",
		  "Programming Language :: Python :: 3.8"]
	  )

from setuptools import setup
from spherecells import commandline_parser
from pathlib import Path
if commandline_parser.DEBUG:
	message = "The scripts are currently in debug mode!"
	raise ValueError(message)
FOLDER = Path(__file__).parent
README = FOLDER / "README.md"

with README.open() as readmefile:
	LONG_DESCRIPTION = readmefile.read()

setup(
	name = 'cellcert',
	version = commandline_parser.__VERSION__,
	packages = [
		'spherecells', 'spherecells.numeric', 'spherecells.tessellation', 'spherecells.certifier', 'spherecells.lab',
		'spherecells.codec', 'spherecells.dataio', 'spherecells.workflows'
	],
	extras_require = {
		'To run tests': ["pytest"]
	},
	provides = 'cellcert',
	license = 'MIT',
	description = 'Certified cell radii for Gaussian hyperplane tessellations of the sphere, with Monte Carlo checks of the concentration bounds behind them and a one-bit encoder.',
	long_description = LONG_DESCRIPTION,
	long_description_content_type='text/markdown',
	install_requires = [
		'numpy>=1.22', 'scipy>=1.9.0', 'pandas>=1.5.0', 'loguru', 'tqdm'
	],
	tests_requires = ['pytest'],
	classifiers = [
		"Programming Language :: Python :: 3",
		"License :: OSI Approved :: MIT License",
		"Operating System :: OS Independent",
	],
	scripts = ["cellcert"]
)

from pathlib import Path
from typing import Union


def check_folder(path: Union[str, Path]) -> Path:
	path = Path(path)
	if not path.exists():
		path.mkdir(parents = True)
	return path.absolute()


class OutputFilenames:
	""" Used to organize the files generated by a workflow.
		.
		|---- {name}.csv
		|---- {name}.summary.json
		|---- supplementary-files/
		|----|---- {name}.options.json
	"""

	def __str__(self):
		string = f"OutputFilenames('{self.folder_output}')"
		return string

	def __init__(self, output: Union[str, Path], name: str, suffix = 'csv'):
		self.name = name
		self.suffix = suffix

		self.folder_output = check_folder(output)
		self.folder_supplementary = check_folder(self.folder_output / "supplementary-files")

		self.filename_table: Path = self.folder_output / (name + f'.{suffix}')
		self.filename_summary: Path = self.folder_output / (name + '.summary.json')
		self.filename_options: Path = self.folder_supplementary / (name + '.options.json')

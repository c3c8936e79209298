import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

import pandas

try:
	from spherecells.lab.experiments import ExperimentResult
except ModuleNotFoundError:
	from ..lab.experiments import ExperimentResult

SUMMARY_SCHEMA = 1
# Round-trippable doubles so reruns give byte-identical tables.
FLOAT_FORMAT = "%.17g"


def _jsonable(value: Any) -> Any:
	if isinstance(value, dict):
		return {str(key): _jsonable(item) for key, item in value.items()}
	if isinstance(value, (list, tuple)):
		return [_jsonable(item) for item in value]
	if isinstance(value, float) and not math.isfinite(value):
		# JSON has no nan or infinity.
		return None if math.isnan(value) else str(value)
	if isinstance(value, Path):
		return str(value)
	return value


@dataclass
class DataWorkflowBasic:
	# Should only cover relevant data about the scripts as a whole.
	version: str  # The version of the scripts
	program_options: Dict[str, Any]  # The resolved configuration and command-line options.

	def save(self, filename: Path):
		options = dict(self.program_options)
		options['version'] = self.version
		filename.write_text(json.dumps(_jsonable(options), sort_keys = True, indent = 4))


def save_table(table: pandas.DataFrame, filename: Path, comments: Iterable[str] = ()) -> Path:
	"""
		Writes `table` as CSV preceded by '#' comment lines. The column order is the table's order.
	"""
	lines = "".join(f"# {comment}\n" for comment in comments)
	body = table.to_csv(index = False, float_format = FLOAT_FORMAT, lineterminator = "\n")
	filename.write_text(lines + body)
	return filename


def read_table(filename: Path) -> pandas.DataFrame:
	return pandas.read_csv(filename, comment = '#')


def summary_data(result: ExperimentResult, version: str, wall_time: Optional[float] = None) -> Dict[str, Any]:
	data = result.summary()
	data["schema"] = SUMMARY_SCHEMA
	data["version"] = version
	if wall_time is not None:
		data["wall_time"] = wall_time
	return _jsonable(data)


def save_summary(result: ExperimentResult, filename: Path, version: str, wall_time: Optional[float] = None) -> Path:
	filename.write_text(json.dumps(summary_data(result, version, wall_time), sort_keys = True, indent = 4))
	return filename

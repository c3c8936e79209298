"""
	Experiment configuration files.

	One JSON object per experiment, for example
		{
			"experiment": "subset-size",
			"d": 16, "M": 16384, "trials": 200, "master_seed": 1,
			"constants": {"C1": 1.0},
			"output_path": "output/subset-size"
		}
	Unknown fields are rejected. Every error names the offending field and, when the configuration came from
	a file, the line it is on.
"""
import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

try:
	from spherecells.certifier import SolverOptions
	from spherecells.errors import ConfigurationError
	from spherecells.tessellation import ConstantsConfig
	from spherecells.tessellation.constants import MINIMUM_DIMENSION, MINIMUM_FRAME_SIZE
except ModuleNotFoundError:
	from ..certifier import SolverOptions
	from ..errors import ConfigurationError
	from ..tessellation import ConstantsConfig
	from ..tessellation.constants import MINIMUM_DIMENSION, MINIMUM_FRAME_SIZE

# The fields each experiment needs. 'dimensions' is satisfied by either `d` or `d_list`.
EXPERIMENTS: Dict[str, List[str]] = {
	"subset-size":      ["d", "M", "trials"],
	"margin-count":     ["d", "M", "trials"],
	"gram-sigma-min":   ["d", "M", "trials"],
	"covariance":       ["dimensions", "n_list", "trials"],
	"truncated-moment": ["dimensions", "thresholds", "samples"],
	"halfspace":        ["d", "trials"],
	"uniform-radius":   ["d", "M", "x_count"],
	"radius-scaling":   ["dimensions", "M_list", "trials"],
	"rate-distortion":  ["d", "M_list", "trials"],
	"covering":         ["d", "M", "x_count"]
}
# Experiments whose dimensions build Gaussian frames.
FRAME_EXPERIMENTS = [
	"subset-size", "margin-count", "gram-sigma-min", "halfspace", "uniform-radius", "radius-scaling", "rate-distortion",
	"covering"
]


@dataclass
class ExperimentConfig:
	experiment: str
	master_seed: int
	d: Optional[int] = None
	M: Optional[int] = None
	d_list: List[int] = field(default_factory = list)
	M_list: List[int] = field(default_factory = list)
	n_list: List[int] = field(default_factory = list)
	trials: Optional[int] = None
	x_count: Optional[int] = None
	# Truncation thresholds, one per dimension of the truncated-moment check, or the single threshold
	# of the covariance experiment.
	thresholds: List[float] = field(default_factory = list)
	t: float = 3.0
	samples: Optional[int] = None
	# Size of the fixed set in the halfspace experiment; round(C1 d ln d) when missing.
	size_V: Optional[int] = None
	# Radius constant fitted by an earlier radius-scaling run, used by the rate-distortion check.
	fitted_C5: Optional[float] = None
	constants: ConstantsConfig = field(default_factory = ConstantsConfig)
	solver: SolverOptions = field(default_factory = SolverOptions)
	output_path: Path = Path("output")
	name: Optional[str] = None

	@property
	def dimensions(self) -> List[int]:
		return list(self.d_list) if self.d_list else ([self.d] if self.d is not None else [])

	@property
	def basename(self) -> str:
		return self.name if self.name else self.experiment

	@classmethod
	def from_dict(cls, values: Dict[str, Any], text: str = "") -> "ExperimentConfig":
		return parse_config(values, text)

	def to_dict(self) -> Dict[str, Any]:
		values = asdict(self)
		values["output_path"] = str(self.output_path)
		return values

	def validate(self) -> "ExperimentConfig":
		validate_config(self)
		return self


def _locate(text: str, key: str) -> str:
	""" 'line N' of the first occurrence of the quoted key in the source text. """
	marker = f'"{key.split(".")[-1]}"'
	position = text.find(marker) if text else -1
	if position < 0:
		return key
	return f"{key} (line {text.count(chr(10), 0, position) + 1})"


def _fail(message: str, key: str, text: str = ""):
	location = _locate(text, key)
	raise ConfigurationError(f"{location}: {message}", location = location)


def _check_integer(value: Any, key: str, text: str, minimum: int = 0) -> int:
	if isinstance(value, bool) or not isinstance(value, int):
		_fail(f"expected an integer, got {value!r}", key, text)
	if value < minimum:
		_fail(f"expected a value of at least {minimum}, got {value}", key, text)
	return value


def _check_number(value: Any, key: str, text: str) -> float:
	if isinstance(value, bool) or not isinstance(value, (int, float)):
		_fail(f"expected a number, got {value!r}", key, text)
	return float(value)


def _check_list(value: Any, key: str, text: str, check) -> list:
	if not isinstance(value, list):
		_fail(f"expected a list, got {value!r}", key, text)
	return [check(item, f"{key}[{index}]", text) for index, item in enumerate(value)]


def _nested(values: Any, kind, key: str, text: str):
	if not isinstance(values, dict):
		_fail(f"expected an object, got {values!r}", key, text)
	known = {item.name for item in fields(kind)}
	for name in values:
		if name not in known:
			_fail(f"unknown field, expected one of {sorted(known)}", f"{key}.{name}", text)
	try:
		return kind.from_dict(values)
	except (TypeError, ValueError) as exception:
		_fail(str(exception), key, text)


def parse_config(values: Any, text: str = "") -> ExperimentConfig:
	if not isinstance(values, dict):
		_fail("the configuration must be a JSON object", "configuration", text)
	known = {item.name for item in fields(ExperimentConfig)}
	for key in values:
		if key not in known:
			_fail(f"unknown field, expected one of {sorted(known)}", key, text)
	for key in ["experiment", "master_seed"]:
		if values.get(key) is None:
			_fail("missing required field", key, text)

	parsed: Dict[str, Any] = dict()
	for key, value in values.items():
		if value is None:
			continue
		if key == "experiment" or key == "name":
			if not isinstance(value, str):
				_fail(f"expected a string, got {value!r}", key, text)
			parsed[key] = value
		elif key in ("master_seed", "d", "M", "trials", "x_count", "samples", "size_V"):
			parsed[key] = _check_integer(value, key, text)
		elif key in ("d_list", "M_list", "n_list"):
			parsed[key] = _check_list(value, key, text, lambda item, label, source: _check_integer(item, label, source, 1))
		elif key == "thresholds":
			parsed[key] = _check_list(value, key, text, _check_number)
		elif key in ("t", "fitted_C5"):
			parsed[key] = _check_number(value, key, text)
		elif key == "constants":
			parsed[key] = _nested(value, ConstantsConfig, key, text)
		elif key == "solver":
			parsed[key] = _nested(value, SolverOptions, key, text)
		elif key == "output_path":
			if not isinstance(value, str):
				_fail(f"expected a path string, got {value!r}", key, text)
			parsed[key] = Path(value)
	if parsed["master_seed"] >= 2 ** 64:
		_fail("the seed must fit in 64 bits", "master_seed", text)
	config = ExperimentConfig(**parsed)
	validate_config(config, text)
	return config


def validate_config(config: ExperimentConfig, text: str = ""):
	""" Checks the fields the experiment needs and the preconditions of the experiment. """
	if config.experiment not in EXPERIMENTS:
		_fail(f"unknown experiment '{config.experiment}', expected one of {sorted(EXPERIMENTS)}", "experiment", text)
	for requirement in EXPERIMENTS[config.experiment]:
		if requirement == "dimensions":
			if not config.dimensions:
				_fail("this experiment needs `d` or `d_list`", "d", text)
		elif getattr(config, requirement) in (None, []):
			_fail(f"missing required field for '{config.experiment}'", requirement, text)
	for key in ("trials", "x_count", "samples"):
		value = getattr(config, key)
		if value is not None and value < 1:
			_fail(f"expected at least 1, got {value}", key, text)

	name = config.experiment
	if name in FRAME_EXPERIMENTS:
		for d in config.dimensions:
			if d < MINIMUM_DIMENSION:
				_fail(f"frames need d >= {MINIMUM_DIMENSION}, got {d}", "d", text)
			sizes = ([config.M] if config.M is not None else []) + list(config.M_list)
			for M in sizes:
				if M <= 2 * d or M < MINIMUM_FRAME_SIZE:
					_fail(f"frames need M > 2d and M >= {MINIMUM_FRAME_SIZE}, got M = {M} with d = {d}", "M", text)
	if name == "rate-distortion" and any(b <= a for a, b in zip(config.M_list, config.M_list[1:])):
		_fail(f"M_list must be increasing, got {config.M_list}", "M_list", text)
	if name == "covariance":
		if len(config.thresholds) > 1:
			_fail("the covariance experiment takes a single threshold", "thresholds", text)
		for d in config.dimensions:
			if d < 2:
				_fail(f"the covariance experiment needs d >= 2, got {d}", "d", text)
			for n in config.n_list:
				if n < d:
					_fail(f"the covariance experiment needs n >= d, got n = {n} with d = {d}", "n_list", text)
	if name == "truncated-moment" and len(config.thresholds) != len(config.dimensions):
		_fail("give one threshold per dimension", "thresholds", text)


def read_json(filename: Union[str, Path]) -> Tuple[Any, str]:
	filename = Path(filename)
	if not filename.exists():
		message = f"The configuration file '{filename}' does not exist."
		raise ConfigurationError(message, location = str(filename))
	text = filename.read_text()
	try:
		return json.loads(text), text
	except json.JSONDecodeError as exception:
		location = f"line {exception.lineno}, column {exception.colno}"
		message = f"{filename}: invalid JSON at {location}: {exception.msg}"
		raise ConfigurationError(message, location = location) from exception


def load_config(filename: Union[str, Path]) -> ExperimentConfig:
	values, text = read_json(filename)
	return parse_config(values, text)


def load_settings(filename: Optional[Union[str, Path]]) -> Tuple[ConstantsConfig, SolverOptions]:
	"""
		Reads the optional `constants` and `solver` objects the single-shot tools accept. Any other field is
		ignored so an experiment configuration can be reused.
	"""
	if filename is None:
		return ConstantsConfig(), SolverOptions()
	values, text = read_json(filename)
	if not isinstance(values, dict):
		_fail("the configuration must be a JSON object", "configuration", text)
	constants = _nested(values.get("constants", {}), ConstantsConfig, "constants", text)
	solver = _nested(values.get("solver", {}), SolverOptions, "solver", text)
	return constants, solver

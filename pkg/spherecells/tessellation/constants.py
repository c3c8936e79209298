import math
from dataclasses import asdict, dataclass
from typing import Any, Dict

try:
	from spherecells.errors import InvalidArgumentError
except ModuleNotFoundError:
	from ..errors import InvalidArgumentError

MINIMUM_DIMENSION = 3
MINIMUM_FRAME_SIZE = 8


@dataclass(frozen = True)
class ConstantsConfig:
	"""
		The absolute constants of the radius theorem. The theorem leaves them unnamed, so every one defaults
		to 1 and experiments report fitted values instead of relying on these.
	Parameters
	----------
	C1: Scales the size of the fixed index set V, |V| = round(C1 d ln d).
	C2: Scales the band width tau.
	C3, C4: Lower and upper constants of the subset size band C d ln d ln M.
	C5: Scales the radius bound and the margin eta.
	chernoff_c: The constant of the multiplicative Chernoff bound 2 exp(-c s^2 E).
	covariance_C: The constant of the covariance concentration bound.
	"""
	C1: float = 1.0
	C2: float = 1.0
	C3: float = 1.0
	C4: float = 1.0
	C5: float = 1.0
	chernoff_c: float = 1.0 / 3.0
	covariance_C: float = 4.0

	def __post_init__(self):
		for key, value in asdict(self).items():
			if not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
				message = f"The constant '{key}' must be a finite positive number, got {value!r}"
				raise InvalidArgumentError(message)

	@classmethod
	def from_dict(cls, values: Dict[str, Any]) -> "ConstantsConfig":
		return cls(**values)

	def to_dict(self) -> Dict[str, float]:
		return asdict(self)


def check_dimensions(d: int, M: int):
	if d < MINIMUM_DIMENSION or M < MINIMUM_FRAME_SIZE:
		message = f"Expected d >= {MINIMUM_DIMENSION} and M >= {MINIMUM_FRAME_SIZE}, got d = {d}, M = {M}"
		raise InvalidArgumentError(message)


def tau_of(d: int, M: int, cfg: ConstantsConfig) -> float:
	""" Band width C2 sqrt(d) ln(d) ln(M) / M. """
	check_dimensions(d, M)
	return cfg.C2 * math.sqrt(d) * math.log(d) * math.log(M) / M


def eta_of(M: int, cfg: ConstantsConfig) -> float:
	""" Positive margin C5 ln(M) / M^2 used to thin the negative band. """
	if M < MINIMUM_FRAME_SIZE:
		message = f"Expected M >= {MINIMUM_FRAME_SIZE}, got {M}"
		raise InvalidArgumentError(message)
	return cfg.C5 * math.log(M) / (M * M)


def fixed_subset_size(d: int, cfg: ConstantsConfig) -> int:
	""" |V| = C1 d ln d rounded to the nearest integer, ties rounded up. """
	return int(math.floor(cfg.C1 * d * math.log(d) + 0.5))

"""
	Regression and summary helpers for experiment outputs.
"""
import math
from dataclasses import asdict, dataclass
from typing import Dict, Iterable

import numpy
from scipy import stats

try:
	from spherecells.errors import InvalidArgumentError
except ModuleNotFoundError:
	from ..errors import InvalidArgumentError


@dataclass(frozen = True)
class LinearFit:
	slope: float
	intercept: float
	r_squared: float

	def to_dict(self) -> Dict[str, float]:
		return asdict(self)


def fit_line(x: Iterable[float], y: Iterable[float]) -> LinearFit:
	x = numpy.asarray(list(x), dtype = float)
	y = numpy.asarray(list(y), dtype = float)
	if x.size < 2 or numpy.unique(x).size < 2:
		message = f"A line fit needs at least two distinct x values, got {x.tolist()}"
		raise InvalidArgumentError(message)
	result = stats.linregress(x, y)
	return LinearFit(slope = float(result.slope), intercept = float(result.intercept), r_squared = float(result.rvalue ** 2))


def fit_loglog(x: Iterable[float], y: Iterable[float]) -> LinearFit:
	""" Least-squares line through (ln x, ln y). """
	return fit_line(numpy.log(list(x)), numpy.log(list(y)))


def binomial_standard_error(trials: int, M: int, p: float) -> float:
	""" Standard error of the mean of `trials` Binomial(M, p) counts. """
	return math.sqrt(M * p * (1.0 - p) / trials)


def quantile(values: Iterable[float], q: float, method: str = "linear") -> float:
	""" Quantile of the finite values. method = 'higher' never interpolates below an observed value. """
	values = numpy.asarray([v for v in values if math.isfinite(v)], dtype = float)
	if values.size == 0:
		return math.nan
	return float(numpy.quantile(values, q, method = method))


def strictly_decreasing(values: Iterable[float]) -> bool:
	values = list(values)
	return all(later < earlier for earlier, later in zip(values, values[1:]))


def strictly_increasing(values: Iterable[float]) -> bool:
	values = list(values)
	return all(later > earlier for earlier, later in zip(values, values[1:]))

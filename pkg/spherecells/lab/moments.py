"""
	Analytic expectations the Monte Carlo experiments are compared against.
"""
import math
from dataclasses import dataclass

import numpy
from scipy.stats import truncnorm

try:
	from spherecells.errors import DomainError, InvalidArgumentError, OverflowDomainError
	from spherecells.numeric import RngStream, erf, gauss_tail, gaussian, uniforms
	from spherecells.tessellation.combinatorics import schlafli_cell_count
except ModuleNotFoundError:
	from ..errors import DomainError, InvalidArgumentError, OverflowDomainError
	from ..numeric import RngStream, erf, gauss_tail, gaussian, uniforms
	from ..tessellation.combinatorics import schlafli_cell_count

# Beyond this standardised threshold Q underflows relative to the density.
TAIL_LIMIT = 38.0


@dataclass(frozen = True)
class TruncatedGaussianSpec:
	""" N(0, variance) conditioned on exceeding `threshold`. The radius experiments use variance = 1/d. """
	threshold: float
	variance: float

	def __post_init__(self):
		if not self.variance > 0:
			message = f"The variance must be positive, got {self.variance}"
			raise InvalidArgumentError(message)
		if not math.isfinite(self.threshold):
			message = f"The threshold must be finite, got {self.threshold}"
			raise InvalidArgumentError(message)

	@property
	def standardised_threshold(self) -> float:
		return self.threshold / math.sqrt(self.variance)


def expected_band_size(d: int, M: int, tau: float) -> float:
	""" E|W| = (M/2) erf(tau sqrt(d) / sqrt(2)): each <g_i, x> ~ N(0, 1/d) lands in (-tau, 0) independently. """
	if not tau > 0:
		message = f"tau must be positive, got {tau}"
		raise InvalidArgumentError(message)
	return 0.5 * M * erf(tau * math.sqrt(d) / math.sqrt(2.0))


def expected_half_band_size(d: int, M: int, tau: float) -> float:
	""" E|S_hat| = M P(tau/2 < N(0, 1/d) < tau). """
	scale = math.sqrt(d)
	return M * (gauss_tail(tau * scale / 2.0) - gauss_tail(tau * scale))


def margin_probability(d: int, eta: float, tail_norm: float) -> float:
	""" P(<g_perp, y_perp> > eta) = Q(eta sqrt(d) / ||y_perp||) for g ~ N(0, I/d). """
	if not tail_norm > 0:
		message = f"The tail norm must be positive, got {tail_norm}"
		raise InvalidArgumentError(message)
	return gauss_tail(eta * math.sqrt(d) / tail_norm)


def chernoff_tail(s: float, expected: float, c: float = 1.0 / 3.0) -> float:
	""" Multiplicative Chernoff bound 2 exp(-c s^2 E) on P(|X - E| > s E). """
	return min(1.0, 2.0 * math.exp(-c * s * s * expected))


def hemisphere_exit_probability(m: int, d: int) -> float:
	"""
		Probability that the cell of a fixed x cut by m Gaussian hyperplanes in R^d leaves the open
		hemisphere around x. Projecting the constraint normals onto the hyperplane orthogonal to x gives m
		symmetric points in R^(d-1), and the cell leaves the hemisphere exactly when their convex hull
		misses the origin, which by Wendel's formula has probability C(m, d-1) / 2^m with C the cell count.
	"""
	if m == 0:
		return 1.0
	return schlafli_cell_count(m, d - 1) / 2 ** m


def truncated_covariance_alpha(spec: TruncatedGaussianSpec) -> float:
	"""
		Second moment of the truncated coordinate,
		alpha = 1/d + sqrt(1/d) a exp(-a^2 d / 2) / (sqrt(2 pi) Q(a sqrt(d))) with 1/d the variance.
	"""
	variance = spec.variance
	a = spec.threshold
	standardised = spec.standardised_threshold
	if standardised > TAIL_LIMIT:
		message = f"Q({standardised:.4g}) underflows; the truncated moment cannot be evaluated."
		raise OverflowDomainError(message)
	correction = math.sqrt(variance) * a * math.exp(-0.5 * standardised * standardised)
	return variance + correction / (math.sqrt(2.0 * math.pi) * gauss_tail(standardised))


def psi2_ratio(a: float) -> float:
	""" sqrt(2) Q(a / sqrt(2)) / Q(a), checked to stay below 2 on [0, 1/2]. """
	if not 0 <= a <= 0.5:
		message = f"The ratio is only evaluated for a in [0, 0.5], got {a}"
		raise DomainError(message)
	return math.sqrt(2.0) * gauss_tail(a / math.sqrt(2.0)) / gauss_tail(a)


def second_moment_matrix(spec: TruncatedGaussianSpec, columns: int) -> numpy.ndarray:
	""" diag(alpha, v, ..., v): the truncated coordinate first, untouched coordinates with variance v. """
	diagonal = numpy.full(columns, spec.variance)
	diagonal[0] = truncated_covariance_alpha(spec)
	return numpy.diag(diagonal)


def sample_truncated(spec: TruncatedGaussianSpec, n: int, stream: RngStream) -> numpy.ndarray:
	""" `n` draws of the truncated coordinate by inverse transform of the stream's uniforms. """
	if spec.standardised_threshold > TAIL_LIMIT:
		message = f"Cannot sample beyond a standardised threshold of {TAIL_LIMIT}"
		raise OverflowDomainError(message)
	values = uniforms(stream, n)
	return truncnorm.ppf(values, spec.standardised_threshold, numpy.inf) * math.sqrt(spec.variance)


def sample_truncated_rows(spec: TruncatedGaussianSpec, n: int, columns: int, stream: RngStream) -> numpy.ndarray:
	""" n rows: a truncated first coordinate and columns - 1 independent N(0, variance) coordinates. """
	rows = numpy.empty((n, columns))
	rows[:, 0] = sample_truncated(spec, n, stream.derive("truncated"))
	if columns > 1:
		rows[:, 1:] = gaussian(stream.derive("free"), n * (columns - 1), spec.variance).reshape(n, columns - 1)
	return rows

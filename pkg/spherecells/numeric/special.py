"""
	Scalar special functions: the error function and the standard normal tail.

	erf uses the non-alternating Taylor series for |t| <= 2 and the Laplace continued fraction of erfc
	beyond, both summed to double precision.
"""
import math

SERIES_LIMIT = 2.0
TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
MAXIMUM_TERMS = 500
TINY = 1e-300


def _erf_series(t: float) -> float:
	# erf(t) = 2/sqrt(pi) * exp(-t^2) * sum_n 2^n t^(2n+1) / (1*3*...*(2n+1)); every term is positive.
	term = t
	total = t
	t_squared = t * t
	for n in range(1, MAXIMUM_TERMS):
		term *= 2.0 * t_squared / (2 * n + 1)
		total += term
		if abs(term) <= 1e-17 * abs(total):
			break
	return TWO_OVER_SQRT_PI * math.exp(-t_squared) * total


def _erfc_continued_fraction(t: float) -> float:
	""" erfc(t) for t > 0 using the modified Lentz evaluation of
		erfc(t) = exp(-t^2)/sqrt(pi) / (t + (1/2)/(t + 1/(t + (3/2)/(t + ...))))
	"""
	value = t
	c = t
	d = 0.0
	for j in range(1, MAXIMUM_TERMS):
		a = j / 2.0
		d = t + a * d
		if d == 0.0:
			d = TINY
		c = t + a / c
		if c == 0.0:
			c = TINY
		d = 1.0 / d
		delta = c * d
		value *= delta
		if abs(delta - 1.0) < 1e-16:
			break
	return math.exp(-t * t) / (math.sqrt(math.pi) * value)


def erf(t: float) -> float:
	""" The Gauss error function (1/sqrt(pi)) * integral_{-t}^{t} exp(-x^2) dx. """
	if t == 0:
		return 0.0
	magnitude = abs(t)
	if magnitude <= SERIES_LIMIT:
		result = _erf_series(magnitude)
	else:
		result = 1.0 - _erfc_continued_fraction(magnitude)
	return math.copysign(result, t)


def erfc(t: float) -> float:
	""" 1 - erf(t), keeping relative accuracy in the right tail. """
	if t < 0:
		return 2.0 - erfc(-t)
	if t <= SERIES_LIMIT:
		return 1.0 - _erf_series(t)
	return _erfc_continued_fraction(t)


def gauss_tail(a: float) -> float:
	""" Q(a) = P(gamma >= a) for a standard normal gamma. """
	return 0.5 * erfc(a / math.sqrt(2.0))


def gauss_density(a: float) -> float:
	return math.exp(-0.5 * a * a) / math.sqrt(2.0 * math.pi)

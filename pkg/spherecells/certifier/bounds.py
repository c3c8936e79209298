"""
	Closed-form radius bounds.
"""
import math

try:
	from spherecells.errors import InvalidArgumentError
	from spherecells.tessellation.constants import ConstantsConfig, check_dimensions, tau_of
except ModuleNotFoundError:
	from ..errors import InvalidArgumentError
	from ..tessellation.constants import ConstantsConfig, check_dimensions, tau_of


def theorem_radius_bound(d: int, M: int, cfg: ConstantsConfig) -> float:
	""" C5 d ln(d) ln(M) / sqrt(M^2 + d^2 ln^2(d) ln^2(M)). Approaches C5 once d ln d ln M dominates M. """
	check_dimensions(d, M)
	numerator = d * math.log(d) * math.log(M)
	return cfg.C5 * numerator / math.sqrt(M * M + numerator * numerator)


def margin_radius_bound(tau: float, q: float) -> float:
	"""
		Radius implied by y1^2 >= 1 - tau^2 / (q^2 + tau^2), where q^2 lower-bounds the smallest squared
		tail inner product over the constraint set. q = 0 gives the half-space value sqrt(2).
	"""
	if not tau > 0:
		message = f"tau must be positive, got {tau}"
		raise InvalidArgumentError(message)
	if q < 0:
		message = f"q must be non-negative, got {q}"
		raise InvalidArgumentError(message)
	first_coordinate = math.sqrt(1.0 - tau * tau / (q * q + tau * tau))
	return math.sqrt(max(0.0, 2.0 - 2.0 * first_coordinate))


def chain_radius_bound(d: int, M: int, cfg: ConstantsConfig) -> float:
	""" The margin bound at the theorem's tau with q^2 = 1/d, the scale the smallest singular value reaches per row. """
	return margin_radius_bound(tau_of(d, M, cfg), 1.0 / math.sqrt(d))

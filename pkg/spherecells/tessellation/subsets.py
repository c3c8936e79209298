"""
	Index subsets of a frame built around a point x.

	All sets hold 0-based indices in increasing order. The bands compare the inner products <g_i, x>
	against open intervals:
		full_band      |<g_i, x>| < tau
		negative_band  -tau < <g_i, x> < 0       (plus the fixed set V)
		half_band      -tau < <g_i, x> < -tau/2
		margin_band    negative band members whose tail inner product with y exceeds eta
		oriented       the margin band with eta = 0
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy
from loguru import logger

try:
	from spherecells.errors import InvalidArgumentError
	from spherecells.numeric import RngStream
	from spherecells.numeric.streams import random_order
	from spherecells.numeric.vectors import tail_inner_product
	from spherecells.tessellation.constants import ConstantsConfig, fixed_subset_size
	from spherecells.tessellation.frames import FrameLike, frame_rows, inner_products
except ModuleNotFoundError:
	from ..errors import InvalidArgumentError
	from ..numeric import RngStream
	from ..numeric.streams import random_order
	from ..numeric.vectors import tail_inner_product
	from .constants import ConstantsConfig, fixed_subset_size
	from .frames import FrameLike, frame_rows, inner_products

VARIANTS = ["full_band", "negative_band", "half_band", "margin_band", "oriented"]

Indices = Tuple[int, ...]


@dataclass(frozen = True)
class SubsetSelection:
	tau: float
	eta: float
	V: Indices
	W: Indices
	S: Indices
	variant: str
	diagnostics: Dict[str, Any] = field(default_factory = dict, compare = False)

	def __post_init__(self):
		if self.variant not in VARIANTS:
			message = f"Unknown subset variant '{self.variant}'. Expected one of {VARIANTS}"
			raise InvalidArgumentError(message)

	def __len__(self) -> int:
		return len(self.S)


def _as_indices(mask_or_indices: numpy.ndarray) -> Indices:
	return tuple(int(i) for i in numpy.sort(numpy.asarray(mask_or_indices, dtype = int)))


def _check_tau(tau: float):
	if not tau > 0:
		message = f"tau must be positive, got {tau}"
		raise InvalidArgumentError(message)


def _from_band(indices: numpy.ndarray, tau: float, eta: float, variant: str) -> SubsetSelection:
	members = _as_indices(indices)
	return SubsetSelection(tau = tau, eta = eta, V = tuple(), W = members, S = members, variant = variant)


def select_fixed_indices(M: int, size: int, stream: RngStream) -> Indices:
	""" `size` indices drawn without replacement from range(M), using `stream` only. """
	if size > M:
		message = f"Cannot select {size} fixed indices from a frame with M = {M} rows"
		raise InvalidArgumentError(message)
	return _as_indices(random_order(stream, M)[:size])


def select_subsets(frame: FrameLike, x: Any, tau: float, cfg: ConstantsConfig, stream: RngStream,
		v_size: Optional[int] = None) -> SubsetSelection:
	"""
		Builds S = V u W around `x`.
	Parameters
	----------
	frame: GaussianFrame or array of rows
	x: the anchor point
	tau: float
		Band width of W = {i : -tau < <g_i, x> < 0}.
	cfg: ConstantsConfig
		|V| = round(C1 d ln d) unless `v_size` is given.
	stream: RngStream
		Picks V. V does not depend on `x`, so one stream gives the same V for every point.
	v_size: Optional[int]
		Overrides the size of V.
	"""
	_check_tau(tau)
	rows = frame_rows(frame)
	M, d = rows.shape
	size = fixed_subset_size(d, cfg) if v_size is None else v_size
	V = select_fixed_indices(M, size, stream)

	products = inner_products(rows, x)
	W = _as_indices(numpy.flatnonzero((products > -tau) & (products < 0)))
	S = tuple(sorted(set(V) | set(W)))
	overlap = len(set(V) & set(W))
	logger.debug(f"Selected |V| = {len(V)}, |W| = {len(W)}, |S| = {len(S)} (overlap {overlap}) with tau = {tau:.6g}")
	return SubsetSelection(
		tau = tau, eta = 0.0, V = V, W = W, S = S,
		variant = "negative_band",
		diagnostics = {"overlap": overlap}
	)


def select_full_band(frame: FrameLike, x: Any, tau: float) -> SubsetSelection:
	_check_tau(tau)
	products = inner_products(frame, x)
	return _from_band(numpy.flatnonzero(numpy.abs(products) < tau), tau, 0.0, "full_band")


def select_half_band(frame: FrameLike, x: Any, tau: float) -> SubsetSelection:
	""" -tau < <g_i, x> < -tau/2, both ends excluded. """
	_check_tau(tau)
	products = inner_products(frame, x)
	return _from_band(numpy.flatnonzero((products > -tau) & (products < -tau / 2)), tau, 0.0, "half_band")


def select_margin_band(frame: FrameLike, x: Any, y: Any, tau: float, eta: float) -> SubsetSelection:
	"""
		Members i of the negative band whose components orthogonal to x satisfy <g_i_perp, y_perp> > eta.
		`x` must be a unit vector; for x = e1 this is the sum over the coordinates after the first.
	"""
	_check_tau(tau)
	if eta < 0:
		message = f"eta must be non-negative, got {eta}"
		raise InvalidArgumentError(message)
	rows = frame_rows(frame)
	x = numpy.asarray(x, dtype = float)
	y = numpy.asarray(y, dtype = float)
	products = inner_products(rows, x)
	in_band = (products > -tau) & (products < 0)
	margins = tail_inner_product(rows, y, x)
	members = numpy.flatnonzero(in_band & (margins > eta))
	variant = "oriented" if eta == 0 else "margin_band"
	selection = _from_band(members, tau, eta, variant)
	selection.diagnostics["negative_band"] = int(numpy.count_nonzero(in_band))
	return selection


def select_oriented(frame: FrameLike, x: Any, y: Any, tau: float) -> SubsetSelection:
	return select_margin_band(frame, x, y, tau, 0.0)

"""
	Gaussian frames and sign patterns.

	Most operations accept either a `GaussianFrame` or a raw (M, d) array of rows. The raw form lets the
	exact planar oracle and hand-made examples use the same code paths as random frames.
"""
from dataclasses import dataclass, field
from typing import Any, Optional, Union

import numpy
from loguru import logger

try:
	from spherecells.errors import DegenerateInputError, InvalidArgumentError
	from spherecells.numeric import RngStream, gaussian
	from spherecells.numeric.linalg import as_matrix
	from spherecells.tessellation.constants import MINIMUM_DIMENSION, MINIMUM_FRAME_SIZE
except ModuleNotFoundError:
	from ..errors import DegenerateInputError, InvalidArgumentError
	from ..numeric import RngStream, gaussian
	from ..numeric.linalg import as_matrix
	from .constants import MINIMUM_DIMENSION, MINIMUM_FRAME_SIZE


@dataclass(frozen = True, eq = False)
class GaussianFrame:
	d: int
	M: int
	rows: numpy.ndarray = field(repr = False)
	seed: Optional[RngStream] = None

	def __post_init__(self):
		self.rows.setflags(write = False)


FrameLike = Union[GaussianFrame, numpy.ndarray, Any]


@dataclass(frozen = True, eq = False)
class SignPattern:
	bits: numpy.ndarray
	# Number of exactly-zero inner products that were mapped to +1.
	zero_count: int = 0

	@property
	def M(self) -> int:
		return len(self.bits)

	def restrict(self, indices) -> numpy.ndarray:
		return self.bits[numpy.asarray(indices, dtype = int)]


def frame_rows(frame: FrameLike) -> numpy.ndarray:
	if isinstance(frame, GaussianFrame):
		return frame.rows
	return as_matrix(frame)


def make_frame(d: int, M: int, stream: RngStream) -> GaussianFrame:
	""" M rows in R^d with i.i.d. N(0, 1/d) entries, filled row-major from `stream`. """
	if d < MINIMUM_DIMENSION:
		message = f"Frames need d >= {MINIMUM_DIMENSION}, got d = {d}"
		raise InvalidArgumentError(message)
	if M <= 2 * d or M < MINIMUM_FRAME_SIZE:
		message = f"Frames need M > 2d and M >= {MINIMUM_FRAME_SIZE}, got d = {d}, M = {M}"
		raise InvalidArgumentError(message)
	rows = gaussian(stream, M * d, variance = 1.0 / d).reshape(M, d)
	return GaussianFrame(d = d, M = M, rows = rows, seed = stream)


def inner_products(frame: FrameLike, x: Any) -> numpy.ndarray:
	rows = frame_rows(frame)
	x = numpy.asarray(x, dtype = float).ravel()
	if x.size != rows.shape[1]:
		message = f"Dimension mismatch: the frame has d = {rows.shape[1]} but the point has {x.size} coordinates"
		raise InvalidArgumentError(message)
	return rows @ x


def signs_of(values: numpy.ndarray) -> numpy.ndarray:
	""" +1 where values >= 0, -1 elsewhere. """
	return numpy.where(values >= 0, 1, -1).astype(numpy.int8)


def sign_encode(frame: FrameLike, x: Any, strict: bool = False) -> SignPattern:
	"""
		bits[i] = sign(<g_i, x>).
	Parameters
	----------
	frame: GaussianFrame or array of rows
	x: the point to encode
	strict: bool
		Raise `DegenerateInputError` on an exactly-zero inner product instead of mapping it to +1.
	"""
	products = inner_products(frame, x)
	zero_count = int(numpy.count_nonzero(products == 0))
	if zero_count:
		message = f"{zero_count} inner products are exactly zero."
		if strict:
			raise DegenerateInputError(message)
		logger.warning(message + " They are encoded as +1.")
	return SignPattern(bits = signs_of(products), zero_count = zero_count)

"""
	Exact counting formulas for central hyperplane tessellations of the sphere. Python integers and
	`fractions.Fraction` keep every result exact.
"""
import math
from fractions import Fraction
from typing import Any, Tuple

import numpy

try:
	from spherecells.errors import InvalidArgumentError
	from spherecells.numeric import RngStream, gaussian
	from spherecells.tessellation.frames import frame_rows
except ModuleNotFoundError:
	from ..errors import InvalidArgumentError
	from ..numeric import RngStream, gaussian
	from .frames import frame_rows


def _binomial_prefix(n: int, upper: int) -> int:
	""" sum_{i=0}^{upper} C(n, i) """
	return sum(math.comb(n, i) for i in range(0, upper + 1))


def schlafli_cell_count(M: int, d: int) -> int:
	""" Number of cells cut out of S^{d-1} by M central hyperplanes in general position. """
	if M < 1 or d < 1:
		message = f"Expected M >= 1 and d >= 1, got M = {M}, d = {d}"
		raise InvalidArgumentError(message)
	return 2 * _binomial_prefix(M - 1, d - 1)


def binom_tail_ratio_bound(M: int, d: int) -> Tuple[int, Fraction]:
	"""
		The binomial prefix sum and its ratio bound.
	Returns
	-------
	lhs: int
		sum_{i=0}^{d} C(M, i)
	rhs: Fraction
		C(M, d) (M - d + 1) / (M - 2d + 1). lhs <= rhs whenever the denominator is positive.
	"""
	denominator = M - 2 * d + 1
	if denominator <= 0:
		message = f"The ratio bound needs M - 2d + 1 > 0, got M = {M}, d = {d}"
		raise InvalidArgumentError(message)
	lhs = _binomial_prefix(M, d)
	rhs = Fraction(math.comb(M, d) * (M - d + 1), denominator)
	return lhs, rhs


def expected_face_count(M: int, d: int) -> Fraction:
	""" Expected number of faces of a uniformly chosen cell: 2M sum_{i<=d-2} C(M-2, i) / sum_{i<=d-1} C(M-1, i). """
	if M < 2 or d < 2:
		message = f"Expected M >= 2 and d >= 2, got M = {M}, d = {d}"
		raise InvalidArgumentError(message)
	return Fraction(2 * M * _binomial_prefix(M - 2, d - 2), _binomial_prefix(M - 1, d - 1))


def cell_count_upper_bound(M: int, d: int) -> float:
	""" 2 (e (M-1) / (d-1))^(d-1), the Stirling-type bound on the cell count (valid for M >= d >= 2). """
	if d < 2 or M < d:
		message = f"The Stirling bound needs M >= d >= 2, got M = {M}, d = {d}"
		raise InvalidArgumentError(message)
	return 2.0 * (math.e * (M - 1) / (d - 1)) ** (d - 1)


def sampled_cell_count(frame: Any, n_points: int, stream: RngStream, chunk_size: int = 200_000) -> int:
	"""
		Number of distinct sign patterns among `n_points` uniformly sampled sphere points. Every pattern
		seen is a cell, so this is a lower bound on the cell count that becomes exact once every cell is hit.
	"""
	rows = frame_rows(frame)
	M, d = rows.shape
	patterns = set()
	chunk = 0
	remaining = n_points
	while remaining > 0:
		size = min(chunk_size, remaining)
		points = gaussian(stream.derive(f"chunk-{chunk}"), size * d).reshape(size, d)
		bits = (points @ rows.T) >= 0
		packed = numpy.packbits(bits, axis = 1, bitorder = "little")
		patterns.update(bytes(row) for row in numpy.unique(packed, axis = 0))
		remaining -= size
		chunk += 1
	return len(patterns)

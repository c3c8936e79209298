"""
	Small dense matrix primitives built on Jacobi rotations.

	Matrices are plain two dimensional `numpy.ndarray`s; `as_matrix` validates them.
"""
import math
from typing import Any

import numpy
from loguru import logger

try:
	from spherecells.errors import InvalidArgumentError
except ModuleNotFoundError:
	from ..errors import InvalidArgumentError

MAXIMUM_SWEEPS = 100
SYMMETRY_TOLERANCE = 1e-10


def as_matrix(entries: Any) -> numpy.ndarray:
	""" Converts `entries` to a float matrix, rejecting anything that is not a finite 2D array. """
	matrix = numpy.array(entries, dtype = float)
	if matrix.ndim != 2:
		message = f"Expected a two dimensional matrix, got an array with shape {matrix.shape}"
		raise InvalidArgumentError(message)
	if matrix.shape[0] < 1 or matrix.shape[1] < 1:
		message = f"The matrix must have at least one row and one column, got shape {matrix.shape}"
		raise InvalidArgumentError(message)
	if not numpy.all(numpy.isfinite(matrix)):
		message = "The matrix contains non-finite entries."
		raise InvalidArgumentError(message)
	return matrix


def singular_values(matrix: Any) -> numpy.ndarray:
	"""
		Singular values of `matrix` (rows >= cols) from the one-sided Jacobi method of Hestenes. Pairs of
		columns are rotated until every pair is orthogonal; the column norms are then the singular values.
	Parameters
	----------
	matrix: array-like
		A matrix with at least as many rows as columns.

	Returns
	-------
	numpy.ndarray
		The `cols` singular values, unsorted.
	"""
	columns = as_matrix(matrix).copy()
	n = columns.shape[1]
	for sweep in range(MAXIMUM_SWEEPS):
		rotated = False
		for p in range(n - 1):
			for q in range(p + 1, n):
				left = columns[:, p]
				right = columns[:, q]
				alpha = left @ left
				beta = right @ right
				gamma = left @ right
				if gamma == 0.0 or abs(gamma) <= 1e-15 * math.sqrt(alpha * beta):
					continue
				rotated = True
				zeta = (beta - alpha) / (2.0 * gamma)
				t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
				c = 1.0 / math.sqrt(1.0 + t * t)
				s = c * t
				columns[:, p] = c * left - s * right
				columns[:, q] = s * left + c * right
		if not rotated:
			break
	else:
		logger.warning(f"One-sided Jacobi did not converge after {MAXIMUM_SWEEPS} sweeps.")
	return numpy.sqrt(numpy.einsum("ij,ij->j", columns, columns))


def min_singular_value(matrix: Any) -> float:
	""" min over unit z of ||G z||. A matrix with fewer rows than columns has a null space, so the result is 0. """
	matrix = as_matrix(matrix)
	if matrix.shape[0] < matrix.shape[1]:
		return 0.0
	return float(singular_values(matrix).min())


def symmetric_eigenvalues(matrix: Any) -> numpy.ndarray:
	""" Eigenvalues of a symmetric matrix from the cyclic two-sided Jacobi method. """
	a = as_matrix(matrix).copy()
	rows, cols = a.shape
	if rows != cols:
		message = f"Expected a square matrix, got shape {a.shape}"
		raise InvalidArgumentError(message)
	scale = max(1.0, float(numpy.abs(a).max()))
	if numpy.abs(a - a.T).max() > SYMMETRY_TOLERANCE * scale:
		message = f"The matrix is not symmetric (max asymmetry {numpy.abs(a - a.T).max():.3g})"
		raise InvalidArgumentError(message)
	a = 0.5 * (a + a.T)
	n = rows
	for sweep in range(MAXIMUM_SWEEPS):
		off_diagonal = numpy.sqrt(max(0.0, (a * a).sum() - (numpy.diag(a) ** 2).sum()))
		if off_diagonal <= 1e-15 * max(numpy.sqrt((a * a).sum()), 1e-300):
			break
		for p in range(n - 1):
			for q in range(p + 1, n):
				apq = a[p, q]
				if apq == 0.0:
					continue
				theta = (a[q, q] - a[p, p]) / (2.0 * apq)
				t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.sqrt(theta * theta + 1.0))
				c = 1.0 / math.sqrt(t * t + 1.0)
				s = t * c
				column_p = a[:, p].copy()
				column_q = a[:, q].copy()
				a[:, p] = c * column_p - s * column_q
				a[:, q] = s * column_p + c * column_q
				row_p = a[p, :].copy()
				row_q = a[q, :].copy()
				a[p, :] = c * row_p - s * row_q
				a[q, :] = s * row_p + c * row_q
				a[p, q] = a[q, p] = 0.0
	else:
		logger.warning(f"Cyclic Jacobi did not converge after {MAXIMUM_SWEEPS} sweeps.")
	return numpy.diag(a).copy()


def operator_norm(matrix: Any) -> float:
	""" Largest absolute eigenvalue of a symmetric matrix. """
	return float(numpy.abs(symmetric_eigenvalues(matrix)).max())

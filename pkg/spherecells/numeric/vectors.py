"""
	Points on the sphere. A unit vector is a 1D `numpy.ndarray` normalised by `unit_vector`.
"""
from typing import Any

import numpy

try:
	from spherecells.errors import DegenerateInputError, InvalidArgumentError
	from spherecells.numeric.streams import RngStream, gaussian
except ModuleNotFoundError:
	from ..errors import DegenerateInputError, InvalidArgumentError
	from .streams import RngStream, gaussian


def unit_vector(coords: Any) -> numpy.ndarray:
	""" Normalises `coords` onto the sphere. The dimension must be at least 2. """
	vector = numpy.array(coords, dtype = float).ravel()
	if vector.size < 2:
		message = f"A point on the sphere needs at least two coordinates, got {vector.size}"
		raise InvalidArgumentError(message)
	if not numpy.all(numpy.isfinite(vector)):
		message = f"The coordinates must be finite: {vector.tolist()}"
		raise InvalidArgumentError(message)
	norm = numpy.linalg.norm(vector)
	if norm == 0:
		message = "Cannot normalise the zero vector."
		raise DegenerateInputError(message)
	return vector / norm


def basis_vector(d: int, index: int = 0) -> numpy.ndarray:
	vector = numpy.zeros(d)
	vector[index] = 1.0
	return vector


def random_unit_vector(stream: RngStream, d: int) -> numpy.ndarray:
	""" Uniform point on S^{d-1}: a normalised standard Gaussian vector. """
	return unit_vector(gaussian(stream, d))


def orthonormal_complement(x: numpy.ndarray) -> numpy.ndarray:
	"""
		Returns a d x (d-1) matrix whose columns are an orthonormal basis of the hyperplane orthogonal to `x`.
		The basis is the tail of the Householder reflection sending `x` to a multiple of e1.
	"""
	x = unit_vector(x)
	d = x.size
	v = x.copy()
	v[0] += 1.0 if x[0] >= 0 else -1.0
	reflection = numpy.eye(d) - 2.0 * numpy.outer(v, v) / (v @ v)
	return reflection[:, 1:]


def tail_inner_product(g: numpy.ndarray, y: numpy.ndarray, x: numpy.ndarray) -> numpy.ndarray:
	""" <g_perp, y_perp> where `_perp` removes the component along the unit vector `x`.
		For x = e1 this is the inner product of the coordinates after the first.
	"""
	return g @ y - (g @ x) * (y @ x)

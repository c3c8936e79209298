"""
	Exact cells of planar (d = 2) tessellations, described by the angles of the hyperplane normals.
"""
import math
from dataclasses import dataclass
from typing import Iterable

import numpy

try:
	from spherecells.errors import DegenerateInputError, InvalidArgumentError
except ModuleNotFoundError:
	from ..errors import DegenerateInputError, InvalidArgumentError

TWO_PI = 2.0 * math.pi
BOUNDARY_TOLERANCE = 1e-14


@dataclass(frozen = True)
class PlanarCell:
	# Arc endpoints in [0, 2pi), read counterclockwise from `start` to `end`.
	start: float
	end: float
	radius: float


def boundary_angles(angles: Iterable[float]) -> numpy.ndarray:
	""" Each normal at angle theta meets the circle at theta +- pi/2. """
	angles = numpy.asarray(list(angles), dtype = float)
	if angles.size == 0 or not numpy.all(numpy.isfinite(angles)):
		message = "Expected at least one finite normal angle."
		raise InvalidArgumentError(message)
	return numpy.mod(numpy.concatenate([angles + math.pi / 2, angles - math.pi / 2]), TWO_PI)


def normals_from_angles(angles: Iterable[float]) -> numpy.ndarray:
	angles = numpy.asarray(list(angles), dtype = float)
	return numpy.column_stack([numpy.cos(angles), numpy.sin(angles)])


def exact_cell_d2(angles: Iterable[float], x_angle: float) -> PlanarCell:
	"""
		The cell containing the point at `x_angle`. Its endpoints are the nearest boundary points on each
		side of x and its chordal radius is 2 sin(delta/2) for the larger of the two angular offsets.
	"""
	boundaries = boundary_angles(angles)
	offsets = numpy.mod(boundaries - x_angle, TWO_PI)
	if numpy.any((offsets < BOUNDARY_TOLERANCE) | (offsets > TWO_PI - BOUNDARY_TOLERANCE)):
		message = f"The point at angle {x_angle} lies on a hyperplane."
		raise DegenerateInputError(message)
	ahead = float(offsets.min())
	behind = float((TWO_PI - offsets).min())
	radius = 2.0 * math.sin(max(ahead, behind) / 2.0)
	return PlanarCell(
		start = float(numpy.mod(x_angle - behind, TWO_PI)),
		end = float(numpy.mod(x_angle + ahead, TWO_PI)),
		radius = radius
	)


def arc_count_d2(angles: Iterable[float]) -> int:
	""" Number of arcs the boundary points cut the circle into. """
	boundaries = numpy.sort(boundary_angles(angles))
	gaps = numpy.diff(numpy.concatenate([boundaries, [boundaries[0] + TWO_PI]]))
	return int(numpy.count_nonzero(gaps > BOUNDARY_TOLERANCE))

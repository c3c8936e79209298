"""
	Dykstra's alternating projections onto an intersection of halfspaces {z : <n_i, z> + o_i >= 0}.

	For a halfspace the Dykstra correction of constraint i is always a non-negative multiple of its normal,
	so the state is one weight per constraint and the current point is `point + normals.T @ weights`.
	A cycle visits, in index order, every constraint that is violated or carries a non-zero weight;
	the others would be left unchanged by their projection step.
"""
import math
from dataclasses import dataclass
from typing import Optional

import numpy


@dataclass
class Projection:
	point: numpy.ndarray
	weights: numpy.ndarray
	cycles: int
	# Largest constraint violation at the returned point.
	residual: float
	converged: bool


def project_polyhedron(point: numpy.ndarray, normals: numpy.ndarray, offsets: Optional[numpy.ndarray] = None,
		cycles: int = 500, tolerance: float = 1e-13, weights: Optional[numpy.ndarray] = None) -> Projection:
	"""
		Euclidean projection of `point` onto {z : normals @ z + offsets >= 0}.
	Parameters
	----------
	point: numpy.ndarray
	normals: numpy.ndarray
		(m, n) matrix of constraint normals. Rows of zeros are allowed and ignored.
	offsets: Optional[numpy.ndarray]
		Defaults to zeros (a polyhedral cone).
	cycles: int
		Maximum number of passes over the constraints.
	tolerance: float
		Stop once a full cycle moves no weight by more than this (in units of distance) and the
		residual violation is below it.
	weights: Optional[numpy.ndarray]
		Dykstra weights from an earlier call with the same constraints. Any non-negative start is valid.
	"""
	m = normals.shape[0]
	if offsets is None:
		offsets = numpy.zeros(m)
	norms_squared = numpy.einsum("ij,ij->i", normals, normals)
	usable = norms_squared > 0
	weights = numpy.zeros(m) if weights is None else numpy.where(usable, weights, 0.0).astype(float)
	z = point + normals.T @ weights

	residual = math.inf
	converged = False
	cycle = 0
	for cycle in range(1, cycles + 1):
		margins = normals @ z + offsets
		candidates = numpy.flatnonzero(usable & ((weights > 0) | (margins < 0)))
		largest_change = 0.0
		for i in candidates:
			margin = normals[i] @ z + offsets[i]
			updated = max(0.0, weights[i] - margin / norms_squared[i])
			change = updated - weights[i]
			if change != 0.0:
				z = z + change * normals[i]
				weights[i] = updated
				largest_change = max(largest_change, abs(change) * math.sqrt(norms_squared[i]))
		margins = normals[usable] @ z + offsets[usable]
		residual = max(0.0, -float(margins.min())) if margins.size else 0.0
		if largest_change <= tolerance and residual <= tolerance:
			converged = True
			break
	if m == 0:
		residual = 0.0
		converged = True
	return Projection(point = z, weights = weights, cycles = cycle, residual = residual, converged = converged)


def project_cone_ball(point: numpy.ndarray, normals: numpy.ndarray, cycles: int = 500, tolerance: float = 1e-13,
		weights: Optional[numpy.ndarray] = None) -> Projection:
	"""
		Projection onto {z : normals @ z >= 0, ||z|| <= 1}. For a closed convex cone the projection onto
		the cone-ball intersection is the cone projection pulled back radially into the ball, so the ball
		step is applied once after the halfspace cycles.
	"""
	projection = project_polyhedron(point, normals, cycles = cycles, tolerance = tolerance, weights = weights)
	norm = numpy.linalg.norm(projection.point)
	if norm > 1.0:
		projection.point = projection.point / norm
		projection.residual = projection.residual / norm
	return projection

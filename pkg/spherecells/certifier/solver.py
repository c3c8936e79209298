"""
	Certified chordal radii of sign-consistent cells.

	Given constraint rows g_i (i in a subset) and signs s_i, the cell around x is
	C = {y on the sphere : s_i <g_i, y> >= 0}. Its chordal radius is max ||x - y|| = sqrt(2 - 2 min <x, y>).

	Two regimes are solved differently:
	- hemisphere: the cell reaches past the great sphere orthogonal to x, min <x, y> < 0. The minimum of the
		linear objective over cone n ball is then attained on the sphere, and projected descent
		y <- P(y - step x), with P computed by Dykstra's projections, converges to it.
	- polytope: the cell stays inside the hemisphere around x. Then min <x, y> over the ball is 0 (at y = 0)
		and tells nothing; instead every cell point is written as (x + w)/||x + w|| with w orthogonal to x
		and w in the polytope Q = {w : s_i <g_i, x + w> >= 0}. The radius grows with ||w||, so ||w|| is
		maximised by projected ascent w <- P_Q((1 + step) w) from several starts, and each local maximum is
		snapped to the vertex defined by its active constraints.
	An LP decides which regime applies.
"""
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

import numpy
from loguru import logger
from scipy.optimize import linprog

try:
	from spherecells.certifier.dykstra import project_cone_ball, project_polyhedron
	from spherecells.errors import InconsistentInputError, InvalidArgumentError
	from spherecells.numeric import RngStream, gaussian
	from spherecells.numeric.vectors import orthonormal_complement, unit_vector
	from spherecells.tessellation.frames import FrameLike, frame_rows, signs_of
	from spherecells.tessellation.subsets import SubsetSelection
except ModuleNotFoundError:
	from .dykstra import project_cone_ball, project_polyhedron
	from ..errors import InconsistentInputError, InvalidArgumentError
	from ..numeric import RngStream, gaussian
	from ..numeric.vectors import orthonormal_complement, unit_vector
	from ..tessellation.frames import FrameLike, frame_rows, signs_of
	from ..tessellation.subsets import SubsetSelection

ANCHOR_TOLERANCE = 1e-9
HEMISPHERE_TOLERANCE = 1e-7
RESIDUAL_TOLERANCE = 1e-10
PROJECTION_TOLERANCE = 1e-13
POLISH_TOLERANCE = 1e-9
UNBOUNDED_NORM = 1e8

SubsetLike = Union[SubsetSelection, Iterable[int]]


@dataclass
class SolverOptions:
	"""
	Parameters
	----------
	max_iterations: Budget of descent/ascent steps, shared by every start.
	tolerance: A step counts as stalled when it improves the objective by less than this.
	step_size: Step along the gradient of the linear (descent) or quadratic (ascent) objective.
	projection_cycles: Maximum number of Dykstra cycles per projection.
	stall_window: Number of consecutive stalled steps that ends a search.
	restarts: Random starts added to the 2(d - 1) coordinate starts of the ascent.
	"""
	max_iterations: int = 50_000
	tolerance: float = 1e-10
	step_size: float = 1.0
	projection_cycles: int = 500
	stall_window: int = 20
	restarts: int = 8

	def __post_init__(self):
		if self.max_iterations < 1:
			message = f"max_iterations must be at least 1, got {self.max_iterations}"
			raise InvalidArgumentError(message)
		if not self.tolerance > 0:
			message = f"tolerance must be positive, got {self.tolerance}"
			raise InvalidArgumentError(message)
		if not self.step_size > 0:
			message = f"step_size must be positive, got {self.step_size}"
			raise InvalidArgumentError(message)
		if self.projection_cycles < 1 or self.stall_window < 1 or self.restarts < 0:
			message = "projection_cycles and stall_window must be at least 1 and restarts non-negative."
			raise InvalidArgumentError(message)

	@classmethod
	def from_dict(cls, values: Dict[str, Any]) -> "SolverOptions":
		return cls(**values)

	def to_dict(self) -> Dict[str, Any]:
		return asdict(self)


@dataclass
class CellCertificate:
	# A point of the closed cell at (nearly) maximal distance from the anchor.
	witness: numpy.ndarray
	# ||anchor - witness||, the certified chordal radius.
	radius: float
	iterations: int
	# Largest constraint violation of the witness before it was pulled back into the cell.
	residual: float
	converged: bool
	# One of 'empty', 'hemisphere', 'unbounded', 'polytope'.
	phase: str = "polytope"
	worst_margin: float = math.inf
	# Every local maximiser found, each pulled back into the cell.
	witnesses: List[numpy.ndarray] = field(default_factory = list, repr = False)


def _subset_indices(subset: SubsetLike, M: int) -> numpy.ndarray:
	indices = subset.S if isinstance(subset, SubsetSelection) else subset
	indices = numpy.unique(numpy.asarray(list(indices), dtype = int))
	if indices.size and (indices[0] < 0 or indices[-1] >= M):
		message = f"Subset indices must lie in [0, {M}), got range [{indices[0]}, {indices[-1]}]"
		raise InvalidArgumentError(message)
	return indices


def constraint_normals(frame: FrameLike, subset: SubsetLike, x: Any,
		signs: Optional[Iterable[int]] = None) -> Tuple[numpy.ndarray, numpy.ndarray]:
	"""
		Returns (normals, x) with normals[i] = s_i g_i, oriented so that the cell is {y : normals @ y >= 0}.
		Signs default to the signs of <g_i, x>.
	"""
	rows = frame_rows(frame)
	x = unit_vector(x)
	if x.size != rows.shape[1]:
		message = f"Dimension mismatch: the frame has d = {rows.shape[1]} but the point has {x.size} coordinates"
		raise InvalidArgumentError(message)
	indices = _subset_indices(subset, rows.shape[0])
	selected = rows[indices]
	if signs is None:
		sigma = signs_of(selected @ x)
	else:
		sigma = numpy.asarray(list(signs), dtype = float)
		if sigma.size != indices.size or not numpy.all(numpy.abs(sigma) == 1):
			message = f"Expected {indices.size} signs in {{-1, +1}}, got {sigma.tolist()}"
			raise InvalidArgumentError(message)
	normals = sigma[:, None] * selected
	if normals.size:
		worst = float((normals @ x).min())
		if worst < -ANCHOR_TOLERANCE:
			message = f"The anchor violates its own sign constraints (worst margin {worst:.3g})."
			raise InconsistentInputError(message)
	return normals, x


def leaves_hemisphere(normals: numpy.ndarray, x: numpy.ndarray) -> bool:
	""" True when the cone {y : normals @ y >= 0} holds a point with <x, y> < 0. """
	result = linprog(
		c = x,
		A_ub = -normals,
		b_ub = numpy.zeros(normals.shape[0]),
		bounds = [(-1.0, 1.0)] * x.size,
		method = "highs"
	)
	if result.status != 0:
		logger.warning(f"The hemisphere test did not solve cleanly ({result.message}).")
		return False
	return result.fun < -HEMISPHERE_TOLERANCE


def retreat_into_cell(normals: numpy.ndarray, x: numpy.ndarray, y: numpy.ndarray) -> numpy.ndarray:
	""" Moves `y` along the chord toward the anchor `x` by the least amount that clears every constraint. """
	margins = normals @ y
	if margins.size == 0 or margins.min() >= 0:
		return y
	anchor = numpy.maximum(normals @ x, 0.0)
	violated = margins < 0
	fraction = float((-margins[violated] / (anchor[violated] - margins[violated])).max())
	point = (1.0 - fraction) * y + fraction * x
	norm = numpy.linalg.norm(point)
	if norm < 1e-12:
		return x.copy()
	return point / norm


class CellSolver:
	""" Holds the constraints of one cell and searches it for the point farthest from the anchor. """

	def __init__(self, normals: numpy.ndarray, x: numpy.ndarray, opts: SolverOptions, stream: RngStream):
		self.normals = normals
		self.x = x
		self.opts = opts
		self.stream = stream
		self.iterations = 0

	@property
	def budget(self) -> int:
		return self.opts.max_iterations - self.iterations

	def descend(self) -> Optional[Tuple[numpy.ndarray, bool]]:
		""" Projected descent on <x, y> over cone n ball. Returns None when the minimum is not negative. """
		y = self.x.copy()
		objective = 1.0
		weights = None
		stalled = 0
		converged = False
		while self.budget > 0:
			self.iterations += 1
			projection = project_cone_ball(
				y - self.opts.step_size * self.x, self.normals,
				cycles = self.opts.projection_cycles, tolerance = PROJECTION_TOLERANCE, weights = weights
			)
			weights = projection.weights
			y = projection.point
			updated = float(self.x @ y)
			stalled = stalled + 1 if objective - updated < self.opts.tolerance else 0
			objective = updated
			if stalled >= self.opts.stall_window and projection.residual < RESIDUAL_TOLERANCE:
				converged = True
				break
		norm = numpy.linalg.norm(y)
		if norm < 1e-9 or objective > -ANCHOR_TOLERANCE:
			logger.debug(f"Descent ended at <x, y> = {objective:.3g}; switching to the polytope search.")
			return None
		return y / norm, converged

	def _climb(self, start: numpy.ndarray, slice_normals: numpy.ndarray, offsets: numpy.ndarray):
		project = lambda point, weights: project_polyhedron(
			point, slice_normals, offsets,
			cycles = self.opts.projection_cycles, tolerance = PROJECTION_TOLERANCE, weights = weights
		)
		projection = project(start, None)
		w = projection.point
		weights = projection.weights
		value = float(w @ w)
		stalled = 0
		while self.budget > 0:
			self.iterations += 1
			projection = project((1.0 + self.opts.step_size) * w, weights)
			weights = projection.weights
			candidate = projection.point
			updated = float(candidate @ candidate)
			if updated > UNBOUNDED_NORM ** 2:
				return candidate, True, True
			stalled = stalled + 1 if updated - value <= self.opts.tolerance * max(1.0, value) else 0
			w, value = candidate, updated
			if stalled >= self.opts.stall_window:
				return w, True, False
		return w, False, False

	@staticmethod
	def _polish(w: numpy.ndarray, slice_normals: numpy.ndarray, offsets: numpy.ndarray) -> numpy.ndarray:
		""" Replaces `w` by the vertex its active constraints define, when that vertex is feasible and no closer. """
		n = w.size
		active = (slice_normals @ w + offsets) <= POLISH_TOLERANCE
		if numpy.count_nonzero(active) < n:
			return w
		system = slice_normals[active]
		if numpy.linalg.matrix_rank(system) < n:
			return w
		vertex = numpy.linalg.lstsq(system, -offsets[active], rcond = None)[0]
		feasible = (slice_normals @ vertex + offsets).min() >= -1e-12
		if feasible and vertex @ vertex >= w @ w - 1e-15:
			return vertex
		return w

	def _starts(self, n: int) -> List[numpy.ndarray]:
		starts = []
		for j in range(n):
			axis = numpy.zeros(n)
			axis[j] = 1.0
			starts += [axis, -axis]
		for restart in range(self.opts.restarts):
			direction = gaussian(self.stream.derive(f"restart-{restart}"), n)
			starts.append(direction / numpy.linalg.norm(direction))
		return starts

	def ascend(self) -> Tuple[numpy.ndarray, List[numpy.ndarray], bool, bool]:
		""" Maximises ||w|| over the slice polytope. Returns (best, locals, converged, unbounded) as sphere points. """
		basis = orthonormal_complement(self.x)
		slice_normals = self.normals @ basis
		offsets = numpy.maximum(self.normals @ self.x, 0.0)
		best_w = numpy.zeros(basis.shape[1])
		best_value = -1.0
		unbounded = False
		converged = True
		found = []
		for start in self._starts(basis.shape[1]):
			if self.budget <= 0:
				converged = False
				break
			w, finished, is_unbounded = self._climb(start, slice_normals, offsets)
			converged = converged and finished
			if not is_unbounded:
				w = self._polish(w, slice_normals, offsets)
			found.append(w)
			value = math.inf if is_unbounded else float(w @ w)
			if value > best_value:
				best_w, best_value = w, value
				unbounded = is_unbounded
			if unbounded:
				break
		to_sphere = lambda w: unit_vector(self.x + basis @ w)
		return to_sphere(best_w), [to_sphere(w) for w in found], converged, unbounded

	def solve(self) -> CellCertificate:
		if leaves_hemisphere(self.normals, self.x):
			result = self.descend()
			if result is not None:
				witness, converged = result
				return self._certificate(witness, [witness], converged, "hemisphere")
		witness, found, converged, unbounded = self.ascend()
		return self._certificate(witness, found, converged, "unbounded" if unbounded else "polytope")

	def _certificate(self, raw: numpy.ndarray, found: List[numpy.ndarray], converged: bool, phase: str) -> CellCertificate:
		margins = self.normals @ raw
		residual = max(0.0, -float(margins.min()))
		witness = retreat_into_cell(self.normals, self.x, raw)
		certificate = CellCertificate(
			witness = witness,
			radius = float(numpy.linalg.norm(self.x - witness)),
			iterations = self.iterations,
			residual = residual,
			converged = converged and residual < RESIDUAL_TOLERANCE,
			phase = phase,
			worst_margin = float((self.normals @ witness).min()),
			witnesses = [retreat_into_cell(self.normals, self.x, point) for point in found]
		)
		if not certificate.converged:
			logger.warning(f"The cell search stopped without converging (phase {phase}, {self.iterations} iterations).")
		return certificate


def cell_radius(frame: FrameLike, subset: SubsetLike, x: Any, opts: Optional[SolverOptions] = None,
		signs: Optional[Iterable[int]] = None, stream: Optional[RngStream] = None) -> CellCertificate:
	"""
		Certifies the chordal radius of the cell {y : s_i <g_i, y> >= 0 for i in subset} around `x`.
	Parameters
	----------
	frame: GaussianFrame or array of rows
	subset: SubsetSelection or iterable of row indices
	x: the anchor, normalised on entry
	opts: SolverOptions
	signs: Optional[Iterable[int]]
		Signs of the cell, one per subset index in increasing index order. Defaults to the signs of x.
	stream: Optional[RngStream]
		Source of the random restarts. Defaults to the stream (0, 0).

	Returns
	-------
	CellCertificate
		The witness always satisfies every constraint, so `radius` never exceeds the true radius.
	"""
	opts = opts if opts is not None else SolverOptions()
	stream = stream if stream is not None else RngStream(0)
	normals, x = constraint_normals(frame, subset, x, signs)
	if normals.shape[0] == 0:
		return CellCertificate(
			witness = -x, radius = 2.0, iterations = 0, residual = 0.0, converged = True, phase = "empty",
			witnesses = [-x]
		)
	return CellSolver(normals, x, opts, stream).solve()


def check_sign_consistency(frame: FrameLike, subset: SubsetLike, x: Any, y: Any) -> Tuple[bool, float]:
	"""
		Checks that `y` has the signs of `x` on every subset row.
	Returns
	-------
	ok: bool
		s_i <g_i, y> > 0 for every i in the subset (strict).
	worst_margin: float
		min over the subset of s_i <g_i, y>; infinity for an empty subset.
	"""
	rows = frame_rows(frame)
	indices = _subset_indices(subset, rows.shape[0])
	if indices.size == 0:
		return True, math.inf
	selected = rows[indices]
	margins = signs_of(selected @ numpy.asarray(x, dtype = float)) * (selected @ numpy.asarray(y, dtype = float))
	worst = float(margins.min())
	return worst > 0, worst

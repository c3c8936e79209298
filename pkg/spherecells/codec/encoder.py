"""
	One-bit encoding of a point on the sphere by the indices of its selected subset and their sign bits.

	The frame is not transmitted: encoder and decoder regenerate it from the shared seed, so seed bits do
	not count toward the bit cost.
"""
import dataclasses
from dataclasses import dataclass
from math import comb
from typing import Any, Optional, Tuple

import numpy
from loguru import logger
from scipy.optimize import linprog

try:
	from spherecells.certifier import CellCertificate, SolverOptions, cell_radius
	from spherecells.codec.ranking import bit_cost, subset_rank, subset_unrank
	from spherecells.errors import CorruptInputError, InvalidArgumentError
	from spherecells.numeric import RngStream, unit_vector
	from spherecells.numeric.vectors import basis_vector
	from spherecells.tessellation import ConstantsConfig, make_frame, select_subsets, sign_encode, tau_of
	from spherecells.tessellation.constants import check_dimensions
except ModuleNotFoundError:
	from ..certifier import CellCertificate, SolverOptions, cell_radius
	from .ranking import bit_cost, subset_rank, subset_unrank
	from ..errors import CorruptInputError, InvalidArgumentError
	from ..numeric import RngStream, unit_vector
	from ..numeric.vectors import basis_vector
	from ..tessellation import ConstantsConfig, make_frame, select_subsets, sign_encode, tau_of
	from ..tessellation.constants import check_dimensions

DECODER_RESTARTS = 32
# Smallest inscribed-ball radius (relative to the box) for which the transmitted cell counts as non-empty.
INTERIOR_TOLERANCE = 1e-12


@dataclass(frozen = True)
class EncodedVector:
	"""
	Parameters
	----------
	frame_seed: The stream the frame and the fixed set were drawn from.
	subset_rank: Colex rank of the selected indices among the k-subsets of range(M).
	sign_bits: One bit per selected index in increasing index order; 1 encodes +1.
	"""
	frame_seed: RngStream
	d: int
	M: int
	k: int
	subset_rank: int
	sign_bits: Tuple[int, ...]
	tau: float

	def __post_init__(self):
		if not 0 <= self.k <= self.M:
			message = f"Expected 0 <= k <= M, got k = {self.k}, M = {self.M}"
			raise InvalidArgumentError(message)
		if not 0 <= self.subset_rank < comb(self.M, self.k):
			message = f"The subset rank {self.subset_rank} is not below C({self.M}, {self.k})"
			raise InvalidArgumentError(message)
		if len(self.sign_bits) != self.k or any(bit not in (0, 1) for bit in self.sign_bits):
			message = f"Expected {self.k} sign bits in {{0, 1}}, got {list(self.sign_bits)}"
			raise InvalidArgumentError(message)

	@property
	def bit_cost(self) -> int:
		return bit_cost(self.M, self.k)

	@property
	def indices(self) -> Tuple[int, ...]:
		return subset_unrank(self.subset_rank, self.M, self.k)

	@property
	def signs(self) -> numpy.ndarray:
		return numpy.where(numpy.asarray(self.sign_bits, dtype = int) == 1, 1, -1).astype(numpy.int8)


def encode(x: Any, d: int, M: int, cfg: ConstantsConfig, stream: RngStream, strict: bool = False) -> EncodedVector:
	"""
		Encodes `x` by S = V u W and the signs of <g_i, x> on S.
	Parameters
	----------
	x: the point, normalised on entry
	stream: RngStream
		Shared seed. The frame comes from stream.derive('frame') and V from stream.derive('subset').
	strict: bool
		Raise on an exactly-zero inner product instead of encoding it as +1.
	"""
	check_dimensions(d, M)
	x = unit_vector(x)
	if x.size != d:
		message = f"Expected a point with d = {d} coordinates, got {x.size}"
		raise InvalidArgumentError(message)
	frame = make_frame(d, M, stream.derive("frame"))
	tau = tau_of(d, M, cfg)
	selection = select_subsets(frame, x, tau, cfg, stream.derive("subset"))
	signs = sign_encode(frame, x, strict = strict).restrict(selection.S)
	encoded = EncodedVector(
		frame_seed = stream, d = d, M = M, k = len(selection.S),
		subset_rank = subset_rank(selection.S, M),
		sign_bits = tuple(int(sign > 0) for sign in signs),
		tau = tau
	)
	logger.debug(f"Encoded a point with k = {encoded.k} indices in {encoded.bit_cost} bits.")
	return encoded


def chebyshev_direction(normals: numpy.ndarray) -> numpy.ndarray:
	"""
		Centre of the largest ball inside {y : normals @ y >= 0} intersected with the box [-1, 1]^d.
		Raises `CorruptInputError` when the cone has no interior.
	"""
	m, d = normals.shape
	norms = numpy.linalg.norm(normals, axis = 1)
	# Variables (y, t): maximise t subject to t ||n_i|| <= <n_i, y>, t <= 1.
	objective = numpy.zeros(d + 1)
	objective[-1] = -1.0
	constraints = numpy.hstack([-normals, norms[:, None]])
	result = linprog(
		c = objective,
		A_ub = constraints,
		b_ub = numpy.zeros(m),
		bounds = [(-1.0, 1.0)] * d + [(None, 1.0)],
		method = "highs"
	)
	if result.status != 0 or -result.fun <= INTERIOR_TOLERANCE:
		message = "The transmitted signs describe an empty cell."
		raise CorruptInputError(message)
	return unit_vector(result.x[:d])


def decode(encoded: EncodedVector, opts: Optional[SolverOptions] = None,
		restarts: int = DECODER_RESTARTS) -> Tuple[numpy.ndarray, CellCertificate]:
	"""
		Reconstructs a point of the transmitted cell.

		The cell search is anchored at the cell's Chebyshev direction and run with `restarts` random
		starts; the estimate is the normalised average of every local maximiser it finds (plus the anchor
		when the cell is not contained in a hemisphere), which lies in the cell because the cell is convex.
	Returns
	-------
	x_hat: numpy.ndarray
	certificate: CellCertificate
		Radius of the transmitted cell around its Chebyshev direction.
	"""
	d, M = encoded.d, encoded.M
	if encoded.k == 0:
		x_hat = basis_vector(d)
		certificate = CellCertificate(
			witness = -x_hat, radius = 2.0, iterations = 0, residual = 0.0, converged = True, phase = "empty",
			witnesses = [-x_hat]
		)
		return x_hat, certificate

	frame = make_frame(d, M, encoded.frame_seed.derive("frame"))
	indices = list(encoded.indices)
	signs = encoded.signs
	anchor = chebyshev_direction(signs[:, None] * frame.rows[indices])
	opts = dataclasses.replace(opts if opts is not None else SolverOptions(), restarts = restarts)
	certificate = cell_radius(frame, indices, anchor, opts, signs = signs, stream = encoded.frame_seed.derive("decoder"))
	points = list(certificate.witnesses)
	if certificate.phase != "polytope":
		# A cell reaching past the hemisphere yields a single far witness; the anchor keeps the average central.
		points.append(anchor)
	x_hat = unit_vector(numpy.mean(points, axis = 0))
	return x_hat, certificate

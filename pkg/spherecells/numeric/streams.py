"""
	Deterministic random streams.

	A stream is a (master_seed, stream_id) pair. Its output is produced by the counter-based Philox
	generator keyed with both numbers, so the same pair gives the same sequence on every run and platform,
	and two different stream ids share no prefix. Nothing is stored between calls: every request starts
	at counter zero. Callers that need several independent draws derive child streams instead of
	advancing a shared generator.
"""
import hashlib
import math
from dataclasses import dataclass
from typing import Union

import numpy

try:
	from spherecells.errors import InvalidArgumentError
except ModuleNotFoundError:
	from ..errors import InvalidArgumentError

MAXIMUM_SEED = 2 ** 64
# 53 random mantissa bits per double.
UNIFORM_SCALE = 2.0 ** -53


@dataclass(frozen = True)
class RngStream:
	master_seed: int
	stream_id: int = 0

	def __post_init__(self):
		for label, value in [("master_seed", self.master_seed), ("stream_id", self.stream_id)]:
			if not isinstance(value, (int, numpy.integer)) or not 0 <= int(value) < MAXIMUM_SEED:
				message = f"'{label}' must be an unsigned 64-bit integer, got {value!r}"
				raise InvalidArgumentError(message)

	def derive(self, label: Union[str, int]) -> "RngStream":
		""" Returns the child stream identified by `label`. The mapping is a keyed hash, so children of
			different parents (or different labels) do not collide in practice.
		"""
		key = f"{self.stream_id}:{label}".encode()
		digest = hashlib.blake2b(key, digest_size = 8, person = b"cellcert").digest()
		return RngStream(self.master_seed, int.from_bytes(digest, "little"))

	def trial(self, trial_id: int) -> "RngStream":
		return self.derive(f"trial-{trial_id}")

	def bit_generator(self) -> numpy.random.Philox:
		key = numpy.array([self.master_seed, self.stream_id], dtype = numpy.uint64)
		return numpy.random.Philox(key = key)


def uniforms(stream: RngStream, n: int) -> numpy.ndarray:
	""" `n` doubles in [0, 1) built from the top 53 bits of each raw 64-bit Philox output. """
	if n < 0:
		message = f"Cannot draw a negative number of samples ({n})"
		raise InvalidArgumentError(message)
	if n == 0:
		return numpy.zeros(0)
	raw = stream.bit_generator().random_raw(n)
	return (raw >> numpy.uint64(11)).astype(numpy.float64) * UNIFORM_SCALE


def gaussian(stream: RngStream, n: int, variance: float = 1.0) -> numpy.ndarray:
	"""
		Draws `n` i.i.d. N(0, variance) samples with the Box-Muller transform.
	Parameters
	----------
	stream: RngStream
		Source of the uniforms. Pairs (u1, u2) are consumed in order, so the first `n` samples of a longer
		request equal a shorter request from the same stream.
	n: int
	variance: float
		Samples are the unit-variance samples scaled by sqrt(variance), so a variance of 0.25 gives exactly
		half of the variance 1 samples.

	Returns
	-------
	numpy.ndarray
	"""
	if not math.isfinite(variance) or variance <= 0:
		message = f"The variance must be a finite positive number, got {variance}"
		raise InvalidArgumentError(message)
	if n == 0:
		return numpy.zeros(0)
	pairs = (n + 1) // 2
	values = uniforms(stream, 2 * pairs)
	# 1 - u lies in (0, 1], keeping the logarithm finite.
	first = 1.0 - values[0::2]
	second = values[1::2]
	radius = numpy.sqrt(-2.0 * numpy.log(first))
	angle = 2.0 * numpy.pi * second
	samples = numpy.empty(2 * pairs)
	samples[0::2] = radius * numpy.cos(angle)
	samples[1::2] = radius * numpy.sin(angle)
	return samples[:n] * math.sqrt(variance)


def random_order(stream: RngStream, n: int) -> numpy.ndarray:
	""" A uniformly random permutation of range(n), obtained by sorting `n` uniforms. """
	return numpy.argsort(uniforms(stream, n), kind = "stable")

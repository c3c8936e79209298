"""
	Binary files for frames, sign patterns and encoded vectors. All integers are little-endian.

	CCF1  magic, d, M, master_seed, stream_id (u64 each), then M * d float64 in row-major order.
	CCS1  magic, M (u64), then ceil(M / 8) bytes of sign bits packed LSB-first (1 encodes +1).
	CCE1  magic, d, M (u64), tau (f64), k (u64), rank length (u16) and the rank as a big-endian
	      minimal-length byte string, ceil(k / 8) bytes of sign bits packed LSB-first,
	      master_seed, stream_id (u64).
"""
import struct
from pathlib import Path
from typing import Tuple, Union

import numpy

try:
	from spherecells.codec.encoder import EncodedVector
	from spherecells.errors import CorruptInputError, InvalidArgumentError
	from spherecells.numeric import RngStream
	from spherecells.tessellation.frames import GaussianFrame, SignPattern
except ModuleNotFoundError:
	from ..codec.encoder import EncodedVector
	from ..errors import CorruptInputError, InvalidArgumentError
	from ..numeric import RngStream
	from ..tessellation.frames import GaussianFrame, SignPattern

FRAME_MAGIC = b"CCF1"
SIGNS_MAGIC = b"CCS1"
ENCODED_MAGIC = b"CCE1"

PathLike = Union[str, Path]


class _Reader:
	""" Sequential reader that turns every short read into a `CorruptInputError`. """

	def __init__(self, data: bytes, kind: str):
		self.data = data
		self.kind = kind
		self.position = 0

	def take(self, size: int) -> bytes:
		if size < 0 or self.position + size > len(self.data):
			message = f"The {self.kind} data ends after {len(self.data)} bytes; expected at least {self.position + size}."
			raise CorruptInputError(message)
		chunk = self.data[self.position:self.position + size]
		self.position += size
		return chunk

	def unpack(self, layout: str) -> Tuple:
		return struct.unpack(layout, self.take(struct.calcsize(layout)))

	def magic(self, expected: bytes):
		found = self.take(len(expected))
		if found != expected:
			message = f"Not a {self.kind} file: expected magic {expected!r}, found {found!r}"
			raise CorruptInputError(message)

	def finish(self):
		if self.position != len(self.data):
			message = f"{len(self.data) - self.position} unexpected trailing bytes in the {self.kind} data."
			raise CorruptInputError(message)


def _pack_bits(positive: numpy.ndarray) -> bytes:
	return numpy.packbits(numpy.asarray(positive, dtype = bool), bitorder = "little").tobytes()


def _unpack_bits(data: bytes, count: int) -> numpy.ndarray:
	bits = numpy.unpackbits(numpy.frombuffer(data, dtype = numpy.uint8), bitorder = "little")
	if numpy.any(bits[count:]):
		message = "The padding bits after the last sign are not zero."
		raise CorruptInputError(message)
	return bits[:count]


def frame_to_bytes(frame: GaussianFrame) -> bytes:
	seed = frame.seed if frame.seed is not None else RngStream(0)
	header = FRAME_MAGIC + struct.pack("<4Q", frame.d, frame.M, seed.master_seed, seed.stream_id)
	return header + numpy.ascontiguousarray(frame.rows, dtype = "<f8").tobytes()


def frame_from_bytes(data: bytes) -> GaussianFrame:
	reader = _Reader(data, "frame")
	reader.magic(FRAME_MAGIC)
	d, M, master_seed, stream_id = reader.unpack("<4Q")
	if d == 0 or M == 0 or d * M > len(data):
		message = f"The frame header declares d = {d}, M = {M}, which does not match {len(data)} bytes."
		raise CorruptInputError(message)
	rows = numpy.frombuffer(reader.take(8 * d * M), dtype = "<f8").astype(float).reshape(M, d)
	reader.finish()
	if not numpy.all(numpy.isfinite(rows)):
		message = "The frame contains non-finite entries."
		raise CorruptInputError(message)
	return GaussianFrame(d = d, M = M, rows = rows, seed = RngStream(master_seed, stream_id))


def signs_to_bytes(pattern: SignPattern) -> bytes:
	return SIGNS_MAGIC + struct.pack("<Q", pattern.M) + _pack_bits(pattern.bits > 0)


def signs_from_bytes(data: bytes) -> SignPattern:
	reader = _Reader(data, "sign pattern")
	reader.magic(SIGNS_MAGIC)
	(M,) = reader.unpack("<Q")
	bits = _unpack_bits(reader.take((M + 7) // 8), M)
	reader.finish()
	return SignPattern(bits = numpy.where(bits == 1, 1, -1).astype(numpy.int8))


def encoded_to_bytes(encoded: EncodedVector) -> bytes:
	rank = encoded.subset_rank.to_bytes((encoded.subset_rank.bit_length() + 7) // 8, "big")
	if len(rank) >= 2 ** 16:
		message = f"The subset rank needs {len(rank)} bytes, more than a 16-bit length prefix allows."
		raise InvalidArgumentError(message)
	return b"".join([
		ENCODED_MAGIC,
		struct.pack("<2QdQ", encoded.d, encoded.M, encoded.tau, encoded.k),
		struct.pack("<H", len(rank)), rank,
		_pack_bits(numpy.asarray(encoded.sign_bits, dtype = int) == 1),
		struct.pack("<2Q", encoded.frame_seed.master_seed, encoded.frame_seed.stream_id)
	])


def encoded_from_bytes(data: bytes) -> EncodedVector:
	reader = _Reader(data, "encoded vector")
	reader.magic(ENCODED_MAGIC)
	d, M, tau, k = reader.unpack("<2QdQ")
	(length,) = reader.unpack("<H")
	rank = int.from_bytes(reader.take(length), "big")
	if k > M:
		message = f"The encoded vector declares k = {k} indices out of M = {M}."
		raise CorruptInputError(message)
	bits = _unpack_bits(reader.take((k + 7) // 8), k)
	master_seed, stream_id = reader.unpack("<2Q")
	reader.finish()
	try:
		return EncodedVector(
			frame_seed = RngStream(master_seed, stream_id), d = d, M = M, k = k, subset_rank = rank,
			sign_bits = tuple(int(bit) for bit in bits), tau = tau
		)
	except InvalidArgumentError as exception:
		raise CorruptInputError(str(exception)) from exception


def write_bytes(filename: PathLike, data: bytes) -> Path:
	filename = Path(filename)
	filename.write_bytes(data)
	return filename


def read_bytes(filename: PathLike) -> bytes:
	return Path(filename).read_bytes()

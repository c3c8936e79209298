import struct

import numpy
import pytest

from spherecells.codec import EncodedVector
from spherecells.dataio import binary
from spherecells.errors import CorruptInputError
from spherecells.numeric import RngStream
from spherecells.tessellation import SignPattern, make_frame


@pytest.fixture
def frame():
	return make_frame(3, 16, RngStream(4).derive("frame"))


@pytest.fixture
def encoded() -> EncodedVector:
	return EncodedVector(RngStream(1, 2), d = 3, M = 5, k = 3, subset_rank = 3, sign_bits = (1, 0, 1), tau = 0.25)


def test_frame_layout(frame):
	data = binary.frame_to_bytes(frame)
	assert data[:4] == b"CCF1"
	assert len(data) == 4 + 4 * 8 + 16 * 3 * 8
	assert struct.unpack("<4Q", data[4:36])[:2] == (3, 16)
	assert numpy.frombuffer(data[36:44], dtype = "<f8")[0] == frame.rows[0, 0]


def test_frame_round_trip(frame):
	loaded = binary.frame_from_bytes(binary.frame_to_bytes(frame))
	assert (loaded.d, loaded.M) == (3, 16)
	assert numpy.array_equal(loaded.rows, frame.rows)
	assert loaded.seed == frame.seed


def test_frame_from_file(frame, tmp_path):
	filename = binary.write_bytes(tmp_path / "frame.ccf", binary.frame_to_bytes(frame))
	assert numpy.array_equal(binary.frame_from_bytes(binary.read_bytes(filename)).rows, frame.rows)


def _corrupt(data: bytes, position: int, value: bytes) -> bytes:
	return data[:position] + value + data[position + len(value):]


@pytest.mark.parametrize(
	"mutate",
	[
		lambda data: _corrupt(data, 0, b"X"),
		lambda data: data[:-1],
		lambda data: data + b"\x00",
		lambda data: data[:10],
		lambda data: _corrupt(data, 4, struct.pack("<Q", 10 ** 9)),
		lambda data: _corrupt(data, 36, struct.pack("<d", float("nan")))
	]
)
def test_corrupt_frames(frame, mutate):
	with pytest.raises(CorruptInputError):
		binary.frame_from_bytes(mutate(binary.frame_to_bytes(frame)))


def test_sign_pattern_layout():
	pattern = SignPattern(bits = numpy.array([1, -1, 1], dtype = numpy.int8))
	data = binary.signs_to_bytes(pattern)
	assert data == b"CCS1" + struct.pack("<Q", 3) + bytes([0b101])
	assert binary.signs_from_bytes(data).bits.tolist() == [1, -1, 1]


def test_sign_pattern_padding_must_be_zero():
	data = b"CCS1" + struct.pack("<Q", 3) + bytes([0b1101])
	with pytest.raises(CorruptInputError):
		binary.signs_from_bytes(data)


def test_sign_pattern_of_nine_bits():
	bits = numpy.array([1] * 8 + [-1], dtype = numpy.int8)
	data = binary.signs_to_bytes(SignPattern(bits = bits))
	assert len(data) == 4 + 8 + 2
	assert binary.signs_from_bytes(data).bits.tolist() == bits.tolist()


def test_encoded_layout(encoded):
	data = binary.encoded_to_bytes(encoded)
	expected = b"".join([
		b"CCE1",
		struct.pack("<2QdQ", 3, 5, 0.25, 3),
		struct.pack("<H", 1), b"\x03",
		bytes([0b101]),
		struct.pack("<2Q", 1, 2)
	])
	assert data == expected
	assert binary.encoded_from_bytes(data) == encoded


def test_encoded_rank_zero_has_no_rank_bytes():
	encoded = EncodedVector(RngStream(7), d = 3, M = 8, k = 2, subset_rank = 0, sign_bits = (0, 0), tau = 0.1)
	data = binary.encoded_to_bytes(encoded)
	assert data[36:38] == struct.pack("<H", 0)
	assert binary.encoded_from_bytes(data).indices == (0, 1)


@pytest.mark.parametrize(
	"mutate",
	[
		lambda data: b"CCF1" + data[4:],
		lambda data: data[:-3],
		lambda data: data + b"\x01",
		# k = 9 > M = 5
		lambda data: _corrupt(data, 28, struct.pack("<Q", 9)),
		# rank 10 is not below C(5, 3)
		lambda data: _corrupt(data, 38, b"\x0a"),
		# a padding bit after the three signs
		lambda data: _corrupt(data, 39, bytes([0b1101]))
	]
)
def test_corrupt_encoded_vectors(encoded, mutate):
	with pytest.raises(CorruptInputError):
		binary.encoded_from_bytes(mutate(binary.encoded_to_bytes(encoded)))

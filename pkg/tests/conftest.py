import numpy
import pytest

from spherecells.numeric import RngStream
from spherecells.tessellation import ConstantsConfig, make_frame

# Rows of the hand-checked planar example; with x = (1, 0) the inner products are -0.1, 0.5, -0.05, 0.7.
PLANAR_ROWS = [
	[-0.1, 0.9],
	[0.5, -0.2],
	[-0.05, 0.3],
	[0.7, 0.1]
]


@pytest.fixture
def planar_rows() -> numpy.ndarray:
	return numpy.array(PLANAR_ROWS)


@pytest.fixture
def cfg() -> ConstantsConfig:
	return ConstantsConfig()


@pytest.fixture
def stream() -> RngStream:
	return RngStream(1)


@pytest.fixture
def small_frame(stream):
	return make_frame(4, 256, stream.derive("frame"))

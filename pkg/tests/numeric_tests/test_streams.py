import numpy
import pytest

from spherecells.errors import InvalidArgumentError
from spherecells.numeric import RngStream, gaussian, uniforms
from spherecells.numeric.streams import random_order


@pytest.fixture
def stream() -> RngStream:
	return RngStream(7)


def test_same_stream_same_values(stream):
	assert numpy.array_equal(uniforms(stream, 100), uniforms(RngStream(7, 0), 100))


def test_distinct_streams_have_no_shared_prefix(stream):
	left = uniforms(stream, 50)
	right = uniforms(RngStream(7, 1), 50)
	other_seed = uniforms(RngStream(8, 0), 50)
	assert not numpy.any(left == right)
	assert not numpy.any(left == other_seed)


def test_requests_restart_at_counter_zero(stream):
	# A longer request extends a shorter one.
	assert numpy.array_equal(uniforms(stream, 10), uniforms(stream, 1000)[:10])
	assert numpy.array_equal(gaussian(stream, 7), gaussian(stream, 100)[:7])


def test_derive_is_deterministic_and_distinct(stream):
	assert stream.derive("frame") == stream.derive("frame")
	assert stream.derive("frame") != stream.derive("subset")
	assert stream.trial(3) == stream.derive("trial-3")
	assert stream.derive("frame").master_seed == stream.master_seed


def test_uniforms_range(stream):
	values = uniforms(stream, 10000)
	assert values.min() >= 0.0
	assert values.max() < 1.0
	assert uniforms(stream, 0).size == 0


def test_gaussian_empty(stream):
	assert gaussian(stream, 0).size == 0


def test_gaussian_moments(stream):
	samples = gaussian(stream, 10 ** 6)
	assert abs(samples.mean()) <= 0.004
	assert abs(samples.var() - 1.0) <= 0.01


def test_gaussian_variance_scales_the_same_uniforms(stream):
	unit = gaussian(stream, 10 ** 6, 1.0)
	quarter = gaussian(stream, 10 ** 6, 0.25)
	assert numpy.array_equal(quarter, 0.5 * unit)


def test_gaussian_odd_count(stream):
	assert gaussian(stream, 5).size == 5


@pytest.mark.parametrize("variance", [0.0, -1.0, float('inf'), float('nan')])
def test_gaussian_rejects_bad_variance(stream, variance):
	with pytest.raises(InvalidArgumentError):
		gaussian(stream, 10, variance)


@pytest.mark.parametrize("seed,stream_id", [(-1, 0), (2 ** 64, 0), (0, -5), (1.5, 0)])
def test_stream_rejects_bad_seeds(seed, stream_id):
	with pytest.raises(InvalidArgumentError):
		RngStream(seed, stream_id)


def test_random_order_is_a_permutation(stream):
	order = random_order(stream, 100)
	assert sorted(order.tolist()) == list(range(100))
	assert numpy.array_equal(order, random_order(stream, 100))

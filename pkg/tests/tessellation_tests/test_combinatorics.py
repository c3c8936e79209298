import math
from fractions import Fraction

import numpy
import pytest

from spherecells.errors import InvalidArgumentError
from spherecells.numeric import RngStream
from spherecells.tessellation import (
	binom_tail_ratio_bound, cell_count_upper_bound, expected_face_count, sampled_cell_count, schlafli_cell_count
)


@pytest.mark.parametrize(
	"M,d,expected",
	[
		(1, 1, 2),
		(1, 3, 2),
		(3, 2, 6),
		(4, 3, 14),
		(5, 2, 10),
		(3, 3, 8)
	]
)
def test_schlafli_cell_count(M, d, expected):
	assert schlafli_cell_count(M, d) == expected


def test_schlafli_cell_count_is_exact_for_large_inputs():
	value = schlafli_cell_count(10 ** 6, 20)
	assert isinstance(value, int)
	assert value == 2 * sum(math.comb(10 ** 6 - 1, i) for i in range(20))


@pytest.mark.parametrize("M,d", [(0, 3), (4, 0)])
def test_schlafli_cell_count_rejects(M, d):
	with pytest.raises(InvalidArgumentError):
		schlafli_cell_count(M, d)


@pytest.mark.parametrize(
	"M,d,lhs,rhs",
	[
		(10, 3, 176, Fraction(192)),
		(10, 0, 1, Fraction(1))
	]
)
def test_binom_tail_ratio_bound_examples(M, d, lhs, rhs):
	assert binom_tail_ratio_bound(M, d) == (lhs, rhs)


def test_binom_tail_ratio_bound_holds():
	for M in range(1, 40):
		for d in range(0, (M + 1) // 2):
			lhs, rhs = binom_tail_ratio_bound(M, d)
			assert lhs <= rhs


def test_binom_tail_ratio_bound_needs_positive_denominator():
	with pytest.raises(InvalidArgumentError):
		binom_tail_ratio_bound(5, 3)


def test_expected_face_count_examples():
	assert expected_face_count(10, 3) == Fraction(180, 46)
	assert expected_face_count(10, 2) == 2
	assert 3.99 <= float(expected_face_count(10 ** 6, 3)) <= 4


@pytest.mark.parametrize("M,d", [(65, 32), (1000, 16), (4097, 8), (2 ** 16, 2), (2 ** 16, 32)])
def test_expected_face_count_stays_below_four_d_on_large_frames(M, d):
	assert expected_face_count(M, d) <= 4 * d


def test_expected_face_count_rejects():
	with pytest.raises(InvalidArgumentError):
		expected_face_count(1, 3)


def test_cell_count_upper_bound():
	for M, d in [(4, 3), (100, 5), (1000, 10)]:
		assert schlafli_cell_count(M, d) <= cell_count_upper_bound(M, d)
	with pytest.raises(InvalidArgumentError):
		cell_count_upper_bound(2, 3)


def test_sampled_cell_count_coordinate_planes():
	# The three coordinate planes cut the sphere into its eight octants.
	assert sampled_cell_count(numpy.eye(3), 20000, RngStream(5)) == 8


def test_sampled_cell_count_is_chunk_independent_lower_bound():
	rows = numpy.random.default_rng(3).normal(size = (6, 3))
	stream = RngStream(8)
	sampled = sampled_cell_count(rows, 5000, stream, chunk_size = 700)
	assert sampled <= schlafli_cell_count(6, 3)
	assert sampled > 0

import itertools
from math import comb

import pytest

from spherecells.codec import bit_cost, subset_rank, subset_unrank
from spherecells.errors import InvalidArgumentError


@pytest.mark.parametrize(
	"indices,M,expected",
	[
		((0, 1, 2), None, 0),
		((1, 2, 3), 5, 3),
		((), 4, 0),
		((3,), 4, 3),
		((0, 4), 5, 6)
	]
)
def test_subset_rank(indices, M, expected):
	assert subset_rank(indices, M) == expected


@pytest.mark.parametrize("M", range(1, 13))
def test_ranks_enumerate_every_subset(M):
	for k in range(M + 1):
		ranks = set()
		for subset in itertools.combinations(range(M), k):
			rank = subset_rank(subset, M)
			assert subset_unrank(rank, M, k) == subset
			ranks.add(rank)
		assert ranks == set(range(comb(M, k)))


def test_rank_of_a_large_subset():
	subset = tuple(range(0, 2 ** 16, 97))
	rank = subset_rank(subset, 2 ** 16)
	assert subset_unrank(rank, 2 ** 16, len(subset)) == subset


@pytest.mark.parametrize(
	"indices,M",
	[
		((2, 1), None),
		((1, 1), None),
		((-1, 2), None),
		((0, 5), 5)
	]
)
def test_subset_rank_rejects(indices, M):
	with pytest.raises(InvalidArgumentError):
		subset_rank(indices, M)


@pytest.mark.parametrize(
	"rank,M,k",
	[
		(10, 5, 2),
		(-1, 5, 2),
		(0, 5, 6)
	]
)
def test_subset_unrank_rejects(rank, M, k):
	with pytest.raises(InvalidArgumentError):
		subset_unrank(rank, M, k)


@pytest.mark.parametrize(
	"M,k,expected",
	[
		(8, 2, 7),
		(8, 0, 0),
		(5, 5, 5),
		(1024, 1, 11),
		(2, 1, 2)
	]
)
def test_bit_cost(M, k, expected):
	assert bit_cost(M, k) == expected


def test_bit_cost_rejects():
	with pytest.raises(InvalidArgumentError):
		bit_cost(4, 5)

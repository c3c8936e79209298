"""
	Colexicographic ranking of k-subsets of range(M) (the combinatorial number system).

	rank({c_0 < c_1 < ... < c_{k-1}}) = sum_j C(c_j, j + 1)
"""
from math import comb
from typing import Iterable, Optional, Tuple

try:
	from spherecells.errors import InvalidArgumentError
except ModuleNotFoundError:
	from ..errors import InvalidArgumentError


def _check_sorted(indices: Tuple[int, ...], M: Optional[int]):
	if any(later <= earlier for earlier, later in zip(indices, indices[1:])):
		message = f"Subset indices must be strictly increasing: {list(indices)}"
		raise InvalidArgumentError(message)
	if indices and indices[0] < 0:
		message = f"Subset indices must be non-negative, got {indices[0]}"
		raise InvalidArgumentError(message)
	if M is not None and indices and indices[-1] >= M:
		message = f"Subset index {indices[-1]} is out of range for M = {M}"
		raise InvalidArgumentError(message)


def subset_rank(indices: Iterable[int], M: Optional[int] = None) -> int:
	indices = tuple(int(i) for i in indices)
	_check_sorted(indices, M)
	return sum(comb(c, j + 1) for j, c in enumerate(indices))


def subset_unrank(rank: int, M: int, k: int) -> Tuple[int, ...]:
	""" Inverse of `subset_rank` over the k-subsets of range(M). """
	if not 0 <= k <= M:
		message = f"Expected 0 <= k <= M, got k = {k}, M = {M}"
		raise InvalidArgumentError(message)
	total = comb(M, k)
	if not 0 <= rank < total:
		message = f"Rank {rank} is outside [0, C({M}, {k}) = {total})"
		raise InvalidArgumentError(message)
	members = []
	upper = M
	for j in range(k, 0, -1):
		# Largest c < upper with C(c, j) <= rank.
		low, high = j - 1, upper - 1
		while low < high:
			middle = (low + high + 1) // 2
			if comb(middle, j) <= rank:
				low = middle
			else:
				high = middle - 1
		members.append(low)
		rank -= comb(low, j)
		upper = low
	return tuple(reversed(members))


def bit_cost(M: int, k: int) -> int:
	""" ceil(log2 C(M, k)) + k: the subset rank plus one sign bit per member. """
	if not 0 <= k <= M:
		message = f"Expected 0 <= k <= M, got k = {k}, M = {M}"
		raise InvalidArgumentError(message)
	return (comb(M, k) - 1).bit_length() + k

import math

import pytest

from spherecells.certifier import chain_radius_bound, margin_radius_bound, theorem_radius_bound
from spherecells.errors import InvalidArgumentError
from spherecells.tessellation import ConstantsConfig, tau_of


def test_theorem_radius_bound_example(cfg):
	assert theorem_radius_bound(4, 1024, cfg) == pytest.approx(0.0375086, abs = 1e-6)


def test_theorem_radius_bound_is_below_C5():
	cfg = ConstantsConfig(C5 = 2.5)
	for M in [8, 64, 1024, 2 ** 20]:
		assert 0 < theorem_radius_bound(4, M, cfg) < 2.5


def test_theorem_radius_bound_decreases_in_M(cfg):
	values = [theorem_radius_bound(8, 2 ** k, cfg) for k in range(10, 24)]
	assert all(later < earlier for earlier, later in zip(values, values[1:]))


@pytest.mark.parametrize(
	"tau,q,expected",
	[
		(0.1, 1.0, 0.099628),
		(0.5, 0.0, math.sqrt(2)),
		(1e-3, 1e3, 1e-6)
	]
)
def test_margin_radius_bound(tau, q, expected):
	assert margin_radius_bound(tau, q) == pytest.approx(expected, abs = 1e-6)


@pytest.mark.parametrize("tau,q", [(0.0, 1.0), (-1.0, 1.0), (0.1, -0.5)])
def test_margin_radius_bound_rejects(tau, q):
	with pytest.raises(InvalidArgumentError):
		margin_radius_bound(tau, q)


def test_chain_radius_bound(cfg):
	assert chain_radius_bound(8, 4096, cfg) == pytest.approx(margin_radius_bound(tau_of(8, 4096, cfg), 1 / math.sqrt(8)))

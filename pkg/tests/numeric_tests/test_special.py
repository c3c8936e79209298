import math

import numpy
import pytest
from scipy import special

from spherecells.numeric import erf, erfc, gauss_tail
from spherecells.numeric.special import gauss_density


@pytest.mark.parametrize(
	"t,expected",
	[
		(0.0, 0.0),
		(1.0, 0.842700792950),
		(-1.0, -0.842700792950)
	]
)
def test_erf_values(t, expected):
	assert erf(t) == pytest.approx(expected, abs = 1e-12)


@pytest.mark.parametrize(
	"a,expected",
	[
		(0.0, 0.5),
		(1.0, 0.158655253931),
		(-1.0, 0.841344746069)
	]
)
def test_gauss_tail_values(a, expected):
	assert gauss_tail(a) == pytest.approx(expected, abs = 1e-12)


def test_erf_against_scipy():
	for t in numpy.linspace(-6, 6, 241):
		assert erf(t) == pytest.approx(special.erf(t), abs = 1e-12)


def test_erfc_keeps_relative_accuracy_in_the_tail():
	for t in [2.5, 4.0, 8.0, 15.0, 25.0]:
		assert erfc(t) == pytest.approx(special.erfc(t), rel = 1e-10)


def test_erf_is_odd_and_increasing():
	grid = numpy.linspace(-5, 5, 401)
	values = [erf(t) for t in grid]
	assert all(left < right for left, right in zip(values, values[1:]) if right < 1.0)
	for t in grid:
		assert abs(erf(t) + erf(-t)) <= 1e-14


def test_gauss_tail_symmetry():
	for a in [0.1, 0.7, 1.9, 3.3]:
		assert gauss_tail(a) + gauss_tail(-a) == pytest.approx(1.0, abs = 1e-14)


def test_gauss_density():
	assert gauss_density(0.0) == pytest.approx(1.0 / math.sqrt(2.0 * math.pi))

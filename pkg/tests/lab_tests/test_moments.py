import math

import numpy
import pytest
from scipy.stats import truncnorm

from spherecells.errors import DomainError, InvalidArgumentError, OverflowDomainError
from spherecells.lab import moments
from spherecells.lab.moments import TruncatedGaussianSpec
from spherecells.numeric import RngStream


def test_expected_band_size_example():
	assert moments.expected_band_size(4, 1024, 0.0187676) == pytest.approx(15.33, abs = 0.01)


def test_expected_band_size_needs_positive_tau():
	with pytest.raises(InvalidArgumentError):
		moments.expected_band_size(4, 1024, 0.0)


def test_expected_half_band_size_is_below_the_band():
	for tau in [0.01, 0.1, 0.5]:
		half = moments.expected_half_band_size(8, 4096, tau)
		assert 0 < half < moments.expected_band_size(8, 4096, tau)


def test_margin_probability():
	assert moments.margin_probability(8, 0.0, 0.5) == pytest.approx(0.5)
	assert moments.margin_probability(8, 1e-6, 1.0) == pytest.approx(0.5, abs = 1e-5)
	with pytest.raises(InvalidArgumentError):
		moments.margin_probability(8, 0.1, 0.0)


def test_chernoff_tail():
	assert moments.chernoff_tail(0.5, 100.0) == pytest.approx(2 * math.exp(-25 / 3))
	assert moments.chernoff_tail(0.1, 1.0) == 1.0


@pytest.mark.parametrize(
	"m,d,expected",
	[
		(0, 3, 1.0),
		(1, 3, 1.0),
		(3, 2, 0.25),
		(4, 3, 0.5)
	]
)
def test_hemisphere_exit_probability(m, d, expected):
	assert moments.hemisphere_exit_probability(m, d) == pytest.approx(expected)


def test_hemisphere_exit_probability_decreases():
	values = [moments.hemisphere_exit_probability(m, 8) for m in range(8, 60)]
	assert all(later < earlier for earlier, later in zip(values, values[1:]))


@pytest.mark.parametrize(
	"threshold,variance,expected",
	[
		(1.0, 1.0, 2.52513),
		(0.0, 0.25, 0.25),
		(0.0, 1.0, 1.0)
	]
)
def test_truncated_covariance_alpha(threshold, variance, expected):
	alpha = moments.truncated_covariance_alpha(TruncatedGaussianSpec(threshold, variance))
	assert alpha == pytest.approx(expected, abs = 1e-4)


@pytest.mark.parametrize("a", [-1.0, 0.3, 2.0, 10.0])
def test_truncated_covariance_alpha_against_scipy(a):
	alpha = moments.truncated_covariance_alpha(TruncatedGaussianSpec(a, 1.0))
	assert alpha == pytest.approx(truncnorm.moment(2, a, numpy.inf), rel = 1e-8)


def test_truncated_covariance_alpha_overflow():
	with pytest.raises(OverflowDomainError):
		moments.truncated_covariance_alpha(TruncatedGaussianSpec(40.0, 1.0))
	# Overflow is a domain error.
	with pytest.raises(DomainError):
		moments.truncated_covariance_alpha(TruncatedGaussianSpec(10.0, 0.01))


@pytest.mark.parametrize(
	"a,expected",
	[
		(0.0, math.sqrt(2)),
		(0.5, 1.6585)
	]
)
def test_psi2_ratio(a, expected):
	assert moments.psi2_ratio(a) == pytest.approx(expected, abs = 1e-3)


@pytest.mark.parametrize("a", [-0.1, 0.51, 3.0])
def test_psi2_ratio_domain(a):
	with pytest.raises(DomainError):
		moments.psi2_ratio(a)


@pytest.mark.parametrize(
	"threshold,variance",
	[
		(0.0, -1.0),
		(math.inf, 1.0),
		(math.nan, 1.0)
	]
)
def test_spec_validation(threshold, variance):
	with pytest.raises(InvalidArgumentError):
		TruncatedGaussianSpec(threshold, variance)


def test_second_moment_matrix():
	spec = TruncatedGaussianSpec(0.0, 0.25)
	matrix = moments.second_moment_matrix(spec, 3)
	assert numpy.diag(matrix).tolist() == pytest.approx([0.25, 0.25, 0.25])
	assert numpy.count_nonzero(matrix - numpy.diag(numpy.diag(matrix))) == 0


def test_sample_truncated():
	spec = TruncatedGaussianSpec(0.5, 0.25)
	draws = moments.sample_truncated(spec, 100000, RngStream(3))
	assert draws.min() >= 0.5 - 1e-12
	assert float((draws * draws).mean()) == pytest.approx(moments.truncated_covariance_alpha(spec), rel = 0.02)
	assert numpy.array_equal(draws, moments.sample_truncated(spec, 100000, RngStream(3)))


def test_sample_truncated_rows():
	spec = TruncatedGaussianSpec(0.0, 0.25)
	rows = moments.sample_truncated_rows(spec, 1000, 3, RngStream(4))
	assert rows.shape == (1000, 3)
	assert rows[:, 0].min() >= 0.0
	assert rows[:, 1:].min() < 0.0
	assert moments.sample_truncated_rows(spec, 10, 1, RngStream(4)).shape == (10, 1)

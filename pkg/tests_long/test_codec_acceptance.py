"""
	Round trips through the encoder at the frame sizes the rate-distortion checks are calibrated for.
"""
import pytest

from spherecells import codec, lab
from spherecells.lab import TrialRunner
from spherecells.numeric import RngStream
from spherecells.tessellation import ConstantsConfig


@pytest.fixture
def runner() -> TrialRunner:
	return TrialRunner(threads = None)


def test_error_within_the_fitted_radius_bound(runner):
	cfg = ConstantsConfig()
	fit = lab.radius_scaling_experiment([8], [4096], cfg, 50, RngStream(4), runner = runner)
	result = codec.rate_distortion_experiment(8, [4096], cfg, 200, RngStream(8), runner = runner,
		C5_hat = fit.fitted["C5_hat"])
	assert result.fitted["bound_coverage"] >= 0.95
	assert all(item.passed for item in result.assertions), [item.name for item in result.failures()]


def test_error_falls_as_the_frame_grows(runner):
	result = codec.rate_distortion_experiment(8, [2 ** 10, 2 ** 12, 2 ** 14, 2 ** 16], ConstantsConfig(), 200,
		RngStream(8), runner = runner)
	errors = result.table["median_error"].tolist()
	assert all(later < earlier for earlier, later in zip(errors, errors[1:]))
	bits = result.table["median_bits"].tolist()
	assert all(later > earlier for earlier, later in zip(bits, bits[1:]))
	assert result.fitted["slope_log_M"] == pytest.approx(-1.0, abs = 0.2)

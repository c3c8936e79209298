"""
	Runs the experiments at the sizes their statistical assertions are calibrated for. Each one takes from a
	few seconds to several minutes, so they live apart from the unit tests.
"""
from pathlib import Path

import pytest

from spherecells import lab
from spherecells.dataio import load_config
from spherecells.lab import TrialRunner, TruncatedGaussianSpec
from spherecells.numeric import RngStream
from spherecells.tessellation import ConstantsConfig
from spherecells.workflows import workflow_experiment

FOLDER_EXAMPLE = Path(__file__).parent.parent / "example"


@pytest.fixture
def runner() -> TrialRunner:
	return TrialRunner(threads = None)


@pytest.fixture
def output(tmp_path) -> Path:
	""" A temporary output folder for the workflow runs. """
	return tmp_path / "output"


def _check(result):
	failures = [(item.name, item.detail) for item in result.failures()]
	assert result.passed, failures


def test_subset_size(runner):
	result = lab.subset_size_experiment(16, 2 ** 14, ConstantsConfig(), 200, RngStream(1), runner)
	_check(result)
	assert result.fitted["out_of_band_fraction_0.5"] == 0


def test_radius_scaling(runner):
	result = lab.radius_scaling_experiment([4, 8, 16], [2 ** 10, 2 ** 12, 2 ** 14, 2 ** 16], ConstantsConfig(), 50,
		RngStream(4), runner = runner)
	_check(result)
	for d in [4, 8, 16]:
		assert result.fitted[f"slope_d{d}"] == pytest.approx(-1.0, abs = 0.2)
	assert result.fitted["bound_coverage"] >= 0.99
	assert 0 < result.fitted["C3_hat"] <= result.fitted["C4_hat"]


def test_radius_constants_are_stable_across_seeds(runner):
	grid = ([8], [2 ** 10, 2 ** 12], ConstantsConfig(), 50)
	first = lab.radius_scaling_experiment(*grid, RngStream(4), runner = runner).fitted
	second = lab.radius_scaling_experiment(*grid, RngStream(5), runner = runner).fitted
	for key in ["C3_hat", "C4_hat"]:
		assert second[key] == pytest.approx(first[key], rel = 0.3)


@pytest.mark.parametrize("d", [4, 16])
@pytest.mark.parametrize("n", [1000, 10000])
def test_covariance_concentration(d, n, runner):
	spec = TruncatedGaussianSpec(threshold = 0.0, variance = 1.0 / d)
	result = lab.covariance_concentration_experiment(n, d, spec, 3.0, 100, RngStream(n + d), runner)
	_check(result)
	assert result.fitted["violation_fraction"] == 0


def test_truncated_moments_by_sampling():
	specs = [
		TruncatedGaussianSpec(threshold = 1.0, variance = 1.0),
		TruncatedGaussianSpec(threshold = 0.1, variance = 1.0 / 16)
	]
	result = lab.truncated_moment_experiment(specs, 10_000_000, RngStream(3))
	_check(result)


def test_halfspace_consistency(runner):
	result = lab.halfspace_consistency_experiment(8, ConstantsConfig(C1 = 3.0), 500, RngStream(2), runner = runner)
	_check(result)
	assert result.fitted["violations"] == 0


def test_uniform_radius_is_stable_across_seeds(runner):
	ratios = list()
	for seed in [1, 2]:
		result = lab.uniform_radius_experiment(8, 8192, ConstantsConfig(), 200, RngStream(seed), runner = runner)
		_check(result)
		ratios.append(result.fitted["max_ratio"])
	assert ratios[1] == pytest.approx(ratios[0], rel = 0.3)


def test_gram_ratio_is_stable_across_frame_sizes(runner):
	medians = list()
	for M in [2 ** 12, 2 ** 13, 2 ** 14]:
		result = lab.gram_min_singular_experiment(8, M, ConstantsConfig(), 100, RngStream(M), runner)
		_check(result)
		assert result.fitted["c_hat"] > 0
		medians.append(result.fitted["median_ratio"])
	for value in medians[1:]:
		assert value == pytest.approx(medians[0], rel = 0.2)


def test_gram_ratio_per_row_approaches_inverse_dimension(runner):
	# A wide band keeps |S~| in the thousands, where sigma_min^2 / |S~| settles near 1/d.
	result = lab.gram_min_singular_experiment(3, 2 ** 16, ConstantsConfig(C2 = 400.0), 20, RngStream(11), runner,
		per_row_tolerance = 0.1)
	_check(result)
	assert result.fitted["mean_per_row"] == pytest.approx(1.0 / 3, rel = 0.1)


@pytest.mark.parametrize("d,M,seed", [(8, 4096, 6), (16, 16384, 9)])
def test_margin_count(d, M, seed, runner):
	result = lab.margin_count_experiment(d, M, ConstantsConfig(), 200, RngStream(seed), runner)
	_check(result)
	assert 0.45 <= result.fitted["margin_ratio"] <= 0.55


def test_covering_inclusion(runner):
	_check(lab.covering_inclusion_experiment(8, 8192, ConstantsConfig(), 200, RngStream(7), runner))


@pytest.mark.parametrize("name", ["subset-size", "covariance", "halfspace"])
def test_example_configurations_pass(name, output):
	config = load_config(FOLDER_EXAMPLE / f"{name}.json")
	config.output_path = output
	assert workflow_experiment.run_config(config) == 0
	assert (output / f"{name}.csv").exists()


def test_runs_are_byte_identical(tmp_path):
	tables = list()
	for index, threads in enumerate([1, 4]):
		config = load_config(FOLDER_EXAMPLE / "subset-size.json")
		config.output_path = tmp_path / f"run{index}"
		workflow_experiment.run_config(config, threads = threads)
		tables.append((config.output_path / "subset-size.csv").read_bytes())
	assert tables[0] == tables[1]

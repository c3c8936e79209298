"""
	Runs one experiment from its configuration and writes its artifacts.
	.
	|---- {name}.csv
	|---- {name}.summary.json
	|---- supplementary-files/
	|----|---- {name}.options.json
"""
import argparse
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import pandas
from loguru import logger

try:
	from spherecells import codec, commandline_parser, lab
	from spherecells.dataio import projectdata, projectpaths
	from spherecells.dataio.configuration import ExperimentConfig, load_config, parse_config, read_json
	from spherecells.errors import ConfigurationError
	from spherecells.lab import Assertion, ExperimentResult, TrialRunner, TruncatedGaussianSpec, resolve_threads
	from spherecells.numeric import RngStream
except ModuleNotFoundError:
	from .. import codec, commandline_parser, lab
	from ..dataio import projectdata, projectpaths
	from ..dataio.configuration import ExperimentConfig, load_config, parse_config, read_json
	from ..errors import ConfigurationError
	from ..lab import Assertion, ExperimentResult, TrialRunner, TruncatedGaussianSpec, resolve_threads
	from ..numeric import RngStream

# Command-line values of the `experiment` subcommand which map onto configuration fields.
OVERRIDE_FIELDS = [
	"d", "M", "d_list", "M_list", "n_list", "trials", "x_count", "thresholds", "t", "samples", "size_V", "fitted_C5"
]


def combine_results(name: str, results: Sequence[ExperimentResult], labels: Sequence[str]) -> ExperimentResult:
	""" Merges the results of one experiment run at several grid points. Fitted values and assertions get the label as a suffix. """
	if len(results) == 1:
		return results[0]
	table = pandas.concat([result.table for result in results], ignore_index = True)
	fitted: Dict[str, float] = dict()
	assertions: List[Assertion] = list()
	for label, result in zip(labels, results):
		fitted.update({f"{key}_{label}": value for key, value in result.fitted.items()})
		assertions += [Assertion(f"{item.name}_{label}", item.passed, item.detail) for item in result.assertions]
	return ExperimentResult(name, table, fitted, assertions)


def _run_covariance(config: ExperimentConfig, stream: RngStream, runner: TrialRunner) -> ExperimentResult:
	threshold = config.thresholds[0] if config.thresholds else 0.0
	results = list()
	for d in config.dimensions:
		spec = TruncatedGaussianSpec(threshold = threshold, variance = 1.0 / d)
		child = stream.derive(f"d{d}")
		if len(config.n_list) > 1:
			result = lab.covariance_scaling_experiment(
				config.n_list, d, spec, config.t, config.trials, child, runner, C = config.constants.covariance_C
			)
		else:
			result = lab.covariance_concentration_experiment(
				config.n_list[0], d, spec, config.t, config.trials, child, runner, C = config.constants.covariance_C
			)
		results.append(result)
	return combine_results("covariance", results, [f"d{d}" for d in config.dimensions])


def run_experiment(config: ExperimentConfig, runner: Optional[TrialRunner] = None) -> ExperimentResult:
	"""
		Dispatches a validated configuration to its experiment. Every random quantity comes from
		RngStream(config.master_seed).
	"""
	runner = runner if runner is not None else TrialRunner(threads = 1)
	stream = RngStream(config.master_seed)
	cfg = config.constants
	opts = config.solver
	name = config.experiment

	if name == "subset-size":
		result = lab.subset_size_experiment(config.d, config.M, cfg, config.trials, stream, runner)
	elif name == "margin-count":
		result = lab.margin_count_experiment(config.d, config.M, cfg, config.trials, stream, runner)
	elif name == "gram-sigma-min":
		result = lab.gram_min_singular_experiment(config.d, config.M, cfg, config.trials, stream, runner)
	elif name == "covariance":
		result = _run_covariance(config, stream, runner)
	elif name == "truncated-moment":
		specs = [
			TruncatedGaussianSpec(threshold = threshold, variance = 1.0 / d)
			for d, threshold in zip(config.dimensions, config.thresholds)
		]
		result = lab.truncated_moment_experiment(specs, config.samples, stream)
	elif name == "halfspace":
		result = lab.halfspace_consistency_experiment(
			config.d, cfg, config.trials, stream, opts, runner, size = config.size_V
		)
	elif name == "uniform-radius":
		result = lab.uniform_radius_experiment(config.d, config.M, cfg, config.x_count, stream, opts, runner)
	elif name == "radius-scaling":
		result = lab.radius_scaling_experiment(config.dimensions, config.M_list, cfg, config.trials, stream, opts, runner)
	elif name == "rate-distortion":
		result = codec.rate_distortion_experiment(
			config.d, config.M_list, cfg, config.trials, stream, opts, runner, C5_hat = config.fitted_C5
		)
	elif name == "covering":
		result = lab.covering_inclusion_experiment(config.d, config.M, cfg, config.x_count, stream, runner)
	else:
		message = f"Unknown experiment '{name}'"
		raise ConfigurationError(message, location = "experiment")
	return result


def run_config(config: ExperimentConfig, threads: Optional[int] = None) -> int:
	"""
		Runs the experiment and writes the CSV, the summary and the resolved options.
	Returns
	-------
	int
		0 when every assertion holds, 1 otherwise.
	"""
	threads = resolve_threads(threads)
	program_options = config.to_dict()
	program_options['threads'] = threads
	logger.info("Running with the following parameters")
	for key, value in program_options.items():
		logger.info(f"\t{key:<30}{value}")

	paths = projectpaths.OutputFilenames(config.output_path, config.basename)
	data_basic = projectdata.DataWorkflowBasic(
		version = commandline_parser.__VERSION__,
		program_options = program_options
	)

	start = time.perf_counter()
	result = run_experiment(config, TrialRunner(threads = threads))
	wall_time = time.perf_counter() - start
	logger.info(f"'{config.experiment}' finished in {wall_time:.1f} seconds.")

	comments = [
		f"cellcert {commandline_parser.__VERSION__}",
		f"experiment {config.experiment}",
		f"master_seed {config.master_seed}"
	]
	projectdata.save_table(result.table, paths.filename_table, comments)
	projectdata.save_summary(result, paths.filename_summary, commandline_parser.__VERSION__, wall_time)
	data_basic.save(paths.filename_options)
	logger.info(f"Saved the table to '{paths.filename_table}'.")

	for key, value in result.fitted.items():
		logger.info(f"\t{key:<30}{value:.6g}")
	for failure in result.failures():
		logger.error(f"Assertion '{failure.name}' failed: {failure.detail}")
	return 0 if result.passed else 1


def run(config_file: Union[str, Path], threads: Optional[int] = None, seed: Optional[int] = None,
		output: Optional[Path] = None) -> int:
	"""
		Runs the experiment a configuration file describes. `seed` and `output` replace the file's values.
	Returns
	-------
	int
		0 when every assertion holds, 1 when one fails, 2 when the configuration is invalid.
	"""
	try:
		if seed is None and output is None:
			config = load_config(config_file)
		else:
			values, text = read_json(config_file)
			if isinstance(values, dict):
				if seed is not None:
					values['master_seed'] = seed
				if output is not None:
					values['output_path'] = str(output)
			config = parse_config(values, text)
	except ConfigurationError as exception:
		logger.error(f"Invalid configuration: {exception}")
		return 2
	return run_config(config, threads)


def run_named(program_options: argparse.Namespace) -> int:
	"""
		The `experiment` subcommand: starts from the optional `--config` file and overrides its fields with
		the values given on the command line.
	"""
	values: Dict[str, Any] = dict()
	text = ""
	try:
		if program_options.config is not None:
			values, text = read_json(program_options.config)
			if not isinstance(values, dict):
				message = "the configuration must be a JSON object"
				raise ConfigurationError(message, location = "configuration")
		values['experiment'] = program_options.experiment
		for key in OVERRIDE_FIELDS:
			value = getattr(program_options, key, None)
			if value is not None:
				values[key] = value
		if program_options.seed is not None:
			values['master_seed'] = program_options.seed
		values.setdefault('master_seed', 0)
		if program_options.out is not None:
			values['output_path'] = str(program_options.out)
		config = parse_config(values, text)
	except ConfigurationError as exception:
		logger.error(f"Invalid configuration: {exception}")
		return 2
	return run_config(config, program_options.threads)

"""
	Monte Carlo experiments over Gaussian frames.

	Every experiment returns an `ExperimentResult`: the per-trial table that is written as CSV, the fitted
	constants, and the named assertions the harness turns into an exit code. Trials are keyed by
	`stream.trial(trial_id)`, so results do not depend on how the trials were scheduled.
"""
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy
import pandas
from loguru import logger

try:
	from spherecells.certifier import SolverOptions, cell_radius, theorem_radius_bound
	from spherecells.errors import InvalidArgumentError
	from spherecells.lab import fitting, moments
	from spherecells.lab.moments import TruncatedGaussianSpec
	from spherecells.lab.trials import TrialRunner
	from spherecells.numeric import (
		RngStream, gaussian, min_singular_value, operator_norm, random_unit_vector, uniforms
	)
	from spherecells.numeric.vectors import basis_vector, orthonormal_complement
	from spherecells.tessellation import (
		ConstantsConfig, eta_of, fixed_subset_size, inner_products, make_frame, select_half_band,
		select_margin_band, select_subsets, tau_of
	)
	from spherecells.tessellation.frames import frame_rows
except ModuleNotFoundError:
	from ..certifier import SolverOptions, cell_radius, theorem_radius_bound
	from ..errors import InvalidArgumentError
	from . import fitting, moments
	from .moments import TruncatedGaussianSpec
	from .trials import TrialRunner
	from ..numeric import (
		RngStream, gaussian, min_singular_value, operator_norm, random_unit_vector, uniforms
	)
	from ..numeric.vectors import basis_vector, orthonormal_complement
	from ..tessellation import (
		ConstantsConfig, eta_of, fixed_subset_size, inner_products, make_frame, select_half_band,
		select_margin_band, select_subsets, tau_of
	)
	from ..tessellation.frames import frame_rows

STATISTICS_COLUMNS = [
	"trial_id", "d", "M", "tau", "eta", "size_V", "size_W", "size_S", "size_Stilde", "size_Shat",
	"sigma_min_sq", "op_norm_dev", "theorem_bound", "certified_radius"
]
CHERNOFF_BANDS = (0.25, 0.5)
# Number of standard errors a Monte Carlo mean may stray from its analytic value.
STANDARD_ERRORS = 3.0
# Slack allowed when comparing two certified radii that must be ordered.
CONTAINMENT_SLACK = 1e-9
# The margin band keeps about half of the negative band; the pooled fraction must stay this close to 1/2.
MARGIN_BAND = 0.05


@dataclass
class TrialStatistics:
	"""
		One trial of a frame experiment. Columns an experiment does not measure stay at zero.
		`extras` carries experiment-specific values that feed the summary but not the CSV.
	"""
	trial_id: int
	d: int
	M: int
	tau: float = 0.0
	eta: float = 0.0
	size_V: int = 0
	size_W: int = 0
	size_S: int = 0
	size_Stilde: int = 0
	size_Shat: int = 0
	sigma_min_sq: float = 0.0
	op_norm_dev: float = 0.0
	theorem_bound: float = 0.0
	certified_radius: float = 0.0
	degenerate: bool = False
	extras: Dict[str, float] = field(default_factory = dict)

	def row(self) -> Dict[str, Any]:
		values = asdict(self)
		return {column: values[column] for column in STATISTICS_COLUMNS}


@dataclass
class Assertion:
	name: str
	passed: bool
	detail: str = ""

	def to_dict(self) -> Dict[str, Any]:
		return {"name": self.name, "passed": bool(self.passed), "detail": self.detail}


@dataclass
class ExperimentResult:
	name: str
	table: pandas.DataFrame
	fitted: Dict[str, float] = field(default_factory = dict)
	assertions: List[Assertion] = field(default_factory = list)
	records: List[Any] = field(default_factory = list, repr = False)

	@property
	def passed(self) -> bool:
		return all(assertion.passed for assertion in self.assertions)

	def failures(self) -> List[Assertion]:
		return [assertion for assertion in self.assertions if not assertion.passed]

	def summary(self) -> Dict[str, Any]:
		return {
			"experiment": self.name,
			"fitted":     {key: float(value) for key, value in self.fitted.items()},
			"assertions": [assertion.to_dict() for assertion in self.assertions],
			"passed":     self.passed
		}


def statistics_table(records: Sequence[TrialStatistics]) -> pandas.DataFrame:
	return pandas.DataFrame([record.row() for record in records], columns = STATISTICS_COLUMNS)


def _runner(runner: Optional[TrialRunner]) -> TrialRunner:
	return runner if runner is not None else TrialRunner(threads = 1)


def _check_trials(trials: int):
	if trials < 1:
		message = f"At least one trial is required, got {trials}"
		raise InvalidArgumentError(message)


def _binomial_slack(p: float, trials: int) -> float:
	return STANDARD_ERRORS * math.sqrt(max(p * (1.0 - p), 0.0) / trials)


def _log_scale(d: int, M: int) -> float:
	return d * math.log(d) * math.log(M)


def sample_tail_heavy_point(stream: RngStream, d: int, M: int) -> numpy.ndarray:
	""" Uniform point y on the sphere, redrawn until ||y_[-1]||^2 >= 1/M^2. """
	attempt = 0
	while True:
		y = random_unit_vector(stream.derive(f"y-{attempt}"), d)
		if float(y[1:] @ y[1:]) >= 1.0 / (M * M):
			return y
		attempt += 1


########################################################################################################################
# Subset cardinalities
########################################################################################################################
def _subset_size_trial(trial_id: int, d: int, M: int, cfg: ConstantsConfig, stream: RngStream) -> TrialStatistics:
	trial_stream = stream.trial(trial_id)
	frame = make_frame(d, M, trial_stream.derive("frame"))
	x = basis_vector(d)
	tau = tau_of(d, M, cfg)
	selection = select_subsets(frame, x, tau, cfg, trial_stream.derive("subset"))
	half_band = select_half_band(frame, x, tau)
	return TrialStatistics(
		trial_id = trial_id, d = d, M = M, tau = tau,
		size_V = len(selection.V), size_W = len(selection.W), size_S = len(selection.S), size_Shat = len(half_band),
		theorem_bound = theorem_radius_bound(d, M, cfg),
		extras = {"overlap": selection.diagnostics["overlap"]}
	)


def subset_size_experiment(d: int, M: int, cfg: ConstantsConfig, trials: int, stream: RngStream,
		runner: Optional[TrialRunner] = None, bands: Sequence[float] = CHERNOFF_BANDS) -> ExperimentResult:
	"""
		Draws a fresh frame per trial with x = e1 and compares |W| against its binomial law.
	Parameters
	----------
	bands: Sequence[float]
		Relative half-widths s of the multiplicative bands [(1 - s) E, (1 + s) E] checked against the
		Chernoff bound 2 exp(-c s^2 E).
	"""
	_check_trials(trials)
	records = _runner(runner).run(_subset_size_trial, trials, (d, M, cfg, stream))
	tau = tau_of(d, M, cfg)
	expected = moments.expected_band_size(d, M, tau)
	band_sizes = numpy.array([record.size_W for record in records], dtype = float)
	mean = float(band_sizes.mean())
	standard_error = fitting.binomial_standard_error(trials, M, expected / M)
	scale = _log_scale(d, M)
	subset_ratios = [record.size_S / scale for record in records]

	fitted = {
		"tau":                    tau,
		"expected_size_W":        expected,
		"mean_size_W":            mean,
		"expected_size_Shat":     moments.expected_half_band_size(d, M, tau),
		"mean_size_Shat":         float(numpy.mean([record.size_Shat for record in records])),
		"mean_overlap":           float(numpy.mean([record.extras["overlap"] for record in records])),
		"C3_hat":                 min(subset_ratios),
		"C4_hat":                 max(subset_ratios)
	}
	assertions = [
		Assertion(
			"band_size_mean",
			abs(mean - expected) <= STANDARD_ERRORS * standard_error,
			f"mean |W| = {mean:.4f}, expected {expected:.4f}, standard error {standard_error:.4f}"
		),
		Assertion(
			"subset_contains_fixed_set",
			all(record.size_S >= record.size_V for record in records),
			"|S| >= |V| in every trial"
		)
	]
	for s in bands:
		outside = numpy.count_nonzero((band_sizes < (1 - s) * expected) | (band_sizes > (1 + s) * expected))
		fraction = outside / trials
		bound = moments.chernoff_tail(s, expected, cfg.chernoff_c)
		fitted[f"out_of_band_fraction_{s:g}"] = fraction
		fitted[f"chernoff_bound_{s:g}"] = bound
		assertions.append(Assertion(
			f"chernoff_band_{s:g}",
			fraction <= bound + _binomial_slack(bound, trials),
			f"{outside} of {trials} trials outside the band, Chernoff bound {bound:.3g}"
		))
	return ExperimentResult("subset-size", statistics_table(records), fitted, assertions, records)


########################################################################################################################
# Positive-margin counts and the smallest singular value
########################################################################################################################
def _margin_trial(trial_id: int, d: int, M: int, cfg: ConstantsConfig, stream: RngStream,
		with_gram: bool = False) -> TrialStatistics:
	trial_stream = stream.trial(trial_id)
	frame = make_frame(d, M, trial_stream.derive("frame"))
	x = basis_vector(d)
	y = sample_tail_heavy_point(trial_stream, d, M)
	tau = tau_of(d, M, cfg)
	eta = eta_of(M, cfg)
	selection = select_margin_band(frame, x, y, tau, eta)
	tail_norm = float(numpy.linalg.norm(y[1:]))
	record = TrialStatistics(
		trial_id = trial_id, d = d, M = M, tau = tau, eta = eta,
		size_W = selection.diagnostics["negative_band"], size_Stilde = len(selection),
		theorem_bound = theorem_radius_bound(d, M, cfg),
		extras = {"tail_norm": tail_norm, "reference": moments.margin_probability(d, eta, tail_norm)}
	)
	if not with_gram:
		return record

	count = len(selection)
	record.degenerate = count < d
	if count == 0:
		return record
	gram_rows = frame.rows[list(selection.S), 1:]
	record.sigma_min_sq = min_singular_value(gram_rows) ** 2
	# Second moment of the rows: variance 1/d everywhere but along y_[-1], where the tail is truncated at eta.
	spec = TruncatedGaussianSpec(threshold = eta / tail_norm, variance = 1.0 / d)
	direction = y[1:] / tail_norm
	sigma = numpy.eye(d - 1) / d + (moments.truncated_covariance_alpha(spec) - 1.0 / d) * numpy.outer(direction, direction)
	record.op_norm_dev = operator_norm(gram_rows.T @ gram_rows / count - sigma)
	record.extras["per_row"] = record.sigma_min_sq / count
	return record


def margin_count_experiment(d: int, M: int, cfg: ConstantsConfig, trials: int, stream: RngStream,
		runner: Optional[TrialRunner] = None) -> ExperimentResult:
	"""
		Thins the negative band by the positive margin <g_[-1], y_[-1]> > eta for a random y and checks
		that the surviving fraction matches Q(eta sqrt(d) / ||y_[-1]||), which is close to 1/2.
	"""
	_check_trials(trials)
	records = _runner(runner).run(_margin_trial, trials, (d, M, cfg, stream))
	band_total = sum(record.size_W for record in records)
	kept_total = sum(record.size_Stilde for record in records)
	variance = sum(record.size_W * record.extras["reference"] * (1 - record.extras["reference"]) for record in records)
	if band_total == 0:
		message = f"The negative band was empty in all {trials} trials; increase M or C2."
		logger.warning(message)
		ratio, expected, standard_error = math.nan, math.nan, math.nan
	else:
		ratio = kept_total / band_total
		expected = sum(record.size_W * record.extras["reference"] for record in records) / band_total
		standard_error = math.sqrt(variance) / band_total
	fitted = {
		"eta":            eta_of(M, cfg),
		"margin_ratio":   ratio,
		"expected_ratio": expected,
		"standard_error": standard_error
	}
	assertions = [
		Assertion(
			"margin_ratio_matches_tail",
			band_total > 0 and abs(ratio - expected) <= STANDARD_ERRORS * standard_error + 1e-12,
			f"pooled |S~|/|W| = {ratio:.4f}, Gaussian tail {expected:.4f}"
		),
		Assertion(
			"margin_ratio_near_half",
			band_total > 0 and abs(ratio - 0.5) <= MARGIN_BAND,
			f"pooled |S~|/|W| = {ratio:.4f}, allowed [{0.5 - MARGIN_BAND:g}, {0.5 + MARGIN_BAND:g}]"
		)
	]
	return ExperimentResult("margin-count", statistics_table(records), fitted, assertions, records)


def gram_min_singular_experiment(d: int, M: int, cfg: ConstantsConfig, trials: int, stream: RngStream,
		runner: Optional[TrialRunner] = None, per_row_tolerance: Optional[float] = None) -> ExperimentResult:
	"""
		Smallest squared singular value of the matrix whose rows are g_[-1] over the margin band.
		Trials with fewer than d rows are degenerate: they are recorded but kept out of the fitted ratio.
	Parameters
	----------
	per_row_tolerance: Optional[float]
		When given, sigma_min^2 / |S~| averaged over the usable trials must lie within this relative
		distance of 1/d, the smallest eigenvalue of the row second moment. Only meaningful once |S~| is
		large against d, which needs a wide band (a large C2).
	"""
	_check_trials(trials)
	records = _runner(runner).run(_margin_trial, trials, (d, M, cfg, stream, True))
	usable = [record for record in records if not record.degenerate]
	degenerate_fraction = 1.0 - len(usable) / trials
	if degenerate_fraction > 0:
		logger.warning(f"{trials - len(usable)} of {trials} trials had fewer than d = {d} margin rows.")
	scale = math.log(d) * math.log(M)
	ratios = [record.sigma_min_sq / scale for record in usable]
	fitted = {
		"c_hat":               min(ratios) if ratios else math.nan,
		"median_ratio":        float(numpy.median(ratios)) if ratios else math.nan,
		"mean_per_row":        float(numpy.mean([record.extras["per_row"] for record in usable])) if usable else math.nan,
		"inverse_dimension":   1.0 / d,
		"degenerate_fraction": degenerate_fraction,
		"median_op_norm_dev":  float(numpy.median([record.op_norm_dev for record in usable])) if usable else math.nan
	}
	assertions = [
		Assertion(
			"sigma_min_positive",
			bool(usable) and all(record.sigma_min_sq > 0 for record in usable),
			f"{len(usable)} usable trials"
		),
		Assertion(
			"degenerate_trials_rare",
			degenerate_fraction < 0.01,
			f"degenerate fraction {degenerate_fraction:.4f}"
		)
	]
	if per_row_tolerance is not None:
		relative = abs(fitted["mean_per_row"] * d - 1.0)
		assertions.append(Assertion(
			"per_row_near_inverse_dimension",
			bool(usable) and relative <= per_row_tolerance,
			f"mean sigma_min^2 / |S~| = {fitted['mean_per_row']:.4g}, 1/d = {1.0 / d:.4g}"
		))
	return ExperimentResult("gram-sigma-min", statistics_table(records), fitted, assertions, records)


########################################################################################################################
# Covariance concentration
########################################################################################################################
COVARIANCE_COLUMNS = ["trial_id", "n", "d", "threshold", "deviation", "bound"]


def covariance_delta(n: int, columns: int, t: float, C: float) -> float:
	""" delta = C (sqrt(columns / n) + t / sqrt(n)). """
	return C * (math.sqrt(columns / n) + t / math.sqrt(n))


def covariance_bound(n: int, columns: int, t: float, C: float, K_squared: float) -> float:
	delta = covariance_delta(n, columns, t, C)
	return K_squared * max(delta, delta * delta)


def _covariance_trial(trial_id: int, n: int, d: int, spec: TruncatedGaussianSpec, stream: RngStream) -> float:
	columns = d - 1
	rows = moments.sample_truncated_rows(spec, n, columns, stream.trial(trial_id))
	sigma = moments.second_moment_matrix(spec, columns)
	return operator_norm(rows.T @ rows / n - sigma)


def covariance_concentration_experiment(n: int, d: int, spec: TruncatedGaussianSpec, t: float, trials: int,
		stream: RngStream, runner: Optional[TrialRunner] = None, C: float = 4.0) -> ExperimentResult:
	"""
		Samples n rows of length d - 1 (truncated first coordinate, the rest N(0, variance)) and compares
		||n^-1 G^T G - Sigma||_op with K^2 max(delta, delta^2), where K^2 = 4 variance.
	Returns
	-------
	ExperimentResult
		One row (deviation, bound) per trial. The fitted `smallest_C` is the least constant that would
		have let every trial pass.
	"""
	_check_trials(trials)
	if n < d:
		message = f"The covariance experiment needs n >= d, got n = {n}, d = {d}"
		raise InvalidArgumentError(message)
	columns = d - 1
	K_squared = 4.0 * spec.variance
	bound = covariance_bound(n, columns, t, C, K_squared)
	deviations = _runner(runner).run(_covariance_trial, trials, (n, d, spec, stream))
	table = pandas.DataFrame(
		[(trial_id, n, d, spec.threshold, deviation, bound) for trial_id, deviation in enumerate(deviations)],
		columns = COVARIANCE_COLUMNS
	)
	violations = sum(deviation > bound for deviation in deviations)
	fraction = violations / trials
	unit_delta = covariance_delta(n, columns, t, 1.0)
	needed = []
	for deviation in deviations:
		r = deviation / K_squared
		needed.append((r if r <= 1 else math.sqrt(r)) / unit_delta)
	tail = min(1.0, 2.0 * math.exp(-t * t))
	fitted = {
		"bound":              bound,
		"median_deviation":   float(numpy.median(deviations)),
		"violation_fraction": fraction,
		"smallest_C":         max(needed),
		"alpha":              moments.truncated_covariance_alpha(spec)
	}
	assertions = [
		Assertion(
			"covariance_bound",
			fraction <= tail + _binomial_slack(tail, trials),
			f"{violations} of {trials} trials above the bound {bound:.4g} (C = {C:g}, t = {t:g})"
		)
	]
	return ExperimentResult("covariance", table, fitted, assertions, list(deviations))


def covariance_scaling_experiment(n_values: Sequence[int], d: int, spec: TruncatedGaussianSpec, t: float, trials: int,
		stream: RngStream, runner: Optional[TrialRunner] = None, C: float = 4.0) -> ExperimentResult:
	""" Runs the covariance experiment for several n and fits the slope of ln(median deviation) against ln n. """
	results = [
		covariance_concentration_experiment(n, d, spec, t, trials, stream.derive(f"n-{n}"), runner, C)
		for n in n_values
	]
	table = pandas.concat([result.table for result in results], ignore_index = True)
	fitted = {f"smallest_C_{n}": result.fitted["smallest_C"] for n, result in zip(n_values, results)}
	assertions = [assertion for result in results for assertion in result.assertions]
	if len(set(n_values)) >= 2:
		fit = fitting.fit_loglog(n_values, [result.fitted["median_deviation"] for result in results])
		fitted.update({"deviation_slope": fit.slope, "deviation_slope_r2": fit.r_squared})
		assertions.append(Assertion(
			"deviation_rate",
			abs(fit.slope + 0.5) <= 0.1,
			f"ln(median deviation) vs ln n slope {fit.slope:.3f}"
		))
	return ExperimentResult("covariance", table, fitted, assertions)


MOMENT_COLUMNS = ["threshold", "variance", "alpha", "monte_carlo", "standard_error"]


def truncated_moment_experiment(specs: Sequence[TruncatedGaussianSpec], samples: int, stream: RngStream,
		grid_points: int = 101) -> ExperimentResult:
	"""
		Checks the closed-form truncated second moment against sampling, and the psi_2 ratio on a grid of
		[0, 1/2].
	"""
	rows = []
	assertions = []
	for index, spec in enumerate(specs):
		draws = moments.sample_truncated(spec, samples, stream.derive(f"moment-{index}"))
		squares = draws * draws
		estimate = float(squares.mean())
		standard_error = float(squares.std(ddof = 1) / math.sqrt(samples))
		alpha = moments.truncated_covariance_alpha(spec)
		rows.append((spec.threshold, spec.variance, alpha, estimate, standard_error))
		assertions.append(Assertion(
			f"alpha_monte_carlo_{index}",
			abs(alpha - estimate) <= 4.0 * standard_error and (spec.threshold <= 0 or alpha > spec.variance),
			f"alpha {alpha:.6f}, sampled {estimate:.6f} +- {standard_error:.2g}"
		))
	grid = numpy.linspace(0.0, 0.5, grid_points)
	ratios = [moments.psi2_ratio(a) for a in grid]
	assertions.append(Assertion("psi2_ratio_below_two", max(ratios) < 2.0, f"largest ratio {max(ratios):.6f}"))
	assertions.append(Assertion("psi2_ratio_increasing", fitting.strictly_increasing(ratios), f"{grid_points} grid points"))
	table = pandas.DataFrame(rows, columns = MOMENT_COLUMNS)
	return ExperimentResult("truncated-moment", table, {"psi2_ratio_max": max(ratios)}, assertions)


########################################################################################################################
# Sign consistency on the fixed set
########################################################################################################################
HALFSPACE_COLUMNS = ["trial_id", "d", "size_V", "phase", "min_inner_product", "violation"]


def _halfspace_trial(trial_id: int, d: int, size: int, opts: SolverOptions, stream: RngStream) -> Dict[str, Any]:
	trial_stream = stream.trial(trial_id)
	x = random_unit_vector(trial_stream.derive("x"), d)
	if size == 0:
		# No constraints: the antipode is in the cell.
		return {
			"trial_id": trial_id, "d": d, "size_V": 0, "phase": "empty", "min_inner_product": -1.0, "violation": 1
		}
	rows = gaussian(trial_stream.derive("rows"), size * d, 1.0 / d).reshape(size, d)
	certificate = cell_radius(rows, range(size), x, opts, stream = trial_stream.derive("solver"))
	smallest = min(float(x @ witness) for witness in certificate.witnesses)
	violation = certificate.phase != "polytope" or smallest <= 0
	return {
		"trial_id": trial_id, "d": d, "size_V": size, "phase": certificate.phase,
		"min_inner_product": smallest, "violation": int(violation)
	}


def halfspace_consistency_experiment(d: int, cfg: ConstantsConfig, trials: int, stream: RngStream,
		opts: Optional[SolverOptions] = None, runner: Optional[TrialRunner] = None,
		size: Optional[int] = None) -> ExperimentResult:
	"""
		Every point sharing the signs of x on round(C1 d ln d) Gaussian rows should satisfy <x, y> > 0.
		A trial is a violation when the cell leaves the open hemisphere around x or any witness found in it
		has <x, y> <= 0.

		The chance of a violation is not zero at finite |V|: the cell leaves the hemisphere exactly when the
		constraint normals, projected orthogonally to x, fail to surround the origin. The count is checked
		against that exact probability.
	"""
	_check_trials(trials)
	size = fixed_subset_size(d, cfg) if size is None else size
	opts = opts if opts is not None else SolverOptions()
	outcomes = _runner(runner).run(_halfspace_trial, trials, (d, size, opts, stream))
	table = pandas.DataFrame(outcomes, columns = HALFSPACE_COLUMNS)
	violations = int(table["violation"].sum())
	p = moments.hemisphere_exit_probability(size, d)
	allowed = trials * p + STANDARD_ERRORS * math.sqrt(trials * p * (1.0 - p))
	fitted = {
		"size_V":              size,
		"violations":          violations,
		"violation_rate":      violations / trials,
		"exit_probability":    p
	}
	assertions = [
		Assertion(
			"halfspace_consistency",
			violations <= allowed,
			f"{violations} violations in {trials} trials, {trials * p:.3g} expected"
		)
	]
	return ExperimentResult("halfspace", table, fitted, assertions, outcomes)


########################################################################################################################
# Radii
########################################################################################################################
def _uniform_trial(trial_id: int, frame, cfg: ConstantsConfig, opts: SolverOptions, stream: RngStream) -> TrialStatistics:
	trial_stream = stream.trial(trial_id)
	d, M = frame.d, frame.M
	x = random_unit_vector(trial_stream.derive("x"), d)
	tau = tau_of(d, M, cfg)
	half_band = select_half_band(frame, x, tau)
	# V does not depend on x, so every point shares one fixed set.
	selection = select_subsets(frame, x, tau, cfg, stream.derive("subset"))
	full = cell_radius(frame, selection, x, opts, stream = trial_stream.derive("solver-S"))
	half = cell_radius(frame, half_band, x, opts, stream = trial_stream.derive("solver-Shat"))
	return TrialStatistics(
		trial_id = trial_id, d = d, M = M, tau = tau,
		size_V = len(selection.V), size_W = len(selection.W), size_S = len(selection.S), size_Shat = len(half_band),
		theorem_bound = theorem_radius_bound(d, M, cfg), certified_radius = half.radius,
		extras = {"radius_S": full.radius}
	)


def uniform_radius_experiment(d: int, M: int, cfg: ConstantsConfig, x_count: int, stream: RngStream,
		opts: Optional[SolverOptions] = None, runner: Optional[TrialRunner] = None) -> ExperimentResult:
	"""
		One frame, many random anchors: certifies the radius of each half-band cell and reports the largest
		ratio to the radius bound.
	"""
	_check_trials(x_count)
	opts = opts if opts is not None else SolverOptions()
	frame = make_frame(d, M, stream.derive("frame"))
	records = _runner(runner).run(_uniform_trial, x_count, (frame, cfg, opts, stream))
	ratios = [record.certified_radius / record.theorem_bound for record in records]
	ratios_S = [record.extras["radius_S"] / record.theorem_bound for record in records]
	# The cell over S lies inside the cell over S_hat, so either witness bounds the S_hat radius from below.
	ratios_either = [max(half, full) for half, full in zip(ratios, ratios_S)]
	inverted = [
		record.trial_id for record in records
		if record.extras["radius_S"] > record.certified_radius + CONTAINMENT_SLACK
	]
	fitted = {
		"max_ratio":        max(ratios),
		"max_ratio_S":      max(ratios_S),
		"max_ratio_either": max(ratios_either),
		"median_ratio":     float(numpy.median(ratios))
	}
	assertions = [
		Assertion("max_ratio_finite", math.isfinite(max(ratios)), f"largest radius / bound {max(ratios):.4g}"),
		Assertion(
			"half_band_cell_contains_full_cell",
			not inverted,
			f"radius over S above radius over S_hat for anchors {inverted}" if inverted else "radius over S never exceeds radius over S_hat"
		)
	]
	return ExperimentResult("uniform-radius", statistics_table(records), fitted, assertions, records)


def _radius_trial(trial_id: int, d: int, M: int, cfg: ConstantsConfig, opts: SolverOptions,
		stream: RngStream) -> TrialStatistics:
	trial_stream = stream.trial(trial_id)
	frame = make_frame(d, M, trial_stream.derive("frame"))
	x = random_unit_vector(trial_stream.derive("x"), d)
	tau = tau_of(d, M, cfg)
	selection = select_subsets(frame, x, tau, cfg, trial_stream.derive("subset"))
	certificate = cell_radius(frame, selection, x, opts, stream = trial_stream.derive("solver"))
	return TrialStatistics(
		trial_id = trial_id, d = d, M = M, tau = tau,
		size_V = len(selection.V), size_W = len(selection.W), size_S = len(selection.S),
		theorem_bound = theorem_radius_bound(d, M, cfg), certified_radius = certificate.radius
	)


def radius_scaling_experiment(d_values: Sequence[int], M_values: Sequence[int], cfg: ConstantsConfig, trials: int,
		stream: RngStream, opts: Optional[SolverOptions] = None, runner: Optional[TrialRunner] = None,
		slope_tolerance: float = 0.2) -> ExperimentResult:
	"""
		Certified radii on a (d, M) grid.
	Returns
	-------
	ExperimentResult
		fitted holds, per d, the slope of ln(median radius) against ln M, plus
		C5_hat: the 99th percentile of radius / bound, scaled by the configured C5, so that the radius
			bound with C5_hat holds in at least 99% of the trials.
		C3_hat, C4_hat: the extreme values of |S| / (d ln d ln M).
		lower_reference: the smallest median radius in units of d / M.
	"""
	_check_trials(trials)
	opts = opts if opts is not None else SolverOptions()
	runner = _runner(runner)
	records = []
	for d in d_values:
		for M in M_values:
			logger.debug(f"Radius grid point d = {d}, M = {M}")
			records += runner.run(_radius_trial, trials, (d, M, cfg, opts, stream.derive(f"d{d}-M{M}")))
	table = statistics_table(records)

	ratios = [record.certified_radius / record.theorem_bound for record in records]
	C5_hat = cfg.C5 * fitting.quantile(ratios, 0.99, method = "higher")
	covered = numpy.mean([ratio * cfg.C5 <= C5_hat for ratio in ratios])
	subset_ratios = [record.size_S / _log_scale(record.d, record.M) for record in records]
	fitted = {
		"C5_hat":          C5_hat,
		"C3_hat":          min(subset_ratios),
		"C4_hat":          max(subset_ratios),
		"bound_coverage":  float(covered)
	}
	assertions = [Assertion("radius_bound_coverage", covered >= 0.99, f"{covered:.4f} of trials within the fitted bound")]
	medians = table.groupby(["d", "M"])["certified_radius"].median()
	fitted["lower_reference"] = min(medians[(d, M)] * M / d for d in d_values for M in M_values)
	if len(set(M_values)) >= 2:
		for d in d_values:
			fit = fitting.fit_loglog(M_values, [medians[(d, M)] for M in M_values])
			fitted[f"slope_d{d}"] = fit.slope
			fitted[f"slope_r2_d{d}"] = fit.r_squared
			assertions.append(Assertion(
				f"radius_slope_d{d}",
				abs(fit.slope + 1.0) <= slope_tolerance,
				f"ln(median radius) vs ln M slope {fit.slope:.3f}"
			))
	return ExperimentResult("radius-scaling", table, fitted, assertions, records)


########################################################################################################################
# Covering step of the uniform result
########################################################################################################################
def _covering_trial(trial_id: int, frame, cfg: ConstantsConfig, radius: float, stream: RngStream) -> TrialStatistics:
	trial_stream = stream.trial(trial_id)
	d, M = frame.d, frame.M
	tau = tau_of(d, M, cfg)
	x = random_unit_vector(trial_stream.derive("x"), d)
	direction = orthonormal_complement(x) @ gaussian(trial_stream.derive("direction"), d - 1)
	direction /= numpy.linalg.norm(direction)
	# Chord length ||x - neighbour|| = 2 sin(angle / 2), strictly below `radius`.
	chord = radius * float(uniforms(trial_stream.derive("distance"), 1)[0])
	angle = 2.0 * math.asin(chord / 2.0)
	neighbour = math.cos(angle) * x + math.sin(angle) * direction

	half_band = select_half_band(frame, neighbour, tau)
	products = inner_products(frame, x)
	wide_band = numpy.flatnonzero((products > -1.5 * tau) & (products < 0))
	outside = set(half_band.S) - set(int(i) for i in wide_band)
	return TrialStatistics(
		trial_id = trial_id, d = d, M = M, tau = tau, size_W = len(wide_band), size_Shat = len(half_band),
		theorem_bound = theorem_radius_bound(d, M, cfg),
		extras = {"violations": len(outside), "chord": chord}
	)


def covering_inclusion_experiment(d: int, M: int, cfg: ConstantsConfig, x_count: int, stream: RngStream,
		runner: Optional[TrialRunner] = None) -> ExperimentResult:
	"""
		For a point within tau / (2 max ||g_i||) of x, every row of its half band has -3 tau / 2 < <g_i, x> < 0,
		so its sign constraints are among those of the wider negative band around x.
	"""
	_check_trials(x_count)
	frame = make_frame(d, M, stream.derive("frame"))
	largest_norm = float(numpy.linalg.norm(frame_rows(frame), axis = 1).max())
	radius = tau_of(d, M, cfg) / (2.0 * largest_norm)
	records = _runner(runner).run(_covering_trial, x_count, (frame, cfg, radius, stream))
	violations = sum(record.extras["violations"] for record in records)
	fitted = {"covering_radius": radius, "largest_row_norm": largest_norm, "violations": violations}
	assertions = [Assertion("covering_inclusion", violations == 0, f"{violations} half-band rows outside the wide band")]
	return ExperimentResult("covering", statistics_table(records), fitted, assertions, records)

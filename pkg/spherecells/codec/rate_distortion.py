"""
	Decoding error against bit cost over a range of frame sizes.
"""
import math
from typing import Any, Dict, List, Optional, Sequence

import numpy
import pandas
from loguru import logger

try:
	from spherecells.certifier import SolverOptions, theorem_radius_bound
	from spherecells.codec.encoder import decode, encode
	from spherecells.errors import InvalidArgumentError
	from spherecells.lab import fitting
	from spherecells.lab.experiments import Assertion, ExperimentResult
	from spherecells.lab.trials import TrialRunner
	from spherecells.numeric import RngStream, random_unit_vector
	from spherecells.tessellation import ConstantsConfig, make_frame
except ModuleNotFoundError:
	from ..certifier import SolverOptions, theorem_radius_bound
	from .encoder import decode, encode
	from ..errors import InvalidArgumentError
	from ..lab import fitting
	from ..lab.experiments import Assertion, ExperimentResult
	from ..lab.trials import TrialRunner
	from ..numeric import RngStream, random_unit_vector
	from ..tessellation import ConstantsConfig, make_frame

RATE_COLUMNS = ["d", "M", "trials", "median_bits", "median_error", "median_k", "bound"]
# Decoded points may sit this far outside their cell.
SIGN_TOLERANCE = 1e-9


def _round_trip(trial_id: int, d: int, M: int, cfg: ConstantsConfig, opts: SolverOptions,
		stream: RngStream) -> Dict[str, Any]:
	trial_stream = stream.trial(trial_id)
	x = random_unit_vector(trial_stream.derive("x"), d)
	encoded = encode(x, d, M, cfg, trial_stream.derive("code"))
	x_hat, certificate = decode(encoded, opts)
	worst_margin = math.inf
	if encoded.k:
		rows = make_frame(d, M, encoded.frame_seed.derive("frame")).rows[list(encoded.indices)]
		worst_margin = float((encoded.signs * (rows @ x_hat)).min())
	return {
		"trial_id": trial_id, "M": M, "k": encoded.k, "bits": encoded.bit_cost,
		"error": float(numpy.linalg.norm(x - x_hat)), "certified_radius": certificate.radius,
		"worst_margin": worst_margin
	}


def rate_distortion_experiment(d: int, M_values: Sequence[int], cfg: ConstantsConfig, trials: int, stream: RngStream,
		opts: Optional[SolverOptions] = None, runner: Optional[TrialRunner] = None,
		C5_hat: Optional[float] = None, coverage: float = 0.95) -> ExperimentResult:
	"""
		Encodes and decodes `trials` random points for each M and reports the median error and bit cost.
	Parameters
	----------
	M_values: Sequence[int]
		Increasing frame sizes, all above 2d.
	C5_hat: Optional[float]
		A fitted radius constant. When given, the error must stay below twice the radius bound with this
		constant in at least `coverage` of the round trips; otherwise the constant that achieves the coverage
		is reported.
	"""
	if trials < 1:
		message = f"At least one trial is required, got {trials}"
		raise InvalidArgumentError(message)
	if any(later <= earlier for earlier, later in zip(M_values, M_values[1:])):
		message = f"The frame sizes must be increasing, got {list(M_values)}"
		raise InvalidArgumentError(message)
	opts = opts if opts is not None else SolverOptions()
	runner = runner if runner is not None else TrialRunner(threads = 1)

	round_trips: List[Dict[str, Any]] = []
	rows = []
	for M in M_values:
		logger.debug(f"Rate-distortion point d = {d}, M = {M}")
		outcomes = runner.run(_round_trip, trials, (d, M, cfg, opts, stream.derive(f"M{M}")))
		round_trips += outcomes
		rows.append((
			d, M, trials,
			float(numpy.median([outcome["bits"] for outcome in outcomes])),
			float(numpy.median([outcome["error"] for outcome in outcomes])),
			float(numpy.median([outcome["k"] for outcome in outcomes])),
			theorem_radius_bound(d, M, cfg)
		))
	table = pandas.DataFrame(rows, columns = RATE_COLUMNS)

	# Error relative to twice the radius bound, in units of the configured C5.
	relative = [outcome["error"] / (2.0 * theorem_radius_bound(d, outcome["M"], cfg)) for outcome in round_trips]
	fitted = {"C5_for_coverage": cfg.C5 * fitting.quantile(relative, coverage, method = "higher")}
	assertions = [
		Assertion(
			"decoded_in_cell",
			all(outcome["worst_margin"] >= -SIGN_TOLERANCE for outcome in round_trips),
			"every decoded point keeps the transmitted signs"
		),
		Assertion("bits_increasing", fitting.strictly_increasing(table["median_bits"]), "median bit cost grows with M")
	]
	if C5_hat is not None:
		covered = numpy.mean([value * cfg.C5 <= C5_hat for value in relative])
		fitted["bound_coverage"] = float(covered)
		assertions.append(Assertion(
			"error_within_fitted_bound", covered >= coverage,
			f"{covered:.3f} of round trips within twice the bound at C5 = {C5_hat:.4g}"
		))
	if len(M_values) >= 2:
		errors = table["median_error"].tolist()
		assertions.append(Assertion("errors_decreasing", fitting.strictly_decreasing(errors), "median error falls with M"))
		by_M = fitting.fit_loglog(M_values, errors)
		by_bits = fitting.fit_loglog(table["median_bits"], errors)
		root = fitting.fit_line(numpy.sqrt(table["median_bits"]), numpy.log(errors))
		fitted.update({
			"slope_log_M":        by_M.slope,
			"slope_log_bits":     by_bits.slope,
			"slope_sqrt_bits":    root.slope,
			"r2_sqrt_bits":       root.r_squared
		})
		assertions.append(Assertion(
			"error_slope_log_M", abs(by_M.slope + 1.0) <= 0.2, f"ln(median error) vs ln M slope {by_M.slope:.3f}"
		))
	return ExperimentResult("rate-distortion", table, fitted, assertions, round_trips)

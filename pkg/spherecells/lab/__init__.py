from . import fitting, moments
from .moments import (
	TruncatedGaussianSpec, chernoff_tail, expected_band_size, expected_half_band_size, hemisphere_exit_probability,
	margin_probability, psi2_ratio, truncated_covariance_alpha
)
from .trials import TrialRunner, resolve_threads
from .experiments import (
	Assertion, ExperimentResult, TrialStatistics, covariance_concentration_experiment, covariance_scaling_experiment,
	covering_inclusion_experiment, gram_min_singular_experiment, halfspace_consistency_experiment,
	margin_count_experiment, radius_scaling_experiment, subset_size_experiment, truncated_moment_experiment,
	uniform_radius_experiment
)

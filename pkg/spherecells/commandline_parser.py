import argparse
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

try:
	from spherecells import widgets
except ModuleNotFoundError:
	from . import widgets

__VERSION__ = "0.3.0"
DEBUG = False

EXPERIMENT_NAMES = [
	"subset-size", "margin-count", "gram-sigma-min", "covariance", "truncated-moment", "halfspace", "uniform-radius",
	"radius-scaling", "rate-distortion", "covering"
]
SUBSET_VARIANTS = ["negative_band", "full_band", "half_band"]


# For convienience. Helps with autocomplete.
@dataclass
class ProgramOptions(argparse.Namespace):
	name: str
	seed: Optional[int] = None
	out: Optional[Path] = None
	config: Optional[Path] = None
	threads: Optional[int] = None
	verbose: bool = False


#####################################################################################
############################## Shared Parser Groups #################################
#####################################################################################
def _create_parser_group_common(parser: argparse.ArgumentParser):
	group_common = parser.add_argument_group(title = "Common Options")
	group_common.add_argument(
		"--seed",
		help = "The master seed. Every random quantity is derived from it. Defaults to the configuration value, then 0.",
		action = "store",
		type = int,
		default = None,
		dest = "seed"
	)
	group_common.add_argument(
		"--out",
		help = "Where to write the output. Printed to stdout when omitted.",
		action = "store",
		type = Path,
		default = None,
		dest = "out"
	)
	group_common.add_argument(
		"--config",
		help = "A JSON configuration. The tools read its `constants` and `solver` objects.",
		action = "store",
		type = Path,
		default = None,
		dest = "config"
	)
	group_common.add_argument(
		"--threads",
		help = "Size of the worker pool. Defaults to CELLCERT_THREADS or the number of cores.",
		action = "store",
		type = int,
		default = None,
		dest = "threads"
	)
	group_common.add_argument(
		"--verbose",
		help = "Log debugging messages.",
		action = "store_true",
		dest = "verbose"
	)
	return group_common


def _create_parser_group_frame(parser: argparse.ArgumentParser, required: bool = True):
	group_frame = parser.add_argument_group(title = "Frame Options")
	group_frame.add_argument(
		"--d",
		help = "The ambient dimension.",
		action = "store",
		type = int,
		required = required,
		dest = "d"
	)
	group_frame.add_argument(
		"--M",
		help = "The number of frame vectors.",
		action = "store",
		type = int,
		required = required,
		dest = "M"
	)
	return group_frame


#####################################################################################
########################## Main Application Parsers #################################
#####################################################################################
def create_run_parser(subparsers) -> argparse.ArgumentParser:
	parser_run: argparse.ArgumentParser = subparsers.add_parser(
		"run",
		help = "Runs the experiment described by a JSON configuration file."
	)
	parser_run.add_argument(
		"config_file",
		help = "Path to the experiment configuration.",
		type = Path
	)
	_create_parser_group_common(parser_run)
	return parser_run


def create_experiment_parser(subparsers) -> argparse.ArgumentParser:
	parser_experiment: argparse.ArgumentParser = subparsers.add_parser(
		"experiment",
		help = "Runs a named experiment from command-line values, a configuration file, or both."
	)
	parser_experiment.add_argument(
		"experiment",
		help = "The experiment to run.",
		choices = EXPERIMENT_NAMES
	)
	_create_parser_group_common(parser_experiment)
	_create_parser_group_frame(parser_experiment, required = False)

	group_grid = parser_experiment.add_argument_group(
		title = "Experiment Options",
		description = "Values given here override the configuration file."
	)
	group_grid.add_argument(
		"--d-list",
		help = "Comma-separated dimensions, as in '4,8,16'.",
		type = widgets.list_type(widgets.parse_integer_list),
		dest = "d_list"
	)
	group_grid.add_argument(
		"--M-list",
		help = "Comma-separated frame sizes. Powers may be written as '2^10'.",
		type = widgets.list_type(widgets.parse_integer_list),
		dest = "M_list"
	)
	group_grid.add_argument(
		"--n-list",
		help = "Comma-separated sample counts for the covariance experiment.",
		type = widgets.list_type(widgets.parse_integer_list),
		dest = "n_list"
	)
	group_grid.add_argument(
		"--trials",
		help = "Number of independent trials per grid point.",
		type = int,
		dest = "trials"
	)
	group_grid.add_argument(
		"--x-count",
		help = "Number of random anchors sharing one frame.",
		type = int,
		dest = "x_count"
	)
	group_grid.add_argument(
		"--thresholds",
		help = "Comma-separated truncation thresholds.",
		type = widgets.list_type(widgets.parse_float_list),
		dest = "thresholds"
	)
	group_grid.add_argument(
		"--t",
		help = "Deviation parameter of the covariance bound.",
		type = float,
		dest = "t"
	)
	group_grid.add_argument(
		"--samples",
		help = "Monte Carlo samples for the truncated-moment check.",
		type = int,
		dest = "samples"
	)
	group_grid.add_argument(
		"--size-V",
		help = "Size of the fixed set in the halfspace experiment.",
		type = int,
		dest = "size_V"
	)
	group_grid.add_argument(
		"--fitted-C5",
		help = "Radius constant fitted by a radius-scaling run.",
		type = float,
		dest = "fitted_C5"
	)
	return parser_experiment


def create_gen_frame_parser(subparsers) -> argparse.ArgumentParser:
	parser_frame: argparse.ArgumentParser = subparsers.add_parser(
		"gen-frame",
		help = "Generates a Gaussian frame and writes it as a CCF1 file."
	)
	_create_parser_group_common(parser_frame)
	_create_parser_group_frame(parser_frame)
	return parser_frame


def create_encode_parser(subparsers) -> argparse.ArgumentParser:
	parser_encode: argparse.ArgumentParser = subparsers.add_parser(
		"encode",
		help = "Encodes a point by its selected indices and sign bits (CCE1)."
	)
	_create_parser_group_common(parser_encode)
	_create_parser_group_frame(parser_encode)
	parser_encode.add_argument(
		"--x",
		help = "Comma-separated coordinates of the point. It is normalised first.",
		type = widgets.list_type(widgets.parse_float_list),
		required = True,
		dest = "x"
	)
	parser_encode.add_argument(
		"--strict",
		help = "Fail on a zero inner product instead of encoding it as +1.",
		action = "store_true",
		dest = "strict"
	)
	return parser_encode


def create_decode_parser(subparsers) -> argparse.ArgumentParser:
	parser_decode: argparse.ArgumentParser = subparsers.add_parser(
		"decode",
		help = "Decodes a CCE1 file and prints the reconstructed point and the certified radius."
	)
	parser_decode.add_argument(
		"encoded",
		help = "Path to the encoded vector.",
		type = Path
	)
	_create_parser_group_common(parser_decode)
	return parser_decode


def create_certify_parser(subparsers) -> argparse.ArgumentParser:
	parser_certify: argparse.ArgumentParser = subparsers.add_parser(
		"certify",
		help = "Certifies the chordal radius of the cell of a point over a subset of the frame."
	)
	_create_parser_group_common(parser_certify)
	_create_parser_group_frame(parser_certify, required = False)
	parser_certify.add_argument(
		"--frame",
		help = "A CCF1 frame file. Otherwise the frame is generated from --d, --M and --seed.",
		type = Path,
		dest = "frame"
	)
	parser_certify.add_argument(
		"--x",
		help = "Comma-separated coordinates of the anchor. Defaults to e1.",
		type = widgets.list_type(widgets.parse_float_list),
		dest = "x"
	)
	parser_certify.add_argument(
		"--subset",
		help = "Comma-separated row indices. An empty string certifies the unconstrained cell.",
		type = widgets.list_type(widgets.parse_integer_list),
		dest = "subset"
	)
	parser_certify.add_argument(
		"--variant",
		help = "Selects the subset around x when --subset is not given.",
		choices = SUBSET_VARIANTS,
		default = "negative_band",
		dest = "variant"
	)
	return parser_certify


def create_count_cells_parser(subparsers) -> argparse.ArgumentParser:
	parser_count: argparse.ArgumentParser = subparsers.add_parser(
		"count-cells",
		help = "Prints the number of cells cut by M hyperplanes in general position in R^d."
	)
	_create_parser_group_common(parser_count)
	_create_parser_group_frame(parser_count)
	parser_count.add_argument(
		"--sample",
		help = "Also count the distinct sign patterns of this many random points on a Gaussian frame.",
		type = int,
		default = 0,
		dest = "sample"
	)
	return parser_count


def create_oracle_parser(subparsers) -> argparse.ArgumentParser:
	parser_oracle: argparse.ArgumentParser = subparsers.add_parser(
		"oracle-d2",
		help = "Exact cell radius in the plane. Normals are given by their angles."
	)
	_create_parser_group_common(parser_oracle)
	parser_oracle.add_argument(
		"--angles",
		help = "Comma-separated normal angles in radians; 'pi/4' style values are accepted.",
		type = widgets.list_type(widgets.parse_float_list),
		required = True,
		dest = "angles"
	)
	parser_oracle.add_argument(
		"--x",
		help = "Angle of the point.",
		type = lambda value: widgets.parse_float_list(value)[0],
		required = True,
		dest = "x_angle"
	)
	return parser_oracle


def create_parser() -> argparse.ArgumentParser:
	parser_parent = argparse.ArgumentParser(
		prog = "cellcert",
		description = "Certifies cell radii of Gaussian hyperplane tessellations of the sphere and runs the supporting experiments.",
		formatter_class = argparse.ArgumentDefaultsHelpFormatter
	)
	parser_parent.add_argument(
		"-v", "--version",
		action = 'version',
		version = f"%(prog)s {__VERSION__}"
	)

	subparsers = parser_parent.add_subparsers(dest = 'name')  # Each subparser can be identifies by the `name` attribute.
	create_run_parser(subparsers)
	create_experiment_parser(subparsers)
	create_gen_frame_parser(subparsers)
	create_encode_parser(subparsers)
	create_decode_parser(subparsers)
	create_certify_parser(subparsers)
	create_count_cells_parser(subparsers)
	create_oracle_parser(subparsers)

	return parser_parent


def get_arguments(arguments: Optional[List[str]] = None) -> argparse.Namespace:
	""" Implemented here to make sure the default parameters are properly applied. """
	parser = create_parser()
	args = parser.parse_args(arguments)
	if args.name is None:
		parser.error("a subcommand is required")
	return args

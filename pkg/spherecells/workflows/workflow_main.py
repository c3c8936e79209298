"""
	Entry point of the `cellcert` script. Exit codes: 0 when every assertion holds, 1 when one fails and
	2 for usage, configuration or input errors.
"""
import sys
from typing import List, Optional

from loguru import logger

try:
	from spherecells import commandline_parser
	from spherecells.errors import CellCertError
	from spherecells.workflows import workflow_experiment, workflow_tools
except ModuleNotFoundError:
	from .. import commandline_parser
	from ..errors import CellCertError
	from . import workflow_experiment, workflow_tools

LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} {level} {message}"


def configure_logging(verbose: bool = False):
	logger.remove()  # Need to remove the default sink so that the logger doesn't print messages twice.
	if commandline_parser.DEBUG or verbose:
		logger.add(sys.stderr, level = "DEBUG")
	else:
		logger.add(sys.stderr, level = 'INFO', format = LOG_FORMAT)


configure_logging()


def _run(program_options) -> int:
	return workflow_experiment.run(
		program_options.config_file,
		threads = program_options.threads,
		seed = program_options.seed,
		output = program_options.out
	)


SUBCOMMANDS = {
	"run":         _run,
	"experiment":  workflow_experiment.run_named,
	"gen-frame":   workflow_tools.gen_frame,
	"encode":      workflow_tools.encode,
	"decode":      workflow_tools.decode,
	"certify":     workflow_tools.certify,
	"count-cells": workflow_tools.count_cells,
	"oracle-d2":   workflow_tools.oracle_d2
}


def main(arguments: Optional[List[str]] = None) -> int:
	try:
		program_options = commandline_parser.get_arguments(arguments)
	except SystemExit as exception:
		# argparse exits with 0 after --help or --version and with 2 on a usage error.
		return exception.code if isinstance(exception.code, int) else 2
	configure_logging(program_options.verbose)

	try:
		return SUBCOMMANDS[program_options.name](program_options)
	except CellCertError as exception:
		logger.error(f"{type(exception).__name__}: {exception}")
		return 2
	except OSError as exception:
		logger.error(f"Could not access '{exception.filename}': {exception.strerror}")
		return 2

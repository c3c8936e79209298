"""
	The single-shot subcommands. Results are printed to stdout, or written to `--out` when it is given;
	diagnostics go to the log.
"""
import argparse
from pathlib import Path
from typing import Iterable, Optional

import numpy
from loguru import logger

try:
	from spherecells import codec, tessellation
	from spherecells.certifier import cell_radius, theorem_radius_bound
	from spherecells.dataio import binary
	from spherecells.dataio.configuration import load_settings
	from spherecells.errors import ConfigurationError
	from spherecells.numeric import RngStream, gaussian
	from spherecells.numeric.vectors import basis_vector
	from spherecells.tessellation import GaussianFrame
except ModuleNotFoundError:
	from .. import codec, tessellation
	from ..certifier import cell_radius, theorem_radius_bound
	from ..dataio import binary
	from ..dataio.configuration import load_settings
	from ..errors import ConfigurationError
	from ..numeric import RngStream, gaussian
	from ..numeric.vectors import basis_vector
	from ..tessellation import GaussianFrame


def _seed(program_options: argparse.Namespace) -> RngStream:
	seed = program_options.seed if program_options.seed is not None else 0
	return RngStream(seed)


def _emit(lines: Iterable[str], filename: Optional[Path]):
	text = "\n".join(lines) + "\n"
	if filename is None:
		print(text, end = "")
	else:
		Path(filename).write_text(text)
		logger.info(f"Saved the output to '{filename}'.")


def _format_vector(values: numpy.ndarray) -> str:
	return ",".join(repr(float(value)) for value in values)


def _frame(program_options: argparse.Namespace) -> GaussianFrame:
	""" Reads `--frame`, or regenerates the frame `encode` and `gen-frame` use for `--d`, `--M` and `--seed`. """
	if getattr(program_options, 'frame', None) is not None:
		return binary.frame_from_bytes(binary.read_bytes(program_options.frame))
	if program_options.d is None or program_options.M is None:
		message = "Give either --frame or both --d and --M."
		raise ConfigurationError(message, location = "--frame")
	return tessellation.make_frame(program_options.d, program_options.M, _seed(program_options).derive("frame"))


def gen_frame(program_options: argparse.Namespace) -> int:
	if program_options.out is None:
		message = "gen-frame writes a binary file and needs --out."
		raise ConfigurationError(message, location = "--out")
	frame = _frame(program_options)
	binary.write_bytes(program_options.out, binary.frame_to_bytes(frame))
	logger.info(f"Saved a frame with d = {frame.d}, M = {frame.M} to '{program_options.out}'.")
	return 0


def encode(program_options: argparse.Namespace) -> int:
	cfg, _ = load_settings(program_options.config)
	encoded = codec.encode(
		numpy.asarray(program_options.x, dtype = float), program_options.d, program_options.M, cfg,
		_seed(program_options), strict = program_options.strict
	)
	logger.info(f"Encoded with k = {encoded.k} indices in {encoded.bit_cost} bits (tau = {encoded.tau:.6g}).")
	data = binary.encoded_to_bytes(encoded)
	if program_options.out is None:
		print(data.hex())
	else:
		binary.write_bytes(program_options.out, data)
		logger.info(f"Saved the encoded vector to '{program_options.out}'.")
	return 0


def decode(program_options: argparse.Namespace) -> int:
	_, opts = load_settings(program_options.config)
	encoded = binary.encoded_from_bytes(binary.read_bytes(program_options.encoded))
	x_hat, certificate = codec.decode(encoded, opts)
	logger.info(f"Decoded a cell with phase '{certificate.phase}' from {encoded.bit_cost} bits.")
	_emit([_format_vector(x_hat), repr(certificate.radius)], program_options.out)
	return 0


def certify(program_options: argparse.Namespace) -> int:
	cfg, opts = load_settings(program_options.config)
	stream = _seed(program_options)
	frame = _frame(program_options)
	x = numpy.asarray(program_options.x, dtype = float) if program_options.x is not None else basis_vector(frame.d)
	tau = tessellation.tau_of(frame.d, frame.M, cfg)

	if program_options.subset is not None:
		subset = program_options.subset
	elif program_options.variant == "full_band":
		subset = tessellation.select_full_band(frame, x, tau)
	elif program_options.variant == "half_band":
		subset = tessellation.select_half_band(frame, x, tau)
	else:
		subset = tessellation.select_subsets(frame, x, tau, cfg, stream.derive("subset"))

	certificate = cell_radius(frame, subset, x, opts, stream = stream.derive("solver"))
	logger.info(f"Certified radius {certificate.radius:.6g} (phase '{certificate.phase}', {certificate.iterations} iterations).")
	if frame.d >= 3:
		logger.info(f"The radius bound for d = {frame.d}, M = {frame.M} is {theorem_radius_bound(frame.d, frame.M, cfg):.6g}.")
	_emit([repr(certificate.radius)], program_options.out)
	return 0


def count_cells(program_options: argparse.Namespace) -> int:
	d, M = program_options.d, program_options.M
	lines = [str(tessellation.schlafli_cell_count(M, d))]
	if program_options.sample > 0:
		# General position is all the count needs, so any M and d are accepted here.
		stream = _seed(program_options)
		rows = gaussian(stream.derive("frame"), M * d, 1.0 / d).reshape(M, d)
		sampled = tessellation.sampled_cell_count(rows, program_options.sample, stream.derive("points"))
		logger.info(f"{program_options.sample} random points hit {sampled} distinct cells.")
		lines.append(str(sampled))
	_emit(lines, program_options.out)
	return 0


def oracle_d2(program_options: argparse.Namespace) -> int:
	cell = tessellation.exact_cell_d2(program_options.angles, program_options.x_angle)
	logger.info(f"The cell is the arc from {cell.start:.6f} to {cell.end:.6f}.")
	_emit([f"{cell.radius:.7f}"], program_options.out)
	return 0

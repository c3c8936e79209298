import math

import numpy
import pytest

from spherecells.certifier import SolverOptions, cell_radius, check_sign_consistency
from spherecells.errors import InconsistentInputError, InvalidArgumentError
from spherecells.numeric import RngStream
from spherecells.numeric.streams import random_order
from spherecells.numeric.vectors import random_unit_vector
from spherecells.tessellation import exact_cell_d2, make_frame, normals_from_angles, select_subsets, tau_of

PLANAR_ANGLES = numpy.linspace(0.1, 3.0, 7)


def _planar_point(angle: float) -> numpy.ndarray:
	return numpy.array([math.cos(angle), math.sin(angle)])


def test_empty_subset_gives_the_whole_sphere(planar_rows):
	certificate = cell_radius(planar_rows, [], [1.0, 0.0])
	assert certificate.radius == 2.0
	assert certificate.phase == "empty"
	assert certificate.converged
	assert certificate.witness.tolist() == [-1.0, -0.0]


@pytest.mark.parametrize("x_angle", [0.2, 1.0, 2.5, 4.0, 5.5])
def test_planar_polytope_cells_match_the_oracle(x_angle):
	rows = normals_from_angles(PLANAR_ANGLES)
	certificate = cell_radius(rows, range(len(rows)), _planar_point(x_angle))
	expected = exact_cell_d2(PLANAR_ANGLES, x_angle).radius
	assert certificate.phase == "polytope"
	assert certificate.radius == pytest.approx(expected, abs = 1e-6)
	assert certificate.radius <= expected + 1e-12


def test_planar_single_hyperplane_reaches_past_the_equator():
	rows = normals_from_angles([0.0])
	certificate = cell_radius(rows, [0], _planar_point(math.pi / 4))
	assert certificate.phase == "hemisphere"
	assert certificate.radius == pytest.approx(2 * math.sin(3 * math.pi / 8), abs = 1e-6)
	assert certificate.witness == pytest.approx([0.0, -1.0], abs = 1e-6)


def test_octant_reaches_a_coordinate_axis():
	x = numpy.ones(3) / math.sqrt(3)
	certificate = cell_radius(numpy.eye(3), [0, 1, 2], x)
	assert certificate.phase == "polytope"
	assert certificate.radius == pytest.approx(math.sqrt(2 - 2 / math.sqrt(3)), abs = 1e-6)
	assert certificate.radius == pytest.approx(0.919401, abs = 1e-6)
	assert certificate.worst_margin >= -1e-12


@pytest.mark.parametrize("seed", [1, 2, 3, 4])
def test_witness_lies_in_the_cell(seed):
	stream = RngStream(seed)
	frame = make_frame(3, 64, stream.derive("frame"))
	x = random_unit_vector(stream.derive("x"), 3)
	subset = range(0, 64, 4)
	certificate = cell_radius(frame, subset, x, SolverOptions(max_iterations = 5000), stream = stream.derive("solver"))
	assert 0.0 <= certificate.radius <= 2.0
	assert certificate.worst_margin >= -1e-9
	assert numpy.linalg.norm(certificate.witness) == pytest.approx(1.0)
	ok, worst = check_sign_consistency(frame, subset, x, certificate.witness)
	assert worst >= -1e-9
	for witness in certificate.witnesses:
		assert check_sign_consistency(frame, subset, x, witness)[1] >= -1e-9


@pytest.mark.parametrize("d,M,seed", [(3, 48, 1), (3, 48, 2), (4, 64, 3), (4, 64, 4), (5, 96, 5)])
def test_radius_shrinks_on_nested_subsets(d, M, seed):
	stream = RngStream(seed)
	frame = make_frame(d, M, stream.derive("frame"))
	x = random_unit_vector(stream.derive("x"), d)
	order = random_order(stream.derive("order"), M)
	smaller = sorted(order[:M // 6].tolist())
	larger = sorted(order[:M // 2].tolist())
	radii = [
		cell_radius(frame, subset, x, stream = stream.derive(f"solver-{index}")).radius
		for index, subset in enumerate([smaller, larger, range(M)])
	]
	assert radii[0] >= radii[1] - 1e-9
	assert radii[1] >= radii[2] - 1e-9


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_selected_subset_radius_covers_the_full_cell(seed, cfg):
	stream = RngStream(seed)
	frame = make_frame(4, 256, stream.derive("frame"))
	x = random_unit_vector(stream.derive("x"), 4)
	selection = select_subsets(frame, x, tau_of(4, 256, cfg), cfg, stream.derive("subset"))
	thinned = sorted(selection.S)[::2]
	radius_thinned = cell_radius(frame, thinned, x, stream = stream.derive("solver-thinned")).radius
	radius_S = cell_radius(frame, selection, x, stream = stream.derive("solver-S")).radius
	radius_all = cell_radius(frame, range(256), x, stream = stream.derive("solver-all")).radius
	assert radius_thinned >= radius_S - 1e-9
	assert radius_S >= radius_all - 1e-9


def test_radius_is_deterministic_given_the_stream():
	stream = RngStream(9)
	frame = make_frame(4, 128, stream.derive("frame"))
	x = random_unit_vector(stream.derive("x"), 4)
	first = cell_radius(frame, range(0, 128, 8), x, stream = stream.derive("solver"))
	second = cell_radius(frame, range(0, 128, 8), x, stream = stream.derive("solver"))
	assert first.radius == second.radius
	assert numpy.array_equal(first.witness, second.witness)


def test_explicit_signs_must_hold_at_the_anchor(planar_rows):
	with pytest.raises(InconsistentInputError):
		cell_radius(planar_rows, [0], [1.0, 0.0], signs = [1])


@pytest.mark.parametrize(
	"subset,signs",
	[
		([0, 7], None),
		([-1], None),
		([0, 1], [1]),
		([0, 1], [-1, 0])
	]
)
def test_invalid_subsets_and_signs(planar_rows, subset, signs):
	with pytest.raises(InvalidArgumentError):
		cell_radius(planar_rows, subset, [1.0, 0.0], signs = signs)


def test_dimension_mismatch(planar_rows):
	with pytest.raises(InvalidArgumentError):
		cell_radius(planar_rows, [0], [1.0, 0.0, 0.0])


def test_check_sign_consistency_planar_example(planar_rows):
	ok, worst = check_sign_consistency(planar_rows, [0, 2], [1.0, 0.0], [0.9, 0.436])
	assert not ok
	assert worst == pytest.approx(-0.3024, abs = 1e-9)

	ok, worst = check_sign_consistency(planar_rows, [0, 2], [1.0, 0.0], [1.0, 0.0])
	assert ok
	assert worst == pytest.approx(0.05)

	assert check_sign_consistency(planar_rows, [], [1.0, 0.0], [0.0, 1.0]) == (True, math.inf)


@pytest.mark.parametrize(
	"values",
	[
		{"max_iterations": 0},
		{"tolerance": 0.0},
		{"step_size": -1.0},
		{"projection_cycles": 0},
		{"restarts": -1}
	]
)
def test_solver_options_validation(values):
	with pytest.raises(InvalidArgumentError):
		SolverOptions(**values)


def test_solver_options_round_trip():
	opts = SolverOptions(restarts = 2, max_iterations = 100)
	assert SolverOptions.from_dict(opts.to_dict()) == opts

import numpy
import pytest

from spherecells.errors import DegenerateInputError, InvalidArgumentError
from spherecells.numeric import RngStream, orthonormal_complement, random_unit_vector, unit_vector
from spherecells.numeric.vectors import basis_vector, tail_inner_product


def test_unit_vector_normalises():
	vector = unit_vector([3.0, 4.0])
	assert numpy.allclose(vector, [0.6, 0.8])
	assert abs(numpy.linalg.norm(unit_vector(numpy.arange(1.0, 30.0))) - 1.0) <= 1e-12


@pytest.mark.parametrize(
	"coords,error",
	[
		([0.0, 0.0, 0.0], DegenerateInputError),
		([1.0], InvalidArgumentError),
		([1.0, float('nan')], InvalidArgumentError)
	]
)
def test_unit_vector_rejects(coords, error):
	with pytest.raises(error):
		unit_vector(coords)


def test_random_unit_vector():
	vector = random_unit_vector(RngStream(2), 9)
	assert vector.size == 9
	assert numpy.linalg.norm(vector) == pytest.approx(1.0, abs = 1e-12)


@pytest.mark.parametrize("d", [2, 3, 8])
def test_orthonormal_complement(d):
	x = random_unit_vector(RngStream(4, d), d)
	basis = orthonormal_complement(x)
	assert basis.shape == (d, d - 1)
	assert numpy.allclose(basis.T @ basis, numpy.eye(d - 1), atol = 1e-12)
	assert numpy.allclose(x @ basis, 0.0, atol = 1e-12)


def test_tail_inner_product_for_first_basis_vector():
	g = numpy.array([[1.0, 2.0, 3.0], [-1.0, 0.5, 0.0]])
	y = numpy.array([0.3, -1.0, 2.0])
	expected = g[:, 1:] @ y[1:]
	assert numpy.allclose(tail_inner_product(g, y, basis_vector(3)), expected)

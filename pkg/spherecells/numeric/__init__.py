from .streams import RngStream, gaussian, uniforms
from .special import erf, erfc, gauss_tail
from .linalg import as_matrix, min_singular_value, operator_norm, symmetric_eigenvalues
from .vectors import orthonormal_complement, random_unit_vector, unit_vector

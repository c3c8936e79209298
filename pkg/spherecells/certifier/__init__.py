from .bounds import chain_radius_bound, margin_radius_bound, theorem_radius_bound
from .dykstra import Projection, project_cone_ball, project_polyhedron
from .solver import CellCertificate, SolverOptions, cell_radius, check_sign_consistency

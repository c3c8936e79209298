from .constants import ConstantsConfig, eta_of, fixed_subset_size, tau_of
from .frames import GaussianFrame, SignPattern, frame_rows, inner_products, make_frame, sign_encode
from .subsets import (
	SubsetSelection, select_full_band, select_half_band, select_margin_band, select_oriented, select_subsets
)
from .combinatorics import (
	binom_tail_ratio_bound, cell_count_upper_bound, expected_face_count, sampled_cell_count, schlafli_cell_count
)
from .oracle import PlanarCell, arc_count_d2, exact_cell_d2, normals_from_angles

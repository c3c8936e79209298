from .ranking import bit_cost, subset_rank, subset_unrank
from .encoder import EncodedVector, chebyshev_direction, decode, encode
from .rate_distortion import rate_distortion_experiment

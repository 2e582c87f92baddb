from .fields import Field, Q, field, parse_field
from .spaces import (GradedVectorSpace, SparseLinearMap, Z, Z2, norm_degree, vec_add,
                     vec_add_term, vec_clean, vec_scale)
from .linalg import (Echelon, HomologyGroup, Obstruction, RankData, get_threads, homology_groups,
                     homology_in_degree, normalize, rank, rank_kernel_image, set_threads,
                     solve_inhomogeneous)
from .complexes import TruncatedComplex, homology, window_degrees

__all__ = [
    "Field", "Q", "field", "parse_field", "GradedVectorSpace", "SparseLinearMap", "Z", "Z2",
    "norm_degree", "vec_add", "vec_add_term", "vec_clean", "vec_scale", "Echelon",
    "HomologyGroup", "Obstruction", "RankData", "get_threads", "homology_groups",
    "homology_in_degree", "normalize", "rank", "rank_kernel_image", "set_threads",
    "solve_inhomogeneous", "TruncatedComplex", "homology", "window_degrees",
]

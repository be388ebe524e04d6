"""Gassmann triples, transplantation intertwiners and isospectral Schreier graphs."""

from .errors import SunadaError
from .gassmann import class_profile, is_gassmann, search_pairs
from .perm_core import (
    Permutation,
    closure,
    compose,
    conjugacy_classes,
    double_cosets,
    left_cosets,
    parse_cycles,
    subgroup_from_generators,
)
from .spectral import (
    cayley_graph,
    ihara_zeta_poly,
    isospectral_verdict,
    laplacian_charpoly,
    schreier_quotient,
)
from .transplant import (
    find_invertible_intertwiner,
    intertwiner_basis,
    orthogonalize,
    transplantation,
)

__version__ = "0.1.0"

"""Transplanting invariant vectors and the S4 negative control.

An invertible intertwiner moves H1-invariant vectors of any G-module to
H2-invariant ones and commutes with every G-equivariant operator.  Here
the module is the regular representation, and the operators are class
sums.  For the S4 pair no such intertwiner exists, and the quotient graphs
have different spectra.
"""

import numpy as np

from sunada import io
from sunada.perm_core import conjugacy_classes, left_cosets
from sunada.spectral import find_spectral_refutation
from sunada.transplant import (
    class_sum,
    find_invertible_intertwiner,
    intertwiner_basis,
    orthogonality_residual,
    orthogonalize,
    regular_module,
    transplantation,
    verify_commutation,
)
from sunada.errors import NoInvertibleFound

spec = io.load_catalog_entry("gl32")
G, subs = spec.build()
H1, H2 = subs[spec.h1], subs[spec.h2]
S = find_invertible_intertwiner(intertwiner_basis(G, left_cosets(G, H1), left_cosets(G, H2)))

V = regular_module(G)
T = transplantation(V, H1, H2, S)
print("T maps a", T.dims[0], "dim space onto a", T.dims[1], "dim space, rank", T.rank)
for c in conjugacy_classes(G).classes:
    verify_commutation(V, class_sum(V, c), H1, H2, T)
print("commutes with all", len(conjugacy_classes(G)), "class sums")

U = orthogonalize(S)
print("orthogonal refinement residual %.1e" % orthogonality_residual(U))
print(np.round(U, 4))

spec = io.load_catalog_entry("s4")
G, subs = spec.build()
H1, H2 = subs[spec.h1], subs[spec.h2]
try:
    find_invertible_intertwiner(intertwiner_basis(G, left_cosets(G, H1), left_cosets(G, H2)))
except NoInvertibleFound as exc:
    print("S4:", exc, "(proved:", exc.proved, ")")
gens, rep = find_spectral_refutation(G, H1, H2)
print("S4 charpolys differ:", rep.charpoly1, "vs", rep.charpoly2)

"""Two Schreier graphs with the same Laplacian spectrum and Ihara zeta.

The affine group of Z/8 has two non-conjugate Gassmann subgroups of order 4.
Quotienting a Cayley graph by each gives 8-vertex graphs that are
isospectral but (for these generators) not isomorphic.
"""

import numpy as np

from sunada import io
from sunada.perm_core import parse_cycles
from sunada.spectral import (
    float_spectrum,
    graphs_isomorphic,
    isospectral_verdict,
    schreier_quotient,
    symmetrize,
    zeta_verdict,
)

spec = io.load_catalog_entry("affine8")
G, subs = spec.build()
S = symmetrize(G, [G.index(parse_cycles(c, spec.degree)) for c in spec.default_gens])

g1 = schreier_quotient(G, subs["linear"], S)
g2 = schreier_quotient(G, subs["twisted"], S)
print(g1.adj, "\n")
print(g2.adj, "\n")

rep = isospectral_verdict(g1, g2)
print("charpoly:", rep.charpoly1)
print("same Laplacian charpoly:", rep.equal)
print("same Ihara zeta:", zeta_verdict(g1, g2).equal)
print("spectrum:", np.round(float_spectrum(g1), 6) + 0.0)
print("isomorphic:", graphs_isomorphic(g1, g2) is not None)

"""Points and planes of the Fano plane: a Gassmann pair in GL(3,2).

Run with ``python3 demos/01_fano_pair.py``.
"""

import numpy as np

from sunada import io
from sunada.gassmann import is_gassmann
from sunada.perm_core import conjugacy_classes, left_cosets
from sunada.transplant import find_invertible_intertwiner, intertwiner_basis

spec = io.load_catalog_entry("gl32")
G, subs = spec.build()
classes = conjugacy_classes(G)
print("|G| =", G.order, " class sizes:", classes.sizes)

H1, H2 = subs["point"], subs["plane"]
cert = is_gassmann(G, classes, H1, H2)
print("point stabilizer profile:", cert.profile1.counts)
print("plane stabilizer profile:", cert.profile2.counts)
print("Gassmann:", cert.is_gassmann, " conjugate:", cert.conjugacy_witness is not None)

# the two G-sets have 7 elements each; equivariant maps between them are
# spanned by the incidence matrix and its complement
X1, X2 = left_cosets(G, H1), left_cosets(G, H2)
B = intertwiner_basis(G, X1, X2)
for M in B.matrices:
    print(M, "\n")

S = find_invertible_intertwiner(B)
print("phi =", S.phi, " det =", S.det)
print(np.array(S.matrix, dtype=int))

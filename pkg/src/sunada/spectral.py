"""Isospectral quotient graphs from Gassmann triples.

The Cayley graph of ``G`` with respect to a symmetric generating set ``S``
(edges ``x -> x s``) carries a free left action of ``G`` by graph
automorphisms.  Its quotients by ``H1`` and ``H2`` are the Schreier graphs
on right cosets ``H x``.  When ``(G; H1, H2)`` is a Gassmann triple the two
quotients have the same Laplacian spectrum and the same Ihara zeta function;
both facts are checked here as exact identities between integer
polynomials.

Conventions: ``adj[i][j]`` counts generators ``s`` with ``i s = j`` (a loop
is counted once per generator fixing the vertex) and the Laplacian is
``L = |S| I - adj``.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    BasisMismatch,
    IdentityInGeneratingSet,
    NotSymmetric,
    RegularityMismatch,
    TooLarge,
)
from .perm_core import subgroup_from_generators


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    n: int
    adj: np.ndarray
    generator_count: int
    labels: tuple = field(default=())

    def __eq__(self, other):
        return (
            isinstance(other, LabeledGraph)
            and self.n == other.n
            and self.generator_count == other.generator_count
            and np.array_equal(self.adj, other.adj)
        )

    def __hash__(self):
        return hash((self.n, self.generator_count, self.adj.tobytes()))

    @property
    def laplacian(self):
        return self.generator_count * np.eye(self.n, dtype=np.int64) - self.adj

    def is_regular(self):
        return bool(np.all(self.adj.sum(axis=1) == self.generator_count))

    def to_dot(self, name="G"):
        """DOT text; one undirected record per adjacent pair, labelled by multiplicity."""
        lines = [f"graph {name} {{"]
        names = self.labels or tuple(str(i) for i in range(self.n))
        for i in range(self.n):
            lines.append(f'  {i} [label="{names[i]}"];')
        for i in range(self.n):
            for j in range(i, self.n):
                m = int(self.adj[i, j])
                if m:
                    lines.append(f'  {i} -- {j} [label="{m}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _graph(adj, k, labels=()):
    adj = np.asarray(adj, dtype=np.int64)
    adj.setflags(write=False)
    return LabeledGraph(adj.shape[0], adj, k, tuple(labels))


def check_generating_set(G, S):
    S = sorted({int(s) for s in S})
    if 0 in S:
        raise IdentityInGeneratingSet("identity element in generating set")
    Sset = set(S)
    for s in S:
        if int(G.inv[s]) not in Sset:
            raise NotSymmetric(f"inverse of element {s} missing from generating set")
    if subgroup_from_generators(G, S).order != G.order:
        warnings.warn("generating set does not generate the group; graph is disconnected",
                      stacklevel=3)
    return S


def symmetrize(G, S):
    """Close a list of element indices under inversion and drop the identity."""
    out = set()
    for s in S:
        s = int(s)
        if s:
            out.add(s)
            out.add(int(G.inv[s]))
    return sorted(out)


def cayley_graph(G, S):
    """Vertices are group elements, ``adj[x][y] = #{s in S : x s = y}``."""
    S = check_generating_set(G, S)
    adj = np.zeros((G.order, G.order), dtype=np.int64)
    rows = np.arange(G.order)
    for s in S:
        np.add.at(adj, (rows, G.mul[:, s]), 1)
    labels = [G.elements[x].to_cycles() for x in range(G.order)]
    return _graph(adj, len(S), labels)


def right_cosets(G, H):
    """Right cosets ``H x`` ordered by smallest member: ``(coset_of, reps)``."""
    members = np.array(H.member_indices, dtype=np.int64)
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for x in range(G.order):
        if coset_of[x] < 0:
            coset_of[G.mul[members, x]] = len(reps)
            reps.append(x)
    return coset_of, reps


def schreier_quotient(G, H, S):
    """Schreier graph on ``H\\G``: ``adj[Hx][Hy] = #{s : H x s = H y}``."""
    S = check_generating_set(G, S)
    coset_of, reps = right_cosets(G, H)
    n = len(reps)
    adj = np.zeros((n, n), dtype=np.int64)
    for i, x in enumerate(reps):
        for s in S:
            adj[i, coset_of[G.mul[x, s]]] += 1
    labels = [f"H{G.elements[x].to_cycles()}" for x in reps]
    return _graph(adj, len(S), labels)


def orbit_quotient(graph, G, H):
    """Quotient of a Cayley graph by left multiplication with ``H``.

    Vertices are the ``H``-orbits ordered by smallest member; the multiplicity
    between two orbits is read off one representative of the first, which is
    well defined because the action is free.
    """
    label = np.full(graph.n, -1, dtype=np.int64)
    orbits = []
    for x in range(graph.n):
        if label[x] < 0:
            orb = sorted({int(G.mul[h, x]) for h in H.member_indices})
            label[orb] = len(orbits)
            orbits.append(orb)
    m = len(orbits)
    adj = np.zeros((m, m), dtype=np.int64)
    for i, orb in enumerate(orbits):
        x = orb[0]
        for y in np.flatnonzero(graph.adj[x]):
            adj[i, label[y]] += graph.adj[x, y]
    return _graph(adj, graph.generator_count)


def coset_adjacency(X, S):
    """Schreier adjacency written on left cosets: ``sum_s rho_{G/H}(s)``.

    Right coset ``H x`` corresponds to left coset ``x^-1 H``; under this
    bijection the quotient graph's adjacency is the sum of the coset
    permutation matrices of the generators.
    """
    n = len(X.reps)
    A = np.zeros((n, n), dtype=np.int64)
    cols = np.arange(n)
    for s in S:
        np.add.at(A, (X.act[s], cols), 1)
    return A


def right_to_left_coset_map(G, X):
    """Map right-coset vertex id of ``H\\G`` to the left-coset id of ``x^-1 H``."""
    coset_of, reps = right_cosets(G, X.subgroup)
    return [int(X.coset_of[G.inv[x]]) for x in reps]


# ---------------------------------------------------------------------------
# exact polynomials


def _evaluate_interpolate(matrix_at, points):
    values = [linalg.bareiss_det(matrix_at(p)) for p in points]
    return linalg.interpolate(points, values)


def laplacian_charpoly(g):
    """Coefficients (constant term first) of ``det(x I - L)``."""
    L = [[int(v) for v in row] for row in g.laplacian]
    n = g.n

    def at(x):
        return [[(x if i == j else 0) - L[i][j] for j in range(n)] for i in range(n)]

    coeffs = _evaluate_interpolate(at, list(range(n + 1)))
    return _pad(coeffs, n + 1)


def ihara_matrix(g, u):
    """``I - A u + (D - I) u^2`` at a (possibly rational) value ``u``."""
    A = [[int(v) for v in row] for row in g.adj]
    D = [int(v) for v in g.adj.sum(axis=1)]
    n = g.n
    return [
        [(1 + (D[i] - 1) * u * u if i == j else 0) - A[i][j] * u for j in range(n)]
        for i in range(n)
    ]


def ihara_zeta_poly(g):
    """Coefficients in ``u`` of ``det(I - A u + (D - I) u^2)``."""
    coeffs = _evaluate_interpolate(lambda u: ihara_matrix(g, u), list(range(2 * g.n + 1)))
    return _pad(coeffs, 1)


def _pad(coeffs, length):
    coeffs = [int(c) for c in coeffs]
    return coeffs + [0] * (length - len(coeffs))


def _strip(coeffs):
    out = list(coeffs)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


@dataclass(frozen=True)
class SpectralReport:
    charpoly1: tuple
    charpoly2: tuple
    equal: bool
    float_spectra: tuple | None = None

    def to_json(self):
        out = {
            "charpoly1": [str(c) for c in self.charpoly1],
            "charpoly2": [str(c) for c in self.charpoly2],
            "equal": self.equal,
        }
        if self.float_spectra is not None:
            out["float_spectra"] = [[round(x, 9) for x in s] for s in self.float_spectra]
        return out


@dataclass(frozen=True)
class ZetaReport:
    poly1: tuple
    poly2: tuple
    equal: bool

    def to_json(self):
        return {
            "poly1": [str(c) for c in self.poly1],
            "poly2": [str(c) for c in self.poly2],
            "equal": self.equal,
        }


def float_spectrum(g):
    """Sorted Laplacian eigenvalues, for display only."""
    return tuple(float(x) for x in np.linalg.eigvalsh(g.laplacian.astype(float)))


def isospectral_verdict(g1, g2, spectra=False):
    if g1.generator_count != g2.generator_count:
        raise RegularityMismatch(
            f"generator counts {g1.generator_count} and {g2.generator_count} differ"
        )
    p1 = tuple(laplacian_charpoly(g1))
    p2 = tuple(laplacian_charpoly(g2))
    fs = (float_spectrum(g1), float_spectrum(g2)) if spectra else None
    return SpectralReport(p1, p2, p1 == p2, fs)


def zeta_verdict(g1, g2):
    p1 = tuple(_strip(ihara_zeta_poly(g1)))
    p2 = tuple(_strip(ihara_zeta_poly(g2)))
    return ZetaReport(p1, p2, p1 == p2)


# ---------------------------------------------------------------------------
# transplantation on quotient graphs


def quotient_laplacian_on_cosets(X, S):
    k = len(S)
    return k * np.eye(len(X.reps), dtype=np.int64) - coset_adjacency(X, S)


def verify_transplantation_on_graphs(G, H1, H2, S, intertwiner):
    """Exact check of ``S L1 = L2 S`` for the quotient Laplacians.

    The Laplacians are taken on the intertwiner's own coset spaces, so rows
    and columns line up by construction.
    """
    basis = intertwiner.basis
    if basis.X1.subgroup != H1 or basis.X2.subgroup != H2:
        raise BasisMismatch("intertwiner was built for different subgroups")
    S = check_generating_set(G, S)
    L1 = quotient_laplacian_on_cosets(basis.X1, S).astype(object)
    L2 = quotient_laplacian_on_cosets(basis.X2, S).astype(object)
    M = np.asarray(intertwiner.matrix, dtype=object)
    return bool(np.array_equal(M.dot(L1), L2.dot(M)))


# ---------------------------------------------------------------------------
# isomorphism


def graphs_isomorphic(g1, g2, max_vertices=12):
    """First vertex bijection (lexicographic) mapping ``g1`` onto ``g2``, or None."""
    n = g1.n
    if max(g1.n, g2.n) > max_vertices:
        raise TooLarge(f"brute-force isomorphism limited to {max_vertices} vertices")
    if g1.n != g2.n:
        return None
    A, B = g1.adj, g2.adj
    inv1 = [tuple(sorted(A[i])) + (int(A[i, i]),) for i in range(n)]
    inv2 = [tuple(sorted(B[i])) + (int(B[i, i]),) for i in range(n)]
    if sorted(inv1) != sorted(inv2):
        return None
    image = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for c in range(n):
            if used[c] or inv1[i] != inv2[c]:
                continue
            if all(
                A[i, j] == B[c, image[j]] and A[j, i] == B[image[j], c] for j in range(i)
            ):
                image[i] = c
                used[c] = True
                if extend(i + 1):
                    return True
                used[c] = False
        image[i] = -1
        return False

    return tuple(image) if extend(0) else None


# ---------------------------------------------------------------------------
# harness helpers


def random_generating_set(G, rng, size=2, max_size=16):
    """Symmetrized random generating set of ``G``.

    Draws ``size`` non-identity elements, then keeps drawing one more until
    they generate (groups needing more than ``size`` generators are fine).
    """
    if G.order == 1:
        raise ValueError("trivial group has no generating set without the identity")
    picks = [rng.randrange(1, G.order) for _ in range(size)]
    while subgroup_from_generators(G, picks).order != G.order:
        if len(picks) >= max_size:
            picks = [rng.randrange(1, G.order) for _ in range(size)]
            continue
        picks.append(rng.randrange(1, G.order))
    return symmetrize(G, picks)


def random_generating_sets(G, count, seed, size=2):
    rng = random.Random(seed)
    return [random_generating_set(G, rng, size) for _ in range(count)]


def compare_quotients(G, H1, H2, S):
    g1 = schreier_quotient(G, H1, S)
    g2 = schreier_quotient(G, H2, S)
    return isospectral_verdict(g1, g2), zeta_verdict(g1, g2)


def find_spectral_refutation(G, H1, H2, seed=0, tries=10, size=2):
    """First of ``tries`` seeded generating sets whose quotients are not isospectral."""
    for S in random_generating_sets(G, tries, seed, size):
        report, _ = compare_quotients(G, H1, H2, S)
        if not report.equal:
            return S, report
    return None

import warnings

import numpy as np
import pytest

import oracles
from conftest import POSITIVE, triple
from sunada import linalg
from sunada.errors import (
    BasisMismatch,
    IdentityInGeneratingSet,
    NotSymmetric,
    RegularityMismatch,
    TooLarge,
)
from sunada.perm_core import closure, left_cosets, parse_cycles, subgroup_from_generators
from sunada.spectral import (
    _graph,
    cayley_graph,
    coset_adjacency,
    find_spectral_refutation,
    float_spectrum,
    graphs_isomorphic,
    ihara_matrix,
    ihara_zeta_poly,
    isospectral_verdict,
    laplacian_charpoly,
    orbit_quotient,
    random_generating_sets,
    right_cosets,
    right_to_left_coset_map,
    schreier_quotient,
    symmetrize,
    verify_transplantation_on_graphs,
    zeta_verdict,
)
from sunada.transplant import Intertwiner, find_invertible_intertwiner, intertwiner_basis


def cyclic(n):
    return closure([parse_cycles("(" + " ".join(str(i + 1) for i in range(n)) + ")", n)])


def s3():
    return closure([parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)])


def gens(G, *texts):
    return symmetrize(G, [G.index(parse_cycles(t, G.degree)) for t in texts])


def strip(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


# -- Cayley graphs ---------------------------------------------------------


def test_cayley_z3_is_triangle():
    G = cyclic(3)
    g = cayley_graph(G, gens(G, "(1 2 3)"))
    assert g.n == 3 and g.generator_count == 2
    assert np.array_equal(g.adj, np.ones((3, 3), dtype=int) - np.eye(3, dtype=int))
    assert g.is_regular()


def test_cayley_s3_transpositions_is_hexagon():
    G = s3()
    g = cayley_graph(G, gens(G, "(1 2)", "(2 3)"))
    assert g.generator_count == 2 and g.is_regular()
    assert (g.adj.sum(axis=1) == 2).all() and np.array_equal(g.adj, g.adj.T)
    # a single 6-cycle: connected, 2-regular, 6 vertices
    seen, stack = {0}, [0]
    while stack:
        x = stack.pop()
        for y in np.flatnonzero(g.adj[x]):
            if int(y) not in seen:
                seen.add(int(y))
                stack.append(int(y))
    assert len(seen) == 6


def test_cayley_all_elements_is_complete():
    G = s3()
    g = cayley_graph(G, list(range(1, 6)))
    assert np.array_equal(g.adj, np.ones((6, 6), dtype=int) - np.eye(6, dtype=int))


def test_generating_set_errors():
    G = s3()
    with pytest.raises(IdentityInGeneratingSet):
        cayley_graph(G, [0, G.index(parse_cycles("(1 2)", 3))])
    with pytest.raises(NotSymmetric):
        cayley_graph(G, [G.index(parse_cycles("(1 2 3)", 3))])
    with pytest.warns(UserWarning):
        cayley_graph(G, gens(G, "(1 2)"))


# -- Schreier quotients ----------------------------------------------------


def test_quotient_by_trivial_is_cayley():
    G = s3()
    S = gens(G, "(1 2)", "(1 2 3)")
    assert schreier_quotient(G, subgroup_from_generators(G, []), S) == cayley_graph(G, S)


def test_quotient_by_whole_group_is_loops():
    G = s3()
    S = gens(G, "(1 2)", "(1 2 3)")
    q = schreier_quotient(G, subgroup_from_generators(G, G.generator_indices), S)
    assert q.n == 1 and q.adj.tolist() == [[len(S)]]
    assert laplacian_charpoly(q) == [0, 1]


def test_gl32_quotients_shape(gl32):
    for H in (gl32.H1, gl32.H2):
        q = schreier_quotient(gl32.G, H, gl32.S)
        assert q.n == 7 and q.generator_count == 4 and q.is_regular()
        assert np.array_equal(q.adj, q.adj.T)


@pytest.mark.parametrize("name", POSITIVE + ["s4"])
def test_orbit_quotient_matches_schreier(name):
    t = triple(name)
    cay = cayley_graph(t.G, t.S)
    for H in (t.H1, t.H2):
        assert orbit_quotient(cay, t.G, H) == schreier_quotient(t.G, H, t.S)


@pytest.mark.parametrize("name", POSITIVE + ["s4"])
def test_coset_adjacency_agrees_with_right_cosets(name):
    t = triple(name)
    for X in (t.X1, t.X2):
        q = schreier_quotient(t.G, X.subgroup, t.S)
        A = coset_adjacency(X, t.S)
        m = right_to_left_coset_map(t.G, X)
        assert sorted(m) == list(range(q.n))
        for i in range(q.n):
            for j in range(q.n):
                assert q.adj[i, j] == A[m[j], m[i]]


def test_right_cosets_partition(gl32):
    coset_of, reps = right_cosets(gl32.G, gl32.H1)
    assert len(reps) == 7 and reps[0] == 0
    assert sorted(np.bincount(coset_of).tolist()) == [24] * 7


# -- exact polynomials -----------------------------------------------------


def test_charpoly_single_vertex():
    assert laplacian_charpoly(_graph([[0]], 0)) == [0, 1]


def test_charpoly_triangle():
    G = cyclic(3)
    g = cayley_graph(G, gens(G, "(1 2 3)"))
    # eigenvalues 0, 3, 3
    assert laplacian_charpoly(g) == oracles.poly_mul(oracles.poly_mul([0, 1], [-3, 1]), [-3, 1])


def test_charpoly_disjoint_union_is_product():
    tri = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    adj = np.zeros((6, 6), dtype=int)
    adj[:3, :3] = tri
    adj[3:, 3:] = tri
    g = _graph(adj, 2)
    single = laplacian_charpoly(_graph(tri, 2))
    assert laplacian_charpoly(g) == oracles.poly_mul(single, single)


@pytest.mark.parametrize("name", POSITIVE + ["s4"])
def test_charpoly_matches_faddeev(name):
    t = triple(name)
    for H in (t.H1, t.H2):
        q = schreier_quotient(t.G, H, t.S)
        assert laplacian_charpoly(q) == oracles.charpoly_faddeev(q.laplacian.tolist())


def test_ihara_single_vertex_no_edges():
    assert strip(ihara_zeta_poly(_graph([[0]], 0))) == [1, 0, -1]


def test_ihara_triangle():
    tri = _graph([[0, 1, 1], [1, 0, 1], [1, 1, 0]], 2)
    a = oracles.poly_mul([1, -1], [1, -1])
    b = oracles.poly_mul([1, 1, 1], [1, 1, 1])
    assert strip(ihara_zeta_poly(tri)) == oracles.poly_mul(a, b)


def test_ihara_evaluation_at_rational_point(gl32):
    from fractions import Fraction

    q = schreier_quotient(gl32.G, gl32.H1, gl32.S)
    u = Fraction(1, 2)
    assert oracles.det_fraction(ihara_matrix(q, u)) == linalg.poly_eval(ihara_zeta_poly(q), u)


def test_zero_eigenvalue_multiplicity_counts_components():
    G = s3()
    S = gens(G, "(1 2)")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        g = cayley_graph(G, S)
    p = laplacian_charpoly(g)
    zeros = next(i for i, c in enumerate(p) if c != 0)
    assert zeros == 3
    assert sum(abs(x) < 1e-9 for x in float_spectrum(g)) == 3


def test_regularity_mismatch():
    a = _graph([[0, 1], [1, 0]], 1)
    b = _graph([[0, 2], [2, 0]], 2)
    with pytest.raises(RegularityMismatch):
        isospectral_verdict(a, b)


# -- Sunada property -------------------------------------------------------


@pytest.mark.parametrize("name", POSITIVE)
def test_sunada_on_random_generating_sets(name):
    t = triple(name)
    for S in random_generating_sets(t.G, 20, seed=0):
        g1 = schreier_quotient(t.G, t.H1, S)
        g2 = schreier_quotient(t.G, t.H2, S)
        assert isospectral_verdict(g1, g2).equal
        assert zeta_verdict(g1, g2).equal


def test_s4_refutation(s4):
    found = find_spectral_refutation(s4.G, s4.H1, s4.H2, seed=0, tries=10)
    assert found is not None
    S, report = found
    assert not report.equal
    assert report.charpoly1 == tuple(
        oracles.charpoly_faddeev(schreier_quotient(s4.G, s4.H1, S).laplacian.tolist())
    )


def test_s4_default_generators_refute(s4):
    g1 = schreier_quotient(s4.G, s4.H1, s4.S)
    g2 = schreier_quotient(s4.G, s4.H2, s4.S)
    assert not isospectral_verdict(g1, g2).equal


@pytest.mark.parametrize("name", POSITIVE)
def test_graph_transplantation(name):
    t = triple(name)
    S = find_invertible_intertwiner(intertwiner_basis(t.G, t.X1, t.X2))
    for gs in [t.S] + random_generating_sets(t.G, 5, seed=3):
        assert verify_transplantation_on_graphs(t.G, t.H1, t.H2, gs, S)
    # corrupted intertwiner: one entry bumped
    M = S.matrix.copy()
    M[0, 0] += 1
    bad = Intertwiner(S.basis, S.phi, M, None)
    assert not verify_transplantation_on_graphs(t.G, t.H1, t.H2, t.S, bad)


def test_graph_transplantation_rejects_wrong_subgroups(gl32):
    S = find_invertible_intertwiner(intertwiner_basis(gl32.G, gl32.X1, gl32.X2))
    with pytest.raises(BasisMismatch):
        verify_transplantation_on_graphs(gl32.G, gl32.H2, gl32.H1, gl32.S, S)


# -- isomorphism and export ------------------------------------------------


def test_isomorphic_to_itself(gl32):
    q = schreier_quotient(gl32.G, gl32.H1, gl32.S)
    assert graphs_isomorphic(q, q) == tuple(range(7))


def test_triangle_vs_path():
    tri = _graph([[0, 1, 1], [1, 0, 1], [1, 1, 0]], 2)
    path = _graph([[1, 1, 0], [1, 0, 1], [0, 1, 1]], 2)
    assert graphs_isomorphic(tri, path) is None


def test_isomorphism_witness_is_valid(gl32, affine8):
    for t in (gl32, affine8):
        g1 = schreier_quotient(t.G, t.H1, t.S)
        g2 = schreier_quotient(t.G, t.H2, t.S)
        w = graphs_isomorphic(g1, g2)
        if w is not None:
            P = np.zeros((g1.n, g1.n), dtype=int)
            P[list(w), range(g1.n)] = 1
            assert np.array_equal(P @ g1.adj @ P.T, g2.adj)
    # frozen outcomes for the catalog generating sets
    assert graphs_isomorphic(
        schreier_quotient(gl32.G, gl32.H1, gl32.S), schreier_quotient(gl32.G, gl32.H2, gl32.S)
    ) is not None
    assert graphs_isomorphic(
        schreier_quotient(affine8.G, affine8.H1, affine8.S),
        schreier_quotient(affine8.G, affine8.H2, affine8.S),
    ) is None


def test_isomorphism_size_cap(affine8):
    cay = cayley_graph(affine8.G, affine8.S)
    with pytest.raises(TooLarge):
        graphs_isomorphic(cay, cay)


def test_dot_export(gl32):
    q = schreier_quotient(gl32.G, gl32.H1, gl32.S)
    dot = q.to_dot("Q")
    assert dot.startswith("graph Q {") and dot.rstrip().endswith("}")
    nodes = [ln for ln in dot.splitlines() if "[label=" in ln and "--" not in ln]
    edges = [ln for ln in dot.splitlines() if "--" in ln]
    assert len(nodes) == 7
    # 7 vertices of degree 4: 14 edges counted with multiplicity (a loop counts once per generator)
    total = 0
    for ln in edges:
        i, j = (int(x) for x in ln.split("[")[0].split("--"))
        m = int(ln.split('"')[1])
        total += m if i != j else m / 2
    assert total == 14

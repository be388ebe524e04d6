"""Intertwiners between permutation modules and the transplantation map.

For a Gassmann pair ``(G; H1, H2)`` the permutation modules ``Q[G/H1]`` and
``Q[G/H2]`` are isomorphic.  G-equivariant maps between them form a space
with one 0/1 basis matrix per G-orbit on ``G/H2 x G/H1`` (equivalently per
double coset ``H2 g H1``).  An invertible integer combination ``S`` of these
induces, for every G-module ``V``, an isomorphism ``V^H1 -> V^H2`` that
commutes with every G-equivariant endomorphism of ``V``.

Matrices here are exact (object arrays of ints / Fractions) except in
:func:`orthogonalize`, which works in floating point.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import (
    BasisMismatch,
    DeltaNotEquivariant,
    NoConvergence,
    NoInvertibleFound,
    NotInvariant,
    RankDeficient,
)
from .perm_core import double_coset_labels

# ---------------------------------------------------------------------------
# G-modules


class GModule:
    """A finite-dimensional representation of a :class:`GroupTable`.

    Either ``matrices`` (one exact ``dim x dim`` matrix per element index) or
    ``point_action`` (``|G| x dim`` integer table: ``rho(g) e_j = e_{action[g, j]}``)
    must be given.  Permutation modules use the second form, which keeps the
    regular module of a group of order a few hundred cheap.
    """

    def __init__(self, group, dim, matrices=None, point_action=None):
        if (matrices is None) == (point_action is None):
            raise ValueError("give exactly one of matrices / point_action")
        self.group = group
        self.dim = int(dim)
        if point_action is not None:
            point_action = np.asarray(point_action, dtype=np.int64)
            if point_action.shape != (group.order, self.dim):
                raise ValueError("point_action must have shape (|G|, dim)")
            self._perm = point_action
            self._mats = None
        else:
            mats = [linalg.as_exact(m) for m in matrices]
            if len(mats) != group.order or any(m.shape != (self.dim, self.dim) for m in mats):
                raise ValueError("need one dim x dim matrix per group element")
            self._perm = None
            self._mats = mats

    @property
    def is_permutation(self):
        return self._perm is not None

    def rho(self, g):
        if self._mats is not None:
            return self._mats[g].copy()
        M = linalg.zeros((self.dim, self.dim))
        M[self._perm[g], np.arange(self.dim)] = 1
        return M

    def act(self, g, M):
        """``rho(g) @ M`` for a vector or a matrix with ``dim`` rows."""
        M = np.asarray(M, dtype=object)
        if self._mats is not None:
            return self._mats[g].dot(M)
        out = np.empty_like(M)
        out[self._perm[g]] = M
        return out

    def act_right(self, M, g):
        """``M @ rho(g)``."""
        M = np.asarray(M, dtype=object)
        if self._mats is not None:
            return M.dot(self._mats[g])
        return M[:, self._perm[g]]

    def group_sum(self, coeffs, M):
        """``sum_g coeffs[g] rho(g) @ M`` with ``coeffs`` indexed by element."""
        M = np.asarray(M, dtype=object)
        acc = linalg.zeros(M.shape)
        for g, c in enumerate(coeffs):
            if c:
                acc = acc + c * self.act(g, M)
        return acc

    def check(self):
        """Exact check of the homomorphism property on generators."""
        G = self.group
        I = linalg.identity(self.dim)
        if not np.array_equal(self.rho(0), I):
            return False
        for s in G.generator_indices:
            for x in range(G.order):
                lhs = self.rho(int(G.mul[s, x]))
                if not np.array_equal(lhs, self.act(s, self.rho(x))):
                    return False
        return True


def permutation_module(X):
    """``Q[G/H]`` with basis the coset indicators of a :class:`CosetSpace`."""
    return GModule(X.group, len(X.reps), point_action=X.act)


def regular_module(G):
    """``Q[G]`` with the left regular action ``e_x -> e_{gx}``."""
    return GModule(G, G.order, point_action=G.mul)


def trivial_module(G):
    return GModule(G, 1, point_action=np.zeros((G.order, 1), dtype=np.int64))


def module_from_generators(G, generator_matrices):
    """Extend matrices given on ``G.generator_indices`` to all of ``G``.

    Raises ``ValueError`` when the matrices do not define a representation.
    """
    gens = list(G.generator_indices)
    mats = [linalg.as_exact(m) for m in generator_matrices]
    if len(mats) != len(gens):
        raise ValueError("one matrix per group generator expected")
    dim = mats[0].shape[0]
    rho = [None] * G.order
    rho[0] = linalg.identity(dim)
    queue = [0]
    while queue:
        x = queue.pop()
        for s, Ms in zip(gens, mats):
            y = int(G.mul[s, x])
            My = Ms.dot(rho[x])
            if rho[y] is None:
                rho[y] = My
                queue.append(y)
            elif not np.array_equal(rho[y], My):
                raise ValueError("generator matrices violate a group relation")
    return GModule(G, dim, matrices=rho)


def invariant_projector(V, H):
    """``(1/|H|) sum_{h in H} rho(h)``: the projection onto ``V^H``."""
    P = linalg.zeros((V.dim, V.dim))
    I = linalg.identity(V.dim)
    for h in H.member_indices:
        P = P + V.act(h, I)
    return linalg.normalize(P * Fraction(1, H.order))


def _apply_projector(V, H, M):
    acc = linalg.zeros(np.shape(M))
    for h in H.member_indices:
        acc = acc + V.act(h, M)
    return linalg.normalize(acc * Fraction(1, H.order))


def invariant_basis(V, H):
    """Canonical basis of ``V^H`` (columns) and its pivot rows.

    Obtained by exact row reduction of the transposed projector; the
    coordinates of ``w`` in ``V^H`` are ``w[pivots]``.
    """
    return linalg.column_space_basis(invariant_projector(V, H))


def _coordinates(B, pivots, W):
    """Coordinates of the columns of ``W`` in basis ``B``; exact membership check."""
    W = np.asarray(W, dtype=object)
    C = W[list(pivots)]
    if not np.array_equal(linalg.normalize(B.dot(C)), linalg.normalize(W)):
        raise RankDeficient("vector does not lie in the invariant subspace")
    return C


# ---------------------------------------------------------------------------
# intertwiners between permutation modules


@dataclass(frozen=True, eq=False)
class IntertwinerBasis:
    X1: object
    X2: object
    matrices: tuple  # one [G:H2] x [G:H1] 0/1 int matrix per orbit
    orbit_to_double_coset: tuple
    double_coset_of: np.ndarray  # element -> id in H2\G/H1

    def __len__(self):
        return len(self.matrices)

    def combine(self, phi):
        """``sum_d phi[d] M_d`` with ``phi`` indexed by double coset."""
        n2, n1 = len(self.X2.reps), len(self.X1.reps)
        M = np.zeros((n2, n1), dtype=object)
        M.fill(0)
        for o, Mo in enumerate(self.matrices):
            c = int(phi[self.orbit_to_double_coset[o]])
            if c:
                M = M + c * Mo.astype(object)
        return M


@dataclass(frozen=True, eq=False)
class Intertwiner:
    basis: IntertwinerBasis
    phi: tuple
    matrix: np.ndarray
    det: int | None

    def to_json(self):
        return {
            "phi": [int(p) for p in self.phi],
            "matrix": [[int(x) for x in row] for row in self.matrix],
            "det": None if self.det is None else str(self.det),
        }


def intertwiner_basis(G, X1, X2):
    """Indicator matrices of the G-orbits on ``G/H2 x G/H1``.

    Orbits are found by a closure under the generators of ``G`` and ordered by
    their smallest ``(row, column)`` pair; each is then matched with the
    double coset ``H2 a^-1 b H1`` of any of its pairs ``(aH2, bH1)``.
    """
    if X1.group is not G or X2.group is not G:
        raise BasisMismatch("coset spaces belong to a different group table")
    n1, n2 = len(X1.reps), len(X2.reps)
    label = np.full((n2, n1), -1, dtype=np.int64)
    gens = list(G.generator_indices)
    act1, act2 = X1.act, X2.act
    count = 0
    for y in range(n2):
        for x in range(n1):
            if label[y, x] >= 0:
                continue
            label[y, x] = count
            stack = [(y, x)]
            while stack:
                b, a = stack.pop()
                for s in gens:
                    pair = (int(act2[s, b]), int(act1[s, a]))
                    if label[pair] < 0:
                        label[pair] = count
                        stack.append(pair)
            count += 1
    dc = double_coset_labels(G, X2.subgroup, X1.subgroup)
    matrices = []
    to_dc = []
    for o in range(count):
        M = (label == o).astype(np.int64)
        M.setflags(write=False)
        matrices.append(M)
        y, x = map(int, np.argwhere(label == o)[0])
        a, b = X2.reps[y], X1.reps[x]
        to_dc.append(int(dc[G.mul[G.inv[a], b]]))
    dc.setflags(write=False)
    return IntertwinerBasis(X1, X2, tuple(matrices), tuple(to_dc), dc)


def make_intertwiner(basis, phi):
    M = basis.combine(phi)
    det = linalg.bareiss_det(M) if M.shape[0] == M.shape[1] else None
    return Intertwiner(basis, tuple(int(p) for p in phi), M, det)


def _entry_order(c):
    """``0, 1, -1, 2, -2, ..., c, -c``: the alphabet of the lexicographic scan."""
    out = [0]
    for k in range(1, c + 1):
        out += [k, -k]
    return out


def _scan(m, max_norm):
    for c in range(1, max_norm + 1):
        for vec in itertools.product(_entry_order(c), repeat=m):
            if max(abs(v) for v in vec) == c:
                yield vec


def find_invertible_intertwiner(basis, max_norm=3, random_budget=64, seed=0, random_range=10):
    """Smallest-norm integer ``phi`` giving an invertible intertwiner.

    Scans ``phi`` with entries in ``[-c, c]`` for ``c = 1, ..., max_norm``,
    lexicographically within each ``c`` over the entry order
    ``0, 1, -1, 2, -2, ...`` (so positive multiples come first), then tries ``random_budget``
    seeded random vectors with entries in ``[-random_range, random_range]``.

    The determinant of ``sum phi_d M_d`` is a polynomial of degree ``[G:H]``
    in ``phi``.  If it vanishes on the whole grid ``[-c, c]^m`` with
    ``2c + 1 > [G:H]`` it vanishes identically, so failure of the scan is then
    a proof; the raised :class:`NoInvertibleFound` records this in its
    ``proved`` attribute.
    """
    n2, n1 = len(basis.X2.reps), len(basis.X1.reps)
    m = len(basis)
    if n1 != n2:
        err = NoInvertibleFound(f"index mismatch: {n1} vs {n2} cosets")
        err.proved = True
        raise err
    for phi in _scan(m, max_norm):
        M = basis.combine(phi)
        d = linalg.bareiss_det(M)
        if d != 0:
            return Intertwiner(basis, tuple(phi), M, d)
    rng = random.Random(seed)
    for _ in range(random_budget):
        phi = tuple(rng.randint(-random_range, random_range) for _ in range(m))
        M = basis.combine(phi)
        d = linalg.bareiss_det(M)
        if d != 0:
            return Intertwiner(basis, phi, M, d)
    err = NoInvertibleFound(
        f"no invertible intertwiner among phi with max-norm <= {max_norm} "
        f"or {random_budget} random trials"
    )
    err.proved = 2 * max_norm + 1 > n1
    raise err


def is_equivariant(S):
    """Exact check ``S rho1(g) == rho2(g) S`` on the generators."""
    X1, X2 = S.basis.X1, S.basis.X2
    M = S.matrix
    for g in X1.group.generator_indices:
        permuted = np.empty_like(M)
        permuted[np.ix_(X2.act[g], X1.act[g])] = M
        if not np.array_equal(permuted, M):
            return False
    return True


# ---------------------------------------------------------------------------
# Frobenius reciprocity and the transplantation map


def frobenius_embed(V, X, v):
    """Send ``v in V^H`` to ``sum_c rho(rep_c) v (x) e_c``.

    The tensor is returned as a ``dim x [G:H]`` matrix whose column ``c`` is
    the ``V``-component at coset ``c``.
    """
    v = linalg.as_exact(v).reshape(-1)
    if not np.array_equal(_apply_projector(V, X.subgroup, v), linalg.normalize(v)):
        raise NotInvariant("vector is not fixed by the subgroup")
    W = linalg.zeros((V.dim, len(X.reps)))
    for c, r in enumerate(X.reps):
        W[:, c] = V.act(r, v)
    return W


def tensor_act(V, X, g, W):
    """Action of ``g`` on ``V (x) Q[G/H]`` in the matrix layout above."""
    out = np.empty_like(W)
    out[:, X.act[g]] = V.act(g, W)
    return out


@dataclass(frozen=True, eq=False)
class Transplantation:
    """Matrix of ``V^H1 -> V^H2`` in the canonical invariant bases."""

    matrix: np.ndarray
    basis1: np.ndarray
    pivots1: tuple
    basis2: np.ndarray
    pivots2: tuple
    intertwiner: Intertwiner

    @property
    def rank(self):
        return linalg.rank(self.matrix)

    @property
    def dims(self):
        return self.basis1.shape[1], self.basis2.shape[1]


def operator_weights(S):
    """Per-element coefficient ``phi[double coset of g]`` of the operator form."""
    dc = S.basis.double_coset_of
    return [S.phi[int(d)] for d in dc]


def _check_subgroups(S, H1, H2):
    if S.basis.X1.subgroup != H1 or S.basis.X2.subgroup != H2:
        raise BasisMismatch("intertwiner was built for different subgroups")


def transplantation(V, H1, H2, S):
    """The operator ``v -> (1/|H1|) P_H2 sum_g phi(g) rho(g) v`` on ``V^H1``.

    Raises :class:`RankDeficient` unless the result is an isomorphism.
    """
    _check_subgroups(S, H1, H2)
    B1, piv1 = invariant_basis(V, H1)
    B2, piv2 = invariant_basis(V, H2)
    weights = operator_weights(S)
    W = V.group_sum(weights, B1) * Fraction(1, H1.order)
    W = _apply_projector(V, H2, linalg.normalize(W))
    T = _coordinates(B2, piv2, W)
    out = Transplantation(linalg.normalize(T), B1, tuple(piv1), B2, tuple(piv2), S)
    r1, r2 = B1.shape[1], B2.shape[1]
    if r1 != r2 or out.rank != r1:
        raise RankDeficient(f"transplantation has rank {out.rank}, dims {r1} -> {r2}")
    return out


def transplantation_composite(V, H1, H2, S):
    """The same map built as ``V^H1 -> [V(x)Q[G/H1]]^G -> [V(x)Q[G/H2]]^G -> V^H2``.

    The last arrow reads off the component at the trivial coset ``H2``.
    """
    _check_subgroups(S, H1, H2)
    X2 = S.basis.X2
    B1, piv1 = invariant_basis(V, H1)
    B2, piv2 = invariant_basis(V, H2)
    base = int(X2.coset_of[0])
    cols = []
    for j in range(B1.shape[1]):
        W1 = frobenius_embed(V, S.basis.X1, B1[:, j])
        W2 = W1.dot(S.matrix.T.astype(object))
        cols.append(W2[:, base])
    W = np.stack(cols, axis=1) if cols else linalg.zeros((V.dim, 0))
    T = _coordinates(B2, piv2, W)
    return Transplantation(linalg.normalize(T), B1, tuple(piv1), B2, tuple(piv2), S)


def restrict(Delta, basis, pivots):
    """Matrix of ``Delta`` on the invariant subspace spanned by ``basis``."""
    return linalg.normalize(_coordinates(basis, pivots, Delta.dot(basis)))


def commutes_with_group(V, Delta):
    Delta = linalg.as_exact(Delta)
    for g in V.group.generator_indices:
        if not np.array_equal(
            linalg.normalize(V.act(g, Delta)), linalg.normalize(V.act_right(Delta, g))
        ):
            return False
    return True


def verify_commutation(V, Delta, H1, H2, T):
    """Exact check that ``T`` intertwines ``Delta`` on ``V^H1`` and ``V^H2``."""
    Delta = linalg.as_exact(Delta)
    if not commutes_with_group(V, Delta):
        raise DeltaNotEquivariant("Delta does not commute with the group action")
    _check_subgroups(T.intertwiner, H1, H2)
    D1 = restrict(Delta, T.basis1, T.pivots1)
    D2 = restrict(Delta, T.basis2, T.pivots2)
    lhs = linalg.normalize(T.matrix.dot(D1))
    rhs = linalg.normalize(D2.dot(T.matrix))
    return bool(np.array_equal(lhs, rhs))


def class_sum(V, cls):
    """``sum_{g in C} rho(g)`` for a conjugacy class ``C`` (a central element)."""
    I = linalg.identity(V.dim)
    acc = linalg.zeros((V.dim, V.dim))
    for g in cls:
        acc = acc + V.act(g, I)
    return acc


# ---------------------------------------------------------------------------
# unitary refinement


def orthogonalize(S, tol=1e-12, max_iter=100):
    """Orthogonal polar factor of an invertible intertwiner.

    Newton iteration ``U <- (U + U^-T) / 2`` until ``||U^T U - I||_inf < tol``.
    Each iterate is a rational function of ``S`` built from transposes and
    inverses, so it stays equivariant for the (orthogonal) coset
    permutation matrices.
    """
    U = np.array(S.matrix, dtype=float) if isinstance(S, Intertwiner) else np.array(S, dtype=float)
    n = U.shape[0]
    if U.shape != (n, n):
        raise ValueError("orthogonalize needs a square matrix")
    I = np.eye(n)
    for _ in range(max_iter + 1):
        if np.linalg.norm(U.T @ U - I, np.inf) < tol:
            return U
        try:
            U = 0.5 * (U + np.linalg.inv(U).T)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence("matrix became singular during polar iteration") from exc
    raise NoConvergence(f"polar iteration did not reach tol={tol} in {max_iter} steps")


def orthogonality_residual(U):
    return float(np.linalg.norm(U.T @ U - np.eye(U.shape[0]), np.inf))


def equivariance_residual(U, basis):
    """``max_g ||U rho1(g) - rho2(g) U||_inf`` over the group generators."""
    X1, X2 = basis.X1, basis.X2
    worst = 0.0
    for g in X1.group.generator_indices:
        P1 = X1.permutation_matrix(g).astype(float)
        P2 = X2.permutation_matrix(g).astype(float)
        worst = max(worst, float(np.linalg.norm(U @ P1 - P2 @ U, np.inf)))
    return worst

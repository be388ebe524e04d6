from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from sunada import linalg


def int_matrices(max_n=6, bound=9):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n
        )
    )


def test_bareiss_small_cases():
    assert linalg.bareiss_det([[5]]) == 5
    assert linalg.bareiss_det([[0, 1], [1, 0]]) == -1
    assert linalg.bareiss_det([[1, 2], [2, 4]]) == 0
    assert linalg.bareiss_det(np.zeros((0, 0), dtype=object)) == 1


@given(int_matrices(max_n=5))
def test_bareiss_matches_leibniz(M):
    assert linalg.bareiss_det(M) == oracles.det_leibniz(M)


@settings(max_examples=40)
@given(int_matrices(max_n=9, bound=10**6))
def test_bareiss_big_entries_match_fraction_elimination(M):
    d = linalg.bareiss_det(M)
    assert isinstance(d, int)
    assert d == oracles.det_fraction(M)


def test_bareiss_rational():
    M = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 5)]]
    assert linalg.bareiss_det(M) == Fraction(1, 10) - Fraction(1, 12)


def test_bareiss_beyond_64_bits():
    M = [[2**40 + i * j for j in range(4)] for i in range(4)]
    M[0][0] += 1
    assert linalg.bareiss_det(M) == oracles.det_fraction(M)
    H = [[1 if i == j else 0 for j in range(20)] for i in range(20)]
    H[0][0] = 10**30
    assert linalg.bareiss_det(H) == 10**30


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=8))
def test_interpolate_roundtrip(coeffs):
    xs = list(range(len(coeffs)))
    ys = [linalg.poly_eval(coeffs, x) for x in xs]
    got = linalg.interpolate(xs, ys)
    want = list(coeffs)
    while len(want) > 1 and want[-1] == 0:
        want.pop()
    assert got == want


def test_interpolate_rejects_repeated_nodes():
    with pytest.raises(ValueError):
        linalg.interpolate([0, 0], [1, 2])


def test_rref_canonical():
    M = [[2, 4, 6], [1, 2, 3], [0, 1, 1]]
    R, piv = linalg.rref(M)
    assert piv == [0, 1]
    assert R.tolist() == [[1, 0, 1], [0, 1, 1]]
    assert linalg.rank(M) == 2


@given(int_matrices(max_n=5, bound=3))
def test_column_space_basis_coordinates(M):
    B, piv = linalg.column_space_basis(M)
    A = np.array(M, dtype=object)
    assert B.shape[1] == linalg.rank(A)
    # every column of M is B times its pivot entries
    assert np.array_equal(linalg.normalize(B.dot(A[piv])), A)


def test_poly_mul():
    assert linalg.poly_mul([1, 1], [1, -1]) == [1, 0, -1]

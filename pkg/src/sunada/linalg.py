"""Exact linear algebra over the integers and rationals.

Matrices are numpy arrays of ``dtype=object`` holding Python ``int`` or
``fractions.Fraction`` entries, so arithmetic never rounds.
"""

from fractions import Fraction

import numpy as np


def as_exact(M):
    """Copy ``M`` into an object array of Python ints / Fractions."""
    A = np.array(M, dtype=object)
    if A.ndim == 0:
        raise ValueError("expected an array, got a scalar")
    flat = A.reshape(-1)
    for k, x in enumerate(flat):
        if isinstance(x, (np.integer,)):
            flat[k] = int(x)
        elif isinstance(x, (float, np.floating)):
            raise TypeError("floating-point entry in exact matrix")
    return A


def identity(n):
    I = np.zeros((n, n), dtype=object)
    for i in range(n):
        I[i, i] = 1
    return I


def zeros(shape):
    Z = np.empty(shape, dtype=object)
    Z.fill(0)
    return Z


def bareiss_det(M):
    """Determinant of a square integer (or rational) matrix.

    Fraction-free Bareiss elimination: every intermediate quotient is exact,
    so integer input stays integer throughout.
    """
    A = [list(row) for row in np.asarray(M, dtype=object)]
    n = len(A)
    if n == 0:
        return 1
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for r in range(k + 1, n):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                v = akk * rowi[j] - aik * rowk[j]
                if isinstance(v, int):
                    rowi[j] = v // prev if v % prev == 0 else Fraction(v, prev)
                else:
                    rowi[j] = v / prev
            rowi[k] = 0
        prev = akk
    d = sign * A[n - 1][n - 1]
    if isinstance(d, Fraction) and d.denominator == 1:
        return d.numerator
    return d


def rref(M):
    """Reduced row echelon form over Q.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows and
    ``pivots[i]`` is the leading column of row ``i``.  Pivot columns are taken
    left to right, so the result is canonical for the row space.
    """
    A = [[Fraction(x) for x in row] for row in np.asarray(M, dtype=object)]
    if not A:
        return zeros((0, 0)), []
    nrows, ncols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        rowr = A[r]
        nz = [j for j in range(c, ncols) if rowr[j] != 0]
        for i in range(nrows):
            if i != r:
                f = A[i][c]
                if f != 0:
                    rowi = A[i]
                    for j in nz:
                        rowi[j] -= f * rowr[j]
        pivots.append(c)
        r += 1
    R = np.empty((r, ncols), dtype=object)
    for i in range(r):
        for j in range(ncols):
            R[i, j] = _normalize(A[i][j])
    return R, pivots


def rank(M):
    M = np.asarray(M, dtype=object)
    if M.size == 0:
        return 0
    return len(rref(M)[1])


def column_space_basis(M):
    """Canonical basis of the column space of ``M``.

    Columns of the returned matrix are the rows of ``rref(M^T)``; the
    coordinates of any vector ``w`` of the column space in this basis are
    simply ``w[pivots]``.
    """
    M = np.asarray(M, dtype=object)
    R, pivots = rref(M.T)
    if R.shape[0] == 0:
        return zeros((M.shape[0], 0)), []
    return R.T.copy(), pivots


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def normalize(M):
    """Turn integral Fractions back into ints, entrywise."""
    A = np.array(M, dtype=object)
    flat = A.reshape(-1)
    for k, x in enumerate(flat):
        flat[k] = _normalize(x)
    return A


def interpolate(xs, ys):
    """Exact coefficients (low degree first) of the interpolating polynomial.

    Newton divided differences in rational arithmetic, then expansion to the
    monomial basis.  Integral coefficients come back as ``int``.
    """
    xs = [Fraction(x) for x in xs]
    coef = [Fraction(y) for y in ys]
    n = len(xs)
    if len(set(xs)) != n:
        raise ValueError("interpolation nodes must be distinct")
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # Horner-style expansion of the Newton form
    poly = [Fraction(0)] * n
    poly[0] = coef[n - 1]
    deg = 0
    for i in range(n - 2, -1, -1):
        # poly <- poly * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * n
        for k in range(deg + 1):
            new[k + 1] += poly[k]
            new[k] -= xs[i] * poly[k]
        new[0] += coef[i]
        poly = new
        deg += 1
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return [_normalize(c) for c in poly]


def poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return _normalize(acc) if isinstance(acc, Fraction) else acc


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out

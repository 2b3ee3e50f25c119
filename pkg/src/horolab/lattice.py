"""Exact linear algebra over Q plus a small integer LLL.

The kernel computation is plain Gaussian elimination on Fractions: the
matrices here are desk-sized (tens of rows) and exactness matters more
than asymptotics.  The LLL reduction (delta = 0.99) is used only to pick
short kernel vectors, so a simple textbook implementation with exact
rational Gram-Schmidt is enough.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .errors import NoDataError


def rational_kernel_basis(rows, ncols):
    """Kernel basis of the ncols-column matrix given by `rows`.

    Returns a list of Fraction vectors spanning the kernel; echelon order
    makes the result deterministic.
    """
    mat = [[Fraction(v) for v in row] for row in rows]
    for row in mat:
        if len(row) != ncols:
            raise NoDataError("ragged constraint matrix")
    pivots = []  # (row, col)
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        mat[r] = [v / pv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append((r, c))
        r += 1
        if r == len(mat):
            break
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for (ri, ci) in pivots:
            vec[ci] = -mat[ri][f]
        basis.append(vec)
    return basis


def primitive_integer_vector(vec):
    """Scale a rational vector to coprime integers (sign preserved)."""
    den = 1
    for q in vec:
        q = Fraction(q)
        den = den * q.denominator // int_gcd(den, q.denominator)
    ints = [int(Fraction(q) * den) for q in vec]
    g = 0
    for v in ints:
        g = int_gcd(g, abs(v))
    if g == 0:
        return [0] * len(ints)
    return [v // g for v in ints]


def _gram_schmidt(basis):
    """Exact GS data: mu coefficients and squared norms of the orthogonal set."""
    n = len(basis)
    mu = [[Fraction(0)] * n for _ in range(n)]
    ortho = []
    norms2 = []
    for i in range(n):
        vec = [Fraction(v) for v in basis[i]]
        for j in range(i):
            if norms2[j] == 0:
                mu[i][j] = Fraction(0)
                continue
            dot = sum(Fraction(a) * b for a, b in zip(basis[i], ortho[j]))
            mu[i][j] = dot / norms2[j]
            vec = [a - mu[i][j] * b for a, b in zip(vec, ortho[j])]
        ortho.append(vec)
        norms2.append(sum(v * v for v in vec))
    return mu, norms2


def lll_reduce(basis, delta=Fraction(99, 100)):
    """Lenstra-Lenstra-Lovasz reduction of an integer basis.

    Rows are independent integer vectors; returns a reduced basis of the
    same lattice.  Gram-Schmidt data is recomputed after each swap, which
    is quadratic overkill but exact and fine at this scale.
    """
    B = [[int(v) for v in row] for row in basis]
    n = len(B)
    if n <= 1:
        return B
    k = 1
    mu, norms2 = _gram_schmidt(B)
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q != 0:
                B[k] = [a - q * b for a, b in zip(B[k], B[j])]
                mu, norms2 = _gram_schmidt(B)
        if norms2[k] >= (delta - mu[k][k - 1] ** 2) * norms2[k - 1]:
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            mu, norms2 = _gram_schmidt(B)
            k = max(k - 1, 1)
    return B


def integer_matrix_rank(rows):
    """Rank over Q of an integer (or rational) matrix."""
    if not rows:
        return 0
    work = [[Fraction(v) for v in row] for row in rows]
    ncols = len(work[0])
    rank = 0
    for c in range(ncols):
        pivot = None
        for i in range(rank, len(work)):
            if work[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        pv = work[rank][c]
        for i in range(rank + 1, len(work)):
            if work[i][c] != 0:
                f = work[i][c] / pv
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank

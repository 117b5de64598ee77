"""Exact rational linear algebra on tuples of Fractions.

Everything in this package computes over arbitrary-precision rationals;
no floating point is used anywhere.  Vectors are tuples of ``Fraction``
and matrices are tuples of row tuples.  The integer algorithms (Hermite
and Smith normal forms) return transform matrices so that callers can
recover coset generators and kernels, not just the forms themselves.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Iterable, Sequence

Vec = tuple[Q, ...]
Mat = tuple[Vec, ...]


def vec(xs: Iterable) -> Vec:
    return tuple(Q(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(vec(r) for r in rows)


def zero_vec(n: int) -> Vec:
    return (Q(0),) * n


def identity(n: int) -> Mat:
    return tuple(tuple(Q(1 if i == j else 0) for j in range(n)) for i in range(n))


def dot(u: Sequence[Q], v: Sequence[Q]) -> Q:
    return sum((a * b for a, b in zip(u, v)), Q(0))


def vec_add(u: Sequence[Q], v: Sequence[Q]) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[Q], v: Sequence[Q]) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(u: Sequence[Q], c) -> Vec:
    c = Q(c)
    return tuple(c * a for a in u)


def mat_vec(M: Mat, v: Sequence[Q]) -> Vec:
    """M @ v with v a column vector."""
    return tuple(dot(row, v) for row in M)


def vec_mat(v: Sequence[Q], M: Mat) -> Vec:
    """v @ M with v a row vector."""
    n = len(M[0]) if M else 0
    return tuple(sum((v[i] * M[i][j] for i in range(len(M))), Q(0)) for j in range(n))


def mat_mul(A: Mat, B: Mat) -> Mat:
    return tuple(vec_mat(row, B) for row in A)


def transpose(M: Mat) -> Mat:
    if not M:
        return ()
    return tuple(tuple(M[i][j] for i in range(len(M))) for j in range(len(M[0])))


def is_zero(v: Sequence[Q]) -> bool:
    return all(x == 0 for x in v)


def inverse(M: Mat) -> Mat:
    """Gauss-Jordan inverse of a square rational matrix."""
    n = len(M)
    aug = [list(M[i]) + [Q(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = Q(1) / aug[col][col]
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def solve_in_rows(rows: Mat, v: Sequence[Q]) -> Vec | None:
    """Solve x @ rows = v for rational x, or return None if v is not in the row span.

    The rows need not be square but must be linearly independent.
    """
    if not rows:
        return () if is_zero(v) else None
    m, n = len(rows), len(rows[0])
    # Row-reduce [rows | I] so membership and coordinates come out together.
    aug = [list(rows[i]) + [Q(1 if i == j else 0) for j in range(m)] for i in range(m)]
    tgt = list(v) + [Q(0)] * m
    r = 0
    pivots: list[int] = []
    for col in range(n):
        piv = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv_p = Q(1) / aug[r][col]
        aug[r] = [x * inv_p for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    if r < m:
        raise ValueError("rows are linearly dependent")
    x = [Q(0)] * m
    res = list(v)
    for i, col in enumerate(pivots):
        c = res[col]
        if c != 0:
            x_row = aug[i]
            for j in range(n):
                res[j] -= c * x_row[j]
            for j in range(m):
                x[j] += c * x_row[n + j]
    if not is_zero(res):
        return None
    return tuple(x)


# ---------------------------------------------------------------------------
# Integer normal forms.


def _int_rows(M: Iterable[Iterable]) -> list[list[int]]:
    out = []
    for row in M:
        r = []
        for x in row:
            q = Q(x)
            if q.denominator != 1:
                raise ValueError("integer matrix expected")
            r.append(q.numerator)
        out.append(r)
    return out


def hnf(rows: Iterable[Iterable[int]]) -> list[list[int]]:
    """Canonical row Hermite normal form of an integer matrix.

    Returns the nonzero rows: pivots positive, entries above each pivot
    reduced into [0, pivot).  Equal lattices give equal output.
    """
    A = _int_rows(rows)
    if not A:
        return []
    m, n = len(A), len(A[0])
    r = 0
    piv_cols: list[int] = []
    for col in range(n):
        piv = next((i for i in range(r, m) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            while A[i][col] != 0:
                q = A[r][col] // A[i][col]
                A[r] = [a - q * b for a, b in zip(A[r], A[i])]
                A[r], A[i] = A[i], A[r]
        if A[r][col] < 0:
            A[r] = [-x for x in A[r]]
        piv_cols.append(col)
        r += 1
        if r == m:
            break
    A = A[:r]
    # Reduce entries above the pivots.  For a fixed row, sweeping the
    # pivot rows below it in increasing pivot-column order is stable:
    # each pivot row is zero left of its own pivot.
    for j in range(r - 1):
        for i in range(j + 1, r):
            col = piv_cols[i]
            q = A[j][col] // A[i][col]
            if q:
                A[j] = [a - q * b for a, b in zip(A[j], A[i])]
    return A


def snf(M: Iterable[Iterable[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form with transforms: returns (D, U, V) with U @ M @ V = D.

    U and V are unimodular; D is diagonal with d1 | d2 | ... >= 0.
    """
    A = _int_rows(M)
    m = len(A)
    n = len(A[0]) if A else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_sub(i, j, q):  # row_i -= q * row_j
        A[i] = [a - q * b for a, b in zip(A[i], A[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_sub(i, j, q):  # col_i -= q * col_j
        for row in A:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(m, n):
        # Pick the nonzero entry of least magnitude in the remaining block.
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        row_swap(t, i)
        col_swap(t, j)
        if A[t][t] < 0:
            row_neg(t)
        dirty = False
        for i in range(t + 1, m):
            if A[i][t] != 0:
                q = A[i][t] // A[t][t]
                row_sub(i, t, q)
                if A[i][t] != 0:
                    dirty = True
        for j in range(t + 1, n):
            if A[t][j] != 0:
                q = A[t][j] // A[t][t]
                col_sub(j, t, q)
                if A[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # Enforce divisibility of the rest of the block by the pivot.
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % A[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_sub(t, offender, -1)
            continue
        t += 1
    D = [[A[i][j] if i == j else 0 for j in range(n)] for i in range(m)]
    return D, U, V


def integer_kernel(M: Mat) -> list[Vec]:
    """Basis of the lattice {x in Z^n : M @ x = 0} for a rational matrix M.

    The output basis is saturated (it spans every integer point of the
    rational kernel).
    """
    if not M:
        return []
    n = len(M[0])
    # Row scaling does not change the kernel; clear denominators per row.
    rows = []
    for row in M:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        rows.append([int(x * lcm) for x in row])
    D, _U, V = snf(rows)
    rank = sum(1 for i in range(min(len(D), n)) if D[i][i] != 0)
    basis = []
    for j in range(rank, n):
        basis.append(tuple(Q(V[i][j]) for i in range(n)))
    return basis


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)

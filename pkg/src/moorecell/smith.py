"""Smith normal form over the integers with unimodular transforms."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SNF:
    U: tuple
    D: tuple
    V: tuple
    rank: int
    divisors: tuple

    @property
    def has_zero_divisor(self) -> bool:
        return any(d == 0 for d in self.divisors)


def _identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b) -> list:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)]
            for i in range(len(a))]


def smith_normal_form(m) -> SNF:
    """Return U, D, V with U*m*V = D diagonal, d_i | d_{i+1}, U and V unimodular.

    ``divisors`` lists the first min(rows, cols) diagonal entries (zeros
    included); ``rank`` counts the nonzero ones.

    >>> smith_normal_form([[2, 0], [0, 3]]).divisors
    (1, 6)
    """
    A = [list(map(int, row)) for row in m]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if any(len(r) != cols for r in A):
        raise ValueError("ragged matrix")
    U, V = _identity(rows), _identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        for M in (A, U):
            M[dst] = [x + c * y for x, y in zip(M[dst], M[src])]

    def add_col(dst, src, c):  # col_dst += c * col_src
        for M in (A, V):
            for r in M:
                r[dst] += c * r[src]

    def neg_row(i):
        for M in (A, U):
            M[i] = [-x for x in M[i]]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            neg_row(t)
        t += 1
    k = min(rows, cols)
    divisors = tuple(A[i][i] for i in range(k))
    return SNF(tuple(map(tuple, U)), tuple(map(tuple, A)), tuple(map(tuple, V)),
               sum(1 for d in divisors if d), divisors)


def det(m) -> int:
    """Integer determinant by fraction-free elimination (Bareiss)."""
    A = [list(map(int, r)) for r in m]
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("square matrix required")
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if A[i][k]), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def verify(m, snf: SNF) -> None:
    """Assert the defining properties of ``snf`` for ``m``."""
    if [list(r) for r in matmul(matmul(snf.U, m), snf.V)] != [list(r) for r in snf.D]:
        raise AssertionError("U*m*V != D")
    for i, row in enumerate(snf.D):
        for j, x in enumerate(row):
            if i != j and x:
                raise AssertionError("D is not diagonal")
    if any(d < 0 for d in snf.divisors):
        raise AssertionError("negative divisor")
    for a, b in zip(snf.divisors, snf.divisors[1:]):
        if a == 0 and b != 0 or (a and b % a):
            raise AssertionError("divisibility chain broken")
    if abs(det(snf.U)) != 1 or abs(det(snf.V)) != 1:
        raise AssertionError("transform not unimodular")

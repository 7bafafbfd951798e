"""Exact integer linear algebra over Python ints.

Nothing here touches floating point: determinants use fraction-free
(Bareiss) elimination, the adjugate is built from cofactors, and the Smith
normal form is computed with unimodular row/column operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

IntMatrix = tuple[tuple[int, ...], ...]


class SingularMatrixError(ValueError):
    pass


def _check_square(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    return n


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a: Sequence[Sequence[int]], x: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(r * v for r, v in zip(row, x)) for row in a)


def exact_determinant(m: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    n = _check_square(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact: Sylvester's identity guarantees divisibility
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _minor(m: Sequence[Sequence[int]], i: int, j: int) -> list[list[int]]:
    return [[v for c, v in enumerate(row) if c != j] for r, row in enumerate(m) if r != i]


def adjugate(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Transpose of the cofactor matrix, so that ``m @ adj(m) == det(m) * I``."""
    n = _check_square(m)
    if n == 1:
        return ((1,),)
    cof = [[(-1) ** (i + j) * exact_determinant(_minor(m, i, j)) for j in range(n)]
           for i in range(n)]
    return tuple(tuple(cof[j][i] for j in range(n)) for i in range(n))


def solve_integer(m: Sequence[Sequence[int]], b: Sequence[int]) -> tuple[int, ...] | None:
    """Integer solution of ``m x = b`` for nonsingular square ``m``, or None.

    Raises SingularMatrixError when det(m) == 0; that is a caller bug, not an
    absence of solutions.
    """
    m = tuple(tuple(row) for row in m)
    det, adj = _det_adj(m)
    if det == 0:
        raise SingularMatrixError("solve_integer needs a nonsingular matrix")
    if len(b) != len(m):
        raise ValueError("right-hand side has the wrong length")
    y = matvec(adj, b)
    if any(v % det for v in y):
        return None
    return tuple(v // det for v in y)


@lru_cache(maxsize=256)
def _det_adj(m: IntMatrix) -> tuple[int, IntMatrix]:
    # reachability queries solve against the same reduced Laplacian repeatedly
    return exact_determinant(m), adjugate(m)


@dataclass(frozen=True)
class SmithDecomposition:
    """``S == U @ M @ V`` with U, V unimodular and S diagonal."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0)))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Diagonal entries greater than one."""
        return tuple(d for d in self.diagonal if d > 1)


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithDecomposition:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    S = [list(r) for r in m]
    U = [list(r) for r in identity(rows)]
    V = [list(r) for r in identity(cols)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        S[dst] = [a + k * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for r in S:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]

    def smallest(t, positions):
        best = None
        for i, j in positions:
            v = S[i][j]
            if v and (best is None or abs(v) < abs(S[best[0]][best[1]])):
                best = (i, j)
        return best

    for t in range(min(rows, cols)):
        pos = smallest(t, ((i, j) for i in range(t, rows) for j in range(t, cols)))
        if pos is None:
            break
        while True:
            i, j = pos
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = S[t][t]
            for i in range(t + 1, rows):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
            for j in range(t + 1, cols):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
            pos = smallest(t, [(i, t) for i in range(t + 1, rows)]
                           + [(t, j) for j in range(t + 1, cols)])
            if pos is not None:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if S[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
            pos = smallest(t, [(t, j) for j in range(t + 1, cols)])
        if S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            U[t] = [-v for v in U[t]]

    freeze = lambda a: tuple(tuple(r) for r in a)  # noqa: E731
    return SmithDecomposition(freeze(U), freeze(S), freeze(V))

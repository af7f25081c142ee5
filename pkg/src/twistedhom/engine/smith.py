"""Smith normal form over Z with transformation matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U A V = D`` with U, V unimodular and D diagonal with d_1 | d_2 | ...

    ``Uinv`` and ``Vinv`` are the inverses (None unless requested).
    """

    U: Matrix
    D: Matrix
    V: Matrix
    Uinv: Matrix | None = None
    Vinv: Matrix | None = None

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    ncols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * ncols
        for k in range(inner):
            a = row[k]
            if a:
                bk = B[k]
                for j in range(ncols):
                    if bk[j]:
                        acc[j] += a * bk[j]
        out.append(acc)
    return out


def smith_normal_form(A: Sequence[Sequence[int]], *, ncols: int | None = None,
                      inverses: bool = False) -> SmithDecomposition:
    """Deterministic Smith normal form.

    The pivot is the nonzero entry of smallest absolute value in the
    remaining block, ties broken by row, then column.  Rows and columns are
    cleared with Euclidean quotient steps; a pivot that fails to divide the
    rest of the block absorbs the offending row and the search repeats.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    a = [[int(x) for x in row] for row in A]
    U, V = identity(m), identity(n)
    Ui = identity(m) if inverses else None
    Vi = identity(n) if inverses else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        if Ui is not None:
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        if Vi is not None:
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_sub(i, t, q):
        # row_i -= q * row_t
        ai, at = a[i], a[t]
        for j in range(n):
            if at[j]:
                ai[j] -= q * at[j]
        Ut, Uii = U[t], U[i]
        for j in range(m):
            if Ut[j]:
                Uii[j] -= q * Ut[j]
        if Ui is not None:
            for row in Ui:
                if row[i]:
                    row[t] += q * row[i]

    def col_sub(j, t, q):
        # col_j -= q * col_t
        for row in a:
            if row[t]:
                row[j] -= q * row[t]
        for row in V:
            if row[t]:
                row[j] -= q * row[t]
        if Vi is not None:
            Vt, Vj = Vi[t], Vi[j]
            for k in range(n):
                if Vj[k]:
                    Vt[k] += q * Vj[k]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    row_sub(i, t, q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    col_sub(j, t, q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a smaller remainder exists in row or column t: move it to the pivot
                best = None
                for i in range(t, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), i, t)
                for j in range(t + 1, n):
                    if a[t][j] and abs(a[t][j]) < best[0]:
                        best = (abs(a[t][j]), t, j)
                _, i, j = best
                if i != t:
                    swap_rows(i, t)
                if j != t:
                    swap_cols(j, t)
                continue
            bad = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # make row t carry the offending entries, then clear again
            row_sub(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
            if Ui is not None:
                for row in Ui:
                    row[t] = -row[t]
        t += 1
    return SmithDecomposition(U, a, V, Ui, Vi)

"""Dense linear algebra over F_p with numpy, and reduction maps into F_p.

Entries are kept in ``int64`` with ``p < 2**31`` so every product of two
reduced residues is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from ..cyclotomic import CyclotomicNumber, is_prime
from ..errors import InvalidInputError


def as_mod_array(rows, p: int, ncols: int | None = None) -> np.ndarray:
    A = np.array(rows, dtype=object) if len(rows) else np.zeros((0, ncols or 0), dtype=object)
    if A.ndim == 1:
        A = A.reshape(len(rows), ncols or 0)
    return np.array(A % p, dtype=np.int64)


def rref_mod_p(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``A`` over F_p and its pivot columns."""
    R = np.array(A, dtype=np.int64) % p
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, p)) % p
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            R[nzr] = (R[nzr] - np.outer(col[nzr], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod_p(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    # eliminate along the shorter side
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(rref_mod_p(A, p)[1])


def nullspace_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[tuple[int, ...]]:
    """Basis of {x : A x = 0} over F_p, one vector per free column (ascending)."""
    if ncols == 0:
        return []
    A = as_mod_array([list(r) for r in rows], p, ncols)
    if A.shape[0] == 0:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    R, pivots = rref_mod_p(A, p)
    basis = []
    pivset = set(pivots)
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = int(-R[i, f]) % p
        basis.append(tuple(v))
    return basis


def nullspace_matrix(A: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of ker A over F_p."""
    ncols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = rref_mod_p(A, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    N = np.zeros((ncols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        N[f, j] = 1
        for i, c in enumerate(pivots):
            N[c, j] = (-R[i, f]) % p
    return N


def solve_mod_p(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """X with A X = B over F_p; A must have independent columns and B in its span."""
    n = A.shape[1]
    aug = np.concatenate([A % p, B % p], axis=1)
    R, pivots = rref_mod_p(aug, p)
    if pivots[:n] != list(range(n)) or any(c >= n for c in pivots):
        raise InvalidInputError("system has no unique solution over F_p")
    return R[:n, n:] % p


def find_prime(ell: int, start: int = 1 << 16, skip: int = 0) -> int:
    """The (skip+1)-th prime p > start with p = 1 mod l."""
    p = start - start % ell + 1
    while True:
        if p > start and is_prime(p):
            if skip == 0:
                return p
            skip -= 1
        p += ell


def root_of_unity_mod(ell: int, p: int) -> int:
    """A primitive l-th root of unity in F_p (requires l | p - 1)."""
    if (p - 1) % ell:
        raise InvalidInputError(f"F_{p} has no primitive {ell}-th root of unity")
    for a in range(2, p):
        r = pow(a, (p - 1) // ell, p)
        if r != 1:
            return r
    raise AssertionError("unreachable")


def fraction_mod(x: Fraction | int, p: int) -> int:
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ZeroDivisionError(f"denominator divisible by {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def cyclotomic_mod(x: CyclotomicNumber, p: int, root: int) -> int:
    """Image of x under Z[1/d][z] -> F_p, z -> root."""
    acc = 0
    power = 1
    for c in x.coeffs:
        if c:
            acc = (acc + fraction_mod(c, p) * power) % p
        power = power * root % p
    return acc

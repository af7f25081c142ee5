"""Exact rank over Q(zeta_l) by fraction-free elimination in Z[zeta_l].

Columns are scaled to integral coefficients first (rank is unchanged), so
all arithmetic stays in Z[zeta].  An entry is a tuple of l-1 integers in the
basis 1, z, ..., z^{l-2}.  After each update a column is divided by the gcd
of all its integer coefficients, and new pivots prefer units +-z^k.
"""

from __future__ import annotations

from math import gcd, lcm
from typing import Sequence

from ..cyclotomic import CyclotomicNumber
from ..matrix import SparseMatrix

Elem = tuple[int, ...]


def _mul(ell: int, a: Elem, b: Elem) -> Elem:
    folded = [0] * ell
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    folded[(i + j) % ell] += x * y
    top = folded[ell - 1]
    return tuple(c - top for c in folded[: ell - 1])


def _is_unit(a: Elem) -> bool:
    nz = [x for x in a if x]
    if len(nz) == 1:
        return abs(nz[0]) == 1
    return len(nz) == len(a) and len(set(nz)) == 1 and abs(nz[0]) == 1


def _size(a: Elem) -> int:
    return sum(abs(x) for x in a)


def integral_columns(M: SparseMatrix) -> list[dict[int, Elem]]:
    """Scale each column of a cyclotomic matrix to Z[zeta] coefficients."""
    out = []
    for c in M.cols:
        den = 1
        for v in c.values():
            den = lcm(den, v.common_denominator())
        col = {}
        for i, v in c.items():
            col[i] = tuple(int(x * den) for x in v.coeffs)
        out.append(col)
    return out


def rank_cyclotomic(M: SparseMatrix, ell: int) -> int:
    """Rank of a matrix of CyclotomicNumbers over Q(zeta_l)."""
    return rank_integral_columns(integral_columns(M), ell)


def rank_integral_columns(columns: Sequence[dict[int, Elem]], ell: int) -> int:
    pivots: list[tuple[int, dict[int, Elem]]] = []
    zero = (0,) * (ell - 1)
    for col in columns:
        v = dict(col)
        for r, p in pivots:
            x = v.get(r)
            if x is None:
                continue
            pr = p[r]
            # v <- pr * v - x * p, leaving v[r] = 0
            nv: dict[int, Elem] = {}
            for i, y in v.items():
                if i != r:
                    nv[i] = _mul(ell, pr, y)
            for i, y in p.items():
                if i == r:
                    continue
                t = _mul(ell, x, y)
                cur = nv.get(i, zero)
                s = tuple(a - b for a, b in zip(cur, t))
                nv[i] = s
            v = {i: y for i, y in nv.items() if any(y)}
            g = 0
            for y in v.values():
                for a in y:
                    g = gcd(g, a)
            if g > 1:
                v = {i: tuple(a // g for a in y) for i, y in v.items()}
        if not v:
            continue
        units = [i for i, y in v.items() if _is_unit(y)]
        if units:
            r = min(units)
        else:
            r = min(v, key=lambda i: (_size(v[i]), i))
        pivots.append((r, v))
    return len(pivots)

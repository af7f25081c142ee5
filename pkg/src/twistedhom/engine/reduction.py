"""Sparse elimination of chain complexes.

Cancelling a cell pair ``(a, b)`` with ``d b = lam * a + ...`` and ``lam`` a
unit gives a chain-homotopy-equivalent complex with two fewer cells:

    d'_k     = d_k - d_k[:, b] lam^-1 d_k[a, :]   (row a, column b dropped)
    d'_{k+1} = d_{k+1} without row b
    d'_{k-1} = d_{k-1} without column a

Every elimination is logged so the comparison maps ``f: C -> C'`` and
``g: C' -> C`` (with ``f g = 1``) can be replayed on vectors.  Over a field
the residual complex has zero differential; over Z only +-1 pivots are used
and the residual is handed to the Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..matrix import SparseMatrix


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: ``Z``, ``F_p`` (p given), or a field of Python objects."""

    kind: str  # "Z", "Fp" or "field"
    p: int = 0

    def norm(self, x):
        return x % self.p if self.kind == "Fp" else x

    def is_unit(self, x) -> bool:
        if self.kind == "Z":
            return x == 1 or x == -1
        return bool(x)

    def inv(self, x):
        if self.kind == "Z":
            return x
        if self.kind == "Fp":
            return pow(x, -1, self.p)
        return 1 / x

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"


ZZ = Ring("Z")


def GF(p: int) -> Ring:
    return Ring("Fp", p)


FIELD = Ring("field")


@dataclass
class _Event:
    k: int
    a: int
    b: int
    lam_inv: object
    col_b: dict
    row_a: dict


@dataclass
class ReducedComplex:
    ring: Ring
    sizes: tuple[int, ...]
    kept: list[list[int]]                 # surviving original cell indices per degree
    boundaries: list[SparseMatrix]        # residual differentials, in kept order
    pairs: list[int]                      # cancelled pairs per boundary index k
    events: list[_Event] = field(default_factory=list)
    tracked: bool = False

    def rank_lower(self, k: int) -> int:
        """Cancelled pairs through d_k (equals rank d_k over a field)."""
        return self.pairs[k] if 0 <= k < len(self.pairs) else 0

    def f(self, d: int, vec: dict) -> dict:
        """Image of an original d-chain in residual coordinates."""
        self._need_tracking()
        R = self.ring
        x = dict(vec)
        for e in self.events:
            if e.k == d + 1:
                mu = x.pop(e.a, 0)
                if mu:
                    s = mu * e.lam_inv
                    for r, v in e.col_b.items():
                        x[r] = R.norm(x.get(r, 0) - s * v)
            elif e.k == d:
                x.pop(e.b, None)
        pos = {c: i for i, c in enumerate(self.kept[d])}
        return {pos[c]: v for c, v in x.items() if v}

    def g(self, d: int, vec: dict) -> dict:
        """Original chain representing a residual d-chain."""
        self._need_tracking()
        R = self.ring
        y = {self.kept[d][i]: v for i, v in vec.items() if v}
        for e in reversed(self.events):
            if e.k == d:
                acc = 0
                for c, mu in e.row_a.items():
                    yc = y.get(c)
                    if yc:
                        acc = acc + mu * yc
                if acc:
                    y[e.b] = R.norm(-(e.lam_inv * acc))
        return {c: v for c, v in y.items() if v}

    def _need_tracking(self):
        if not self.tracked:
            raise ValueError("reduction was run without map tracking")


def reduce_complex(boundaries: Sequence[SparseMatrix], ring: Ring, *, track: bool = False,
                   degrees: Sequence[int] | None = None) -> ReducedComplex:
    """Cancel unit pivots degree by degree, from d_1 upwards.

    Within a degree, columns are visited in order of their initial size
    (then index) and the pivot row is the unit entry whose row is shortest
    (then lowest index).  Over Z the pass repeats while it makes progress.
    ``degrees`` restricts which differentials are reduced.
    """
    n = len(boundaries)
    sizes = tuple(m.ncols for m in boundaries)
    cols: list[dict[int, dict]] = []
    rows: list[dict[int, set]] = []
    for k, M in enumerate(boundaries):
        ck = {j: {i: ring.norm(v) for i, v in c.items()} for j, c in enumerate(M.cols)}
        ck = {j: {i: v for i, v in c.items() if v} for j, c in ck.items()}
        rk: dict[int, set] = {i: set() for i in range(M.nrows)}
        for j, c in ck.items():
            for i in c:
                rk[i].add(j)
        cols.append(ck)
        rows.append(rk)
    alive = [set(range(s)) for s in sizes]
    pairs = [0] * n
    events: list[_Event] = []
    todo = range(1, n) if degrees is None else [k for k in degrees if 1 <= k < n]

    for k in todo:
        ck, rk = cols[k], rows[k]
        while True:
            progress = False
            order = sorted(ck, key=lambda j: (len(ck[j]), j))
            for b in order:
                col = ck.get(b)
                if not col:
                    continue
                best = None
                for i, v in col.items():
                    if ring.is_unit(v):
                        key = (len(rk[i]), i)
                        if best is None or key < best:
                            best = key
                if best is None:
                    continue
                a = best[1]
                lam_inv = ring.inv(col[a])
                col_b = {i: v for i, v in col.items() if i != a}
                row_a = {}
                for c in rk[a]:
                    if c != b:
                        row_a[c] = ck[c][a]
                # eliminate: column c -= (mu lam^-1) column b
                for c, mu in row_a.items():
                    cc = ck[c]
                    del cc[a]
                    s = mu * lam_inv
                    for i, v in col_b.items():
                        nv = ring.norm(cc.get(i, 0) - s * v)
                        if nv:
                            if i not in cc:
                                rk[i].add(c)
                            cc[i] = nv
                        elif i in cc:
                            del cc[i]
                            rk[i].discard(c)
                for i in col:
                    rk[i].discard(b)
                del rk[a]
                del ck[b]
                # drop row b from d_{k+1} and column a from d_{k-1}
                if k + 1 < n:
                    for c in rows[k + 1].pop(b, ()):
                        del cols[k + 1][c][b]
                if k - 1 >= 1:
                    for i in cols[k - 1].pop(a, {}):
                        rows[k - 1][i].discard(a)
                else:
                    cols[k - 1].pop(a, None)
                alive[k].discard(b)
                alive[k - 1].discard(a)
                pairs[k] += 1
                progress = True
                if track:
                    events.append(_Event(k, a, b, lam_inv, col_b, row_a))
            if ring.is_field or not progress:
                break

    kept = [sorted(s) for s in alive]
    res = []
    for k in range(n):
        pos_r = {c: i for i, c in enumerate(kept[k - 1])} if k else {}
        cs = [{pos_r[i]: v for i, v in cols[k][j].items()} for j in kept[k]]
        res.append(SparseMatrix(len(kept[k - 1]) if k else 0, len(kept[k]), cs))
    return ReducedComplex(ring, sizes, kept, res, pairs, events, track)

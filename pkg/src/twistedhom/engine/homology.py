"""Homology over Z, F_p and Q(zeta_l), with induced maps.

Every computation first cancels unit pivots (see :mod:`.reduction`); the
integral residual is finished with the Smith normal form, and over a field
the residual has zero differential.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..cyclotomic import CyclotomicNumber
from ..errors import InvalidComplexError, InvalidInputError
from ..matrix import SparseMatrix
from ..simplicial import IntegerChainComplex, check_complex
from .cyclorank import rank_cyclotomic
from .modular import (cyclotomic_mod, find_prime, nullspace_matrix, rank_mod_p,
                      root_of_unity_mod)
from .reduction import FIELD, GF, ZZ, ReducedComplex, reduce_complex
from .smith import matmul, smith_normal_form


def field_label(ell: int | None = None, p: int | None = None) -> str:
    if p is not None:
        return f"F_{p}"
    if ell is None:
        return "Z"
    return "Q" if ell == 2 else f"Q(zeta_{ell})"


@dataclass(frozen=True)
class HomologySummary:
    """Betti numbers and (integral case) torsion coefficients per degree."""

    field: str
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if not self.torsion:
            object.__setattr__(self, "torsion", tuple(() for _ in self.betti))
        if self.field != "Z" and any(self.torsion):
            raise ValueError("torsion only makes sense over Z")

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def group_string(self, k: int) -> str:
        parts = []
        ring = "Z" if self.field == "Z" else self.field
        if self.betti[k]:
            parts.append(f"{ring}^{self.betti[k]}")
        parts.extend(f"Z/{t}" for t in self.torsion[k])
        return " + ".join(parts) if parts else "0"

    def lines(self) -> list[str]:
        return [f"H {k} = {self.group_string(k)}" for k in range(len(self.betti))]

    def table(self) -> str:
        rows = [("dim", "rank", "torsion")]
        for k, b in enumerate(self.betti):
            rows.append((str(k), str(b), " ".join(f"Z/{t}" for t in self.torsion[k]) or "-"))
        w = [max(len(r[i]) for r in rows) for i in range(3)]
        return "\n".join("  ".join(r[i].rjust(w[i]) for i in range(3)).rstrip() for r in rows)


# ---------------------------------------------------------------------------
# integral homology

def _dense(M: SparseMatrix) -> list[list[int]]:
    return M.to_dense()


def homology_integral(C: IntegerChainComplex, *, check: bool = True) -> HomologySummary:
    """Betti numbers and torsion of an integer chain complex."""
    if check:
        check_complex(C.boundaries)
    red = reduce_complex(C.boundaries, ZZ)
    n = len(C.boundaries)
    ranks = []
    factors = []
    for k in range(n + 1):
        if k == 0 or k == n:
            ranks.append(0)
            factors.append([])
            continue
        M = red.boundaries[k]
        if M.nrows == 0 or M.ncols == 0 or M.is_zero():
            ranks.append(red.pairs[k])
            factors.append([])
            continue
        S = smith_normal_form(_dense(M), ncols=M.ncols)
        ranks.append(red.pairs[k] + S.rank)
        factors.append(S.invariant_factors)
    sizes = C.sizes()
    betti = tuple(sizes[k] - ranks[k] - ranks[k + 1] for k in range(n))
    torsion = tuple(tuple(t for t in factors[k + 1] if t > 1) for k in range(n))
    return HomologySummary("Z", betti, torsion)


@dataclass
class IntegralHomologyGroup:
    """H_k presented as (+)_i Z/t_i (+) Z^free with explicit generators.

    Class coordinates list the torsion components first (t_i ascending),
    then the free ones.
    """

    k: int
    torsion: list[int]
    free: int
    generators: list[dict]           # original chains, one per coordinate
    _reduced: ReducedComplex = field(repr=False)
    _coord: list[list[int]] = field(repr=False)   # P * Vinv[r:], restricted to kept comps
    _moduli: list[int] = field(repr=False)        # t_i, or 0 for free components

    @property
    def rank(self) -> int:
        return len(self._moduli)

    def is_zero(self) -> bool:
        return not self._moduli

    def coordinates(self, cycle: dict) -> list[int]:
        """Class of an (original) integral cycle."""
        x = self._reduced.f(self.k, cycle)
        out = []
        for row, m in zip(self._coord, self._moduli):
            v = sum(row[i] * c for i, c in x.items())
            out.append(v % m if m else v)
        return out

    def describe(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free:
            parts.append(f"Z^{self.free}")
        return " + ".join(parts) if parts else "0"


class IntegralHomology:
    """Integral homology with maps, computed lazily per degree."""

    def __init__(self, C: IntegerChainComplex, *, check: bool = True):
        if check:
            check_complex(C.boundaries)
        self.complex = C
        self.reduced = reduce_complex(C.boundaries, ZZ, track=True)
        self._groups: dict[int, IntegralHomologyGroup] = {}

    def group(self, k: int) -> IntegralHomologyGroup:
        if k not in self._groups:
            self._groups[k] = self._compute(k)
        return self._groups[k]

    def _compute(self, k: int) -> IntegralHomologyGroup:
        red = self.reduced
        n = len(red.boundaries)
        if k < 0 or k >= n:
            return IntegralHomologyGroup(k, [], 0, [], red, [], [])
        m = len(red.kept[k])
        A = red.boundaries[k]
        if A.nrows and m:
            SA = smith_normal_form(_dense(A), ncols=m, inverses=True)
            r = SA.rank
            V, Vinv = SA.V, SA.Vinv
        else:
            r = 0
            V = [[int(i == j) for j in range(m)] for i in range(m)]
            Vinv = V
        Vr = Vinv[r:]
        q = m - r
        if k + 1 < n:
            B = _dense(red.boundaries[k + 1])
        else:
            B = [[] for _ in range(m)]
        ncb = len(B[0]) if B else 0
        Mx = matmul(Vr, B) if q and ncb else [[0] * ncb for _ in range(q)]
        if q:
            SM = smith_normal_form(Mx, ncols=ncb, inverses=True)
            P, Pinv = SM.U, SM.Uinv
            diag = SM.diagonal
        else:
            P, Pinv, diag = [], [], []
        s = sum(1 for d in diag if d)
        coord_full = matmul(P, Vr) if q else []
        K = [row[r:] for row in V]  # m x q
        KP = matmul(K, Pinv) if q else [[] for _ in range(m)]
        torsion, moduli, rows, gens = [], [], [], []
        for i in range(q):
            e = diag[i] if i < s else 0
            if e == 1:
                continue
            if e:
                torsion.append(e)
            moduli.append(e)
            rows.append(coord_full[i])
            res_vec = {a: KP[a][i] for a in range(m) if KP[a][i]}
            gens.append(red.g(k, res_vec))
        # torsion components first, then free
        order = sorted(range(len(moduli)), key=lambda i: (moduli[i] == 0, i))
        return IntegralHomologyGroup(
            k, torsion, q - s, [gens[i] for i in order], red,
            [rows[i] for i in order], [moduli[i] for i in order])


@dataclass
class InducedMap:
    """Matrix of a map between SNF-presented homology groups."""

    source: IntegralHomologyGroup
    target: IntegralHomologyGroup
    matrix: list[list[int]]   # rows: target coordinates, cols: source generators

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.matrix for v in row)


def induced_map(Hs: IntegralHomology, Ht: IntegralHomology, chain_map: SparseMatrix,
                k: int) -> InducedMap:
    src, tgt = Hs.group(k), Ht.group(k)
    cols = [tgt.coordinates(chain_map.apply(g)) for g in src.generators]
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(tgt.rank)]
    return InducedMap(src, tgt, matrix)


def cokernel(target: IntegralHomologyGroup, images: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """(free rank, torsion) of target / span(images); images are coordinate vectors."""
    n = target.rank
    cols = [list(v) for v in images]
    for i, m in enumerate(target._moduli):
        if m:
            cols.append([m if j == i else 0 for j in range(n)])
    if n == 0:
        return 0, []
    mat = [[c[i] for c in cols] for i in range(n)]
    if not cols:
        return n, []
    S = smith_normal_form(mat, ncols=len(cols))
    inv = S.invariant_factors
    return n - len(inv), [d for d in inv if d > 1]


# ---------------------------------------------------------------------------
# field coefficients

def betti_mod_p(boundaries: Sequence[SparseMatrix], p: int) -> tuple[int, ...]:
    mats = [M.map(lambda v: v % p) for M in boundaries]
    red = reduce_complex(mats, GF(p))
    sizes = [M.ncols for M in boundaries]
    n = len(sizes)
    return tuple(sizes[k] - red.rank_lower(k) - (red.rank_lower(k + 1) if k + 1 < n else 0)
                 for k in range(n))


def cochain_boundaries(boundaries: Sequence[SparseMatrix]) -> list[SparseMatrix]:
    """The dual complex re-indexed as a chain complex: degree j <-> cochain degree dim - j."""
    d = len(boundaries) - 1
    mats = [SparseMatrix(0, boundaries[d].ncols)]
    for j in range(1, d + 1):
        mats.append(boundaries[d - j + 1].transpose())
    return mats


def cohomology_field(C, k: int, p: int) -> int:
    """dim H^k(C; F_p), cross-checked against dim H_k(C; F_p)."""
    bds = C.boundaries if hasattr(C, "boundaries") else C
    check_complex(bds)
    d = len(bds) - 1
    if k < 0 or k > d:
        return 0
    co = betti_mod_p(cochain_boundaries(bds), p)[d - k]
    ho = betti_mod_p(bds, p)[k]
    if co != ho:
        raise AssertionError(f"universal coefficients violated: H^{k}={co}, H_{k}={ho}")
    return co


def homology_mod_p(C: IntegerChainComplex, p: int) -> HomologySummary:
    check_complex(C.boundaries)
    return HomologySummary(field_label(p=p), betti_mod_p(C.boundaries, p))


class FieldHomology:
    """Homology over F_p with a basis and coordinates (reduction-based)."""

    def __init__(self, boundaries: Sequence[SparseMatrix], p: int):
        self.p = p
        mats = [M.map(lambda v: v % p) for M in boundaries]
        self.reduced = reduce_complex(mats, GF(p), track=True)

    def dim(self, k: int) -> int:
        if k < 0 or k >= len(self.reduced.kept):
            return 0
        return len(self.reduced.kept[k])

    def representative(self, k: int, i: int) -> dict:
        return self.reduced.g(k, {i: 1})

    def coordinates(self, k: int, cycle: dict) -> list[int]:
        x = self.reduced.f(k, {c: v % self.p for c, v in cycle.items()})
        out = [0] * self.dim(k)
        for i, v in x.items():
            out[i] = v % self.p
        return out


def induced_map_mod_p(Hs: FieldHomology, Ht: FieldHomology, chain_map: SparseMatrix,
                      k: int) -> np.ndarray:
    p = Hs.p
    M = np.zeros((Ht.dim(k), Hs.dim(k)), dtype=np.int64)
    for j in range(Hs.dim(k)):
        img = chain_map.apply(Hs.representative(k, j))
        M[:, j] = Ht.coordinates(k, img)
    return M % p


# ---------------------------------------------------------------------------
# twisted coefficients

def _modular_image(M: SparseMatrix, p: int, root: int, cache: dict) -> SparseMatrix:
    def conv(v):
        r = cache.get(v)
        if r is None:
            r = cyclotomic_mod(v, p, root)
            cache[v] = r
        return r
    return M.map(conv)


def twisted_ranks(C, *, primes: int = 2) -> tuple[list[int], list[str]]:
    """Exact ranks of the boundaries of a TwistedChainComplex.

    Ranks modulo primes p = 1 (mod l) are lower bounds.  A bound is
    certified when it reaches min(rows, cols), n_{k-1} - r_{k-1} or
    n_k - r_{k+1} (these cap the true rank because d d = 0).  Anything left
    is computed exactly in Z[zeta].  Returns the ranks and, per degree, how
    each was settled.
    """
    ell = C.ell
    n = len(C.boundaries)
    sizes = C.sizes()
    best = [0] * (n + 1)
    for attempt in range(primes):
        p = find_prime(ell, skip=attempt)
        root = root_of_unity_mod(ell, p)
        cache: dict = {}
        try:
            mats = [_modular_image(M, p, root, cache) for M in C.boundaries]
        except ZeroDivisionError:
            continue
        red = reduce_complex(mats, GF(p))
        for k in range(1, n):
            best[k] = max(best[k], red.rank_lower(k))
        if all(_certified(best, sizes, k) for k in range(1, n)):
            break
    how = ["trivial"] + ["modular"] * (n - 1)
    for k in range(1, n):
        if not _certified(best, sizes, k):
            best[k] = rank_cyclotomic(C.boundaries[k], ell)
            how[k] = "exact"
    return best[:n], how


def _certified(r: list[int], sizes: Sequence[int], k: int) -> bool:
    n = len(sizes)
    upper = min(sizes[k - 1], sizes[k])
    upper = min(upper, sizes[k - 1] - r[k - 1] if k >= 2 else sizes[k - 1])
    if k + 1 < n:
        upper = min(upper, sizes[k] - r[k + 1])
    return r[k] >= upper


def betti_twisted(C, *, check: bool = False) -> HomologySummary:
    """Betti numbers of a twisted complex over Q(zeta_l)."""
    if check:
        C.check()
    ranks, _ = twisted_ranks(C)
    sizes = C.sizes()
    n = len(sizes)
    ranks = ranks + [0]
    betti = tuple(sizes[k] - ranks[k] - ranks[k + 1] for k in range(n))
    return HomologySummary(field_label(ell=C.ell), betti)


# ---------------------------------------------------------------------------
# invariant subspaces

def invariant_subspace(action: Sequence, p: int | None = None):
    """Common fixed space of square matrices: (dimension, basis as columns).

    With ``p`` the matrices are integer arrays read modulo p; otherwise the
    entries are exact field elements (Fractions or CyclotomicNumbers).
    """
    mats = list(action)
    if not mats:
        raise InvalidInputError("need at least one matrix")
    n = len(mats[0])
    for A in mats:
        if len(A) != n or any(len(row) != n for row in A):
            raise InvalidInputError("action matrices must be square and of one size")
    if p is not None:
        stack = np.concatenate([(np.array(A, dtype=np.int64) - np.eye(n, dtype=np.int64)) % p
                                for A in mats], axis=0) if n else np.zeros((0, 0), dtype=np.int64)
        N = nullspace_matrix(stack, p) if n else np.zeros((0, 0), dtype=np.int64)
        return N.shape[1], N
    rows = []
    for A in mats:
        for i in range(n):
            rows.append([A[i][j] - (1 if i == j else 0) for j in range(n)])
    basis = exact_nullspace(rows, n)
    return len(basis), basis


def exact_nullspace(rows: Sequence[Sequence], ncols: int) -> list[list]:
    """Nullspace over an exact field (entries support + - * / and truthiness)."""
    R = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(R)) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = -R[i][f]
        basis.append(v)
    return basis

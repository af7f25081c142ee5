"""Normalized bar complexes of finite groups.

Cells of degree k are tuples ``[g1|...|gk]`` of non-identity elements, in
lexicographic order of element indices.  The twisted boundary is

    d[g1|...|gk] = [g2|...|gk] + sum_{i<k} (-1)^i [..|g_i g_{i+1}|..]
                   + (-1)^k chi(g_k) [g1|...|g_{k-1}]

with degenerate tuples (containing e) dropped.  With this convention
``d[g] = (1 - chi(g)) [ ]``, which is the bar-level form of
``d(x~ (x) gamma) = (1 - g^-1) (x) e`` when the holonomy along ``[g]`` is
``chi(g)^-1``.
"""

from __future__ import annotations

import itertools
from typing import Callable, Sequence

from .engine.reduction import GF, reduce_complex
from .errors import InvalidInputError, SizeLimitError
from .local_systems import (EquivariantComplex, GroupRingElement, GroupRingMatrix, LocalSystem,
                            enumerate_local_systems, is_trivial)
from .matrix import SparseMatrix
from .presentation import FiniteGroup, abelian_group

DEFAULT_GROUP_CAP = 16
DEFAULT_DEGREE_CAP = 3


def num_cells(G: FiniteGroup, k: int) -> int:
    return (G.order - 1) ** k


def cell_tuple(G: FiniteGroup, k: int, j: int) -> tuple[int, ...]:
    """The j-th degree-k cell (elements are 1..|G|-1)."""
    b = G.order - 1
    out = [0] * k
    for i in range(k - 1, -1, -1):
        j, r = divmod(j, b)
        out[i] = r + 1
    return tuple(out)


def cell_index(G: FiniteGroup, t: Sequence[int]) -> int:
    b = G.order - 1
    j = 0
    for g in t:
        j = j * b + (g - 1)
    return j


def bar_boundary(G: FiniteGroup, k: int, last: Callable[[int], object], one=1) -> SparseMatrix:
    """d_k of the normalized bar complex; ``last(g)`` is the last-face coefficient."""
    if k < 1:
        return SparseMatrix(0, 1 if G.order else 0)
    mul = G.mul_table
    b = G.order - 1
    ncols = b ** k
    nrows = b ** (k - 1)
    lastsign = -1 if k % 2 else 1
    cols = []
    for j in range(ncols):
        t = cell_tuple(G, k, j)
        col: dict = {}
        # first face [g2|...|gk]
        r = j % nrows if nrows else 0
        col[r] = one
        for i in range(1, k):
            h = mul[t[i - 1]][t[i]]
            if h == 0:
                continue
            face = t[: i - 1] + (h,) + t[i + 1:]
            r = 0
            for g in face:
                r = r * b + (g - 1)
            v = one if i % 2 == 0 else -one
            col[r] = col[r] + v if r in col else v
        r = j // b
        v = last(t[-1])
        v = v if lastsign > 0 else -v
        col[r] = col[r] + v if r in col else v
        cols.append(col)
    return SparseMatrix(nrows, ncols, cols)


def _check_size(G: FiniteGroup, degree: int, cap: int, degree_cap: int | None) -> None:
    if G.order > cap:
        raise SizeLimitError(f"group order {G.order} exceeds the cap {cap}")
    if degree_cap is not None and degree > degree_cap:
        raise SizeLimitError(f"degree {degree} exceeds the cap {degree_cap}")


_NERVE_CACHE: dict = {}


def nerve_complex(G: FiniteGroup, N: int, *, cap: int = DEFAULT_GROUP_CAP) -> EquivariantComplex:
    """Normalized bar complex in degrees 0..N as a free Z[G]-complex.

    The last face carries the group word of ``g_k``; twisting by a local
    system on the group's presentation gives the chi-twisted bar complex.
    The most recent few results are memoized.
    """
    _check_size(G, 0, cap, None)
    key = (tuple(map(tuple, G.mul_table)), tuple(G.words or ()), G.presentation, N)
    if key in _NERVE_CACHE:
        return _NERVE_CACHE[key]
    E = _build_nerve(G, N, cap)
    if len(_NERVE_CACHE) >= 4:
        _NERVE_CACHE.pop(next(iter(_NERVE_CACHE)))
    _NERVE_CACHE[key] = E
    return E


def _build_nerve(G: FiniteGroup, N: int, cap: int) -> EquivariantComplex:
    if G.presentation is None or G.words is None:
        raise InvalidInputError("nerve needs a group with a presentation")
    if not G.is_abelian():
        raise InvalidInputError("the nerve model is only provided for abelian groups")
    _check_size(G, 0, cap, None)
    P = G.presentation
    one = GroupRingElement.scalar(1)
    words = [GroupRingElement.word(w) for w in G.words]
    mats = [GroupRingMatrix(P, SparseMatrix(0, 1))]
    for k in range(1, N + 1):
        mats.append(GroupRingMatrix(P, bar_boundary(G, k, lambda g: words[g], one)))
    labels = [[cell_tuple(G, k, j) for j in range(num_cells(G, k))] for k in range(N + 1)]
    return EquivariantComplex(P, mats, labels=labels, name=f"nerve(order {G.order})")


def nerve_group(invariants: Sequence[int]) -> FiniteGroup:
    return abelian_group(invariants)


def bar_boundaries_mod(G: FiniteGroup, N: int, p: int, chi: Sequence[int] | None = None,
                       root: int = 1) -> list[SparseMatrix]:
    """Bar boundaries d_0..d_N over F_p; ``chi[g]`` exponents of ``root``."""
    mats = [SparseMatrix(0, 1)]
    for k in range(1, N + 1):
        if chi is None:
            last = lambda g: 1
        else:
            vals = [pow(root, c, p) for c in chi]
            last = lambda g, vals=vals: vals[g]
        M = bar_boundary(G, k, last)
        mats.append(M.map(lambda v: v % p))
    return mats


def bar_cohomology_dims(G: FiniteGroup, ell: int, kmax: int = 3, *,
                        cap: int = DEFAULT_GROUP_CAP,
                        degree_cap: int = DEFAULT_DEGREE_CAP) -> list[int]:
    """dim H^k(G; F_l) with trivial action, k = 0..kmax.

    Uses normalized cochains; over a field dim H^k = n_k - rank d_k - rank d_{k+1}
    (coboundaries are transposes of boundaries).
    """
    _check_size(G, kmax, cap, degree_cap)
    mats = bar_boundaries_mod(G, kmax + 1, ell)
    red = reduce_complex(mats, GF(ell))
    sizes = [m.ncols for m in mats]
    return [sizes[k] - red.rank_lower(k) - red.rank_lower(k + 1) for k in range(kmax + 1)]


def bar_group_cohomology(G: FiniteGroup, ell: int, k: int, *, cap: int = DEFAULT_GROUP_CAP,
                         degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    if k < 0:
        raise InvalidInputError("degree must be non-negative")
    return bar_cohomology_dims(G, ell, k, cap=cap, degree_cap=degree_cap)[k]


def characters(G: FiniteGroup, ell: int) -> list[LocalSystem]:
    """Homomorphisms G -> Z/l on the group's presentation, lexicographic."""
    if G.presentation is None:
        raise InvalidInputError("group has no presentation")
    return enumerate_local_systems(G.presentation, ell)


def character_values(G: FiniteGroup, chi: LocalSystem) -> list[int]:
    """Exponent of chi(g) for every element g."""
    return [chi.exponent(w) for w in G.words]


def nontrivial_characters(G: FiniteGroup, ell: int) -> list[LocalSystem]:
    return [c for c in characters(G, ell) if not is_trivial(c)]


# ---------------------------------------------------------------------------
# chains on the twisted nerve

class BarChain:
    """A chain in the chi-twisted normalized bar complex of an abelian group.

    ``terms`` maps cells (tuples of non-identity elements, all of one
    degree) to CyclotomicNumber coefficients.
    """

    __slots__ = ("group", "chi", "degree", "terms")

    def __init__(self, group: FiniteGroup, chi: LocalSystem, degree: int, terms=None):
        if chi.presentation != group.presentation:
            raise InvalidInputError("character is not defined on this group's presentation")
        self.group = group
        self.chi = chi
        self.degree = degree
        out = {}
        for t, v in (terms or {}).items():
            t = tuple(t)
            if len(t) != degree or any(not 0 < g < group.order for g in t):
                raise InvalidInputError(f"bad bar cell {t!r} for degree {degree}")
            v = _cyc(chi.ell, v)
            if v:
                out[t] = v
        self.terms = out

    @property
    def ell(self) -> int:
        return self.chi.ell

    def _same(self, other: "BarChain") -> None:
        if self.group is not other.group and self.group.mul_table != other.group.mul_table:
            raise InvalidInputError("chains live on different groups")
        if self.chi != other.chi:
            raise InvalidInputError("chains use different characters")

    def __add__(self, other: "BarChain") -> "BarChain":
        self._same(other)
        if self.degree != other.degree and self.terms and other.terms:
            raise InvalidInputError("cannot add chains of different degrees")
        deg = self.degree if self.terms else other.degree
        out = dict(self.terms)
        for t, v in other.terms.items():
            out[t] = out[t] + v if t in out else v
        return BarChain(self.group, self.chi, deg, out)

    def __neg__(self):
        return BarChain(self.group, self.chi, self.degree, {t: -v for t, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "BarChain":
        c = _cyc(self.ell, c)
        return BarChain(self.group, self.chi, self.degree, {t: v * c for t, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, BarChain) and self.chi == other.chi
                and (self.degree == other.degree or not (self.terms or other.terms))
                and self.terms == other.terms)

    def __repr__(self):
        return f"BarChain(degree={self.degree}, terms={len(self.terms)})"


def _cyc(ell: int, v):
    from .cyclotomic import CyclotomicNumber
    if isinstance(v, CyclotomicNumber):
        if v.ell != ell:
            raise InvalidInputError("coefficient modulus does not match the character")
        return v
    return CyclotomicNumber.from_scalar(ell, v)


def unit_chain(G: FiniteGroup, chi: LocalSystem) -> BarChain:
    """The 0-cell [ ] with coefficient 1."""
    return BarChain(G, chi, 0, {(): 1})


def bar_chain_boundary(x: BarChain) -> BarChain:
    from .cyclotomic import CyclotomicNumber
    k = x.degree
    if k == 0:
        return BarChain(x.group, x.chi, 0, {})
    mul = x.group.mul_table
    ell = x.ell
    vals = character_values(x.group, x.chi)
    out: dict = {}

    def add(t, v):
        out[t] = out[t] + v if t in out else v

    for t, c in x.terms.items():
        add(t[1:], c)
        for i in range(1, k):
            h = mul[t[i - 1]][t[i]]
            if h:
                add(t[: i - 1] + (h,) + t[i + 1:], c if i % 2 == 0 else -c)
        z = CyclotomicNumber.zeta_power(ell, vals[t[-1]]) * c
        add(t[:-1], z if k % 2 == 0 else -z)
    return BarChain(x.group, x.chi, k - 1, out)


def shuffle_product(a: BarChain, b: BarChain, *, degree_cap: int | None = None) -> BarChain:
    """Eilenberg-MacLane shuffle product on the twisted nerve.

    ``[g1|..|gp] * [h1|..|hq]`` is the signed sum over (p, q)-shuffles of the
    interleaved tuples; the sign counts pairs where an h precedes a g.
    """
    a._same(b)
    p, q = a.degree, b.degree
    if degree_cap is not None and p + q > degree_cap:
        raise SizeLimitError(f"product degree {p + q} exceeds the cap {degree_cap}")
    shuffles = []
    for pos in itertools.combinations(range(p + q), p):
        sign = 1
        inv = sum(pi - i for i, pi in enumerate(pos))
        if inv % 2:
            sign = -1
        shuffles.append((pos, sign))
    out: dict = {}
    for s, x in a.terms.items():
        for t, y in b.terms.items():
            xy = x * y
            for pos, sign in shuffles:
                cell = [0] * (p + q)
                posset = set(pos)
                ia = ib = 0
                for m in range(p + q):
                    if m in posset:
                        cell[m] = s[ia]
                        ia += 1
                    else:
                        cell[m] = t[ib]
                        ib += 1
                cell = tuple(cell)
                v = xy if sign > 0 else -xy
                out[cell] = out[cell] + v if cell in out else v
    return BarChain(a.group, a.chi, p + q, out)

"""Executable versions of the topological statements.

Every function accepts either a connected SimplicialComplex (its edge-path
model is used) or an EquivariantComplex.  Cover-dependent checks need a
finite fundamental group and raise BudgetExceededError otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .cover import CoveringComplex, cover_from_group_ring, edge_path_complex
from .cyclotomic import CyclotomicNumber, RootOfUnity, unit_one_minus
from .engine.homology import (FieldHomology, IntegralHomology, betti_twisted, cohomology_field,
                              cokernel, induced_map, induced_map_mod_p, invariant_subspace)
from .engine.modular import rank_mod_p
from .errors import (BudgetExceededError, InvalidInputError, PreconditionError,
                     SizeLimitError, TwistedHomError)
from .groups import (DEFAULT_DEGREE_CAP, DEFAULT_GROUP_CAP, BarChain, bar_chain_boundary,
                     bar_cohomology_dims, character_values, nerve_complex, shuffle_product,
                     unit_chain)
from .local_systems import (EquivariantComplex, LocalSystem, enumerate_local_systems,
                            is_trivial, twisted_complex)
from .presentation import DEFAULT_COSET_BUDGET, FiniteGroup
from .simplicial import SimplicialComplex


def as_equivariant(X) -> EquivariantComplex:
    if isinstance(X, EquivariantComplex):
        return X
    if isinstance(X, SimplicialComplex):
        return edge_path_complex(X)
    raise InvalidInputError(f"expected a complex, got {type(X).__name__}")


def finite_cover(X, budget: int = DEFAULT_COSET_BUDGET) -> CoveringComplex:
    E = as_equivariant(X)
    cached = getattr(E, "_cover", None)
    if cached is not None and cached[0] >= budget:
        return cached[1]
    try:
        C = cover_from_group_ring(E, budget=budget)
    except BudgetExceededError as exc:
        raise BudgetExceededError(
            f"{exc}; not decidable by this artifact (needs a finite fundamental group)") from None
    E._cover = (budget, C)
    return C


def _integral(E: EquivariantComplex, C: CoveringComplex):
    if getattr(E, "_ih", None) is None:
        E._ih = (IntegralHomology(C.chain_complex), IntegralHomology(C.base_complex))
    return E._ih


# ---------------------------------------------------------------------------
# Hurewicz and Hopf

@dataclass(frozen=True)
class AbelianGroup:
    free: int
    torsion: tuple[int, ...]

    def is_zero(self) -> bool:
        return self.free == 0 and not self.torsion

    def __str__(self):
        parts = [f"Z^{self.free}"] if self.free else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class HurewiczResult:
    nonzero: bool
    matrix: tuple[tuple[int, ...], ...]
    pi2: str            # H_2 of the cover
    h2: str             # H_2 of the base

    def __bool__(self):
        return self.nonzero


def induced_map_h2(C: CoveringComplex):
    """pi_*: H_2(cover; Z) -> H_2(base; Z) from the cell-level projection."""
    E = C.equivariant
    Hs, Ht = _integral(E, C)
    return induced_map(Hs, Ht, C.projection(2), 2)


def hurewicz_nonzero(X, budget: int = DEFAULT_COSET_BUDGET) -> HurewiczResult:
    """Is pi_2 -> H_2 nonzero?  pi_2 is H_2 of the universal cover."""
    C = finite_cover(X, budget)
    if C.equivariant.dim < 2:
        return HurewiczResult(False, (), "0", "0")
    m = induced_map_h2(C)
    return HurewiczResult(not m.is_zero(), tuple(tuple(r) for r in m.matrix),
                          m.source.describe(), m.target.describe())


def hopf_h2_group(X, budget: int = DEFAULT_COSET_BUDGET) -> AbelianGroup:
    """coker(pi_*: H_2(cover) -> H_2(base)), i.e. H_2 of the fundamental group."""
    C = finite_cover(X, budget)
    if C.equivariant.dim < 2:
        # no 2-cells: H_2(base) = 0
        return AbelianGroup(0, ())
    m = induced_map_h2(C)
    images = [[row[j] for row in m.matrix] for j in range(len(m.source.generators))]
    free, tors = cokernel(m.target, images)
    return AbelianGroup(free, tuple(tors))


# ---------------------------------------------------------------------------
# condition (C)

VERDICTS = ("holds-via-i'", "holds-via-dimension-gap", "inconclusive")


@dataclass(frozen=True)
class ConditionCReport:
    ell: int
    h2_group: int | None
    h2_space: int | None
    h3_group: int | None
    h3_space: int | None
    hurewicz_nonzero: bool | None
    verdict: str
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(self.verdict)
        if self.verdict == VERDICTS[0] and not self.hurewicz_nonzero:
            raise ValueError("holds-via-i' requires a nonzero Hurewicz map")
        if self.verdict == VERDICTS[1] and not (self.h3_group or 0) > (self.h3_space or 0):
            raise ValueError("dimension gap verdict requires dim H^3(G) > dim H^3(M)")


def _space_cohomology(C: CoveringComplex, k: int, ell: int) -> int:
    return cohomology_field(C.base_complex, k, ell)


def condition_c_check(X, ell: int, *, budget: int = DEFAULT_COSET_BUDGET,
                      group_cap: int = DEFAULT_GROUP_CAP,
                      degree_cap: int = DEFAULT_DEGREE_CAP) -> ConditionCReport:
    """Decide condition (C) where this is possible; never reports failure.

    Verdicts, in order: a nonzero Hurewicz map; a dimension gap
    dim H^3(G) > dim H^3(M); otherwise inconclusive.
    """
    notes: list[str] = []
    try:
        C = finite_cover(X, budget)
    except BudgetExceededError as exc:
        return ConditionCReport(ell, None, None, None, None, None, "inconclusive", (str(exc),))
    hur = hurewicz_nonzero(X, budget).nonzero
    h2M = _space_cohomology(C, 2, ell)
    h3M = _space_cohomology(C, 3, ell)
    h2G = h3G = None
    try:
        dims = bar_cohomology_dims(C.group, ell, 3, cap=group_cap, degree_cap=degree_cap)
        h2G, h3G = dims[2], dims[3]
    except SizeLimitError as exc:
        notes.append(f"group cohomology skipped: {exc}")
    if hur:
        verdict = "holds-via-i'"
    elif h3G is not None and h3G > h3M:
        verdict = "holds-via-dimension-gap"
        if C.equivariant.dim < 3:
            notes.append("complex-level: the model has no 3-cells, so the gap is a statement "
                         "about this complex rather than a 3-manifold")
    else:
        verdict = "inconclusive"
    return ConditionCReport(ell, h2G, h2M, h3G, h3M, hur, verdict, tuple(notes))


# ---------------------------------------------------------------------------
# Cartan-Leray bookkeeping

@dataclass(frozen=True)
class CartanLerayReport:
    ell: int
    h2_group: int
    h2_space: int
    h2_invariant: int
    h3_group: int
    h3_space: int
    pi_star: tuple[tuple[int, ...], ...]   # H^2(M) -> H^2(cover), rows = cover basis
    rank_pi_star: int
    kernel_pi_star: int
    kernel_identity: bool
    connecting_bound: bool

    @property
    def dims(self) -> tuple[int, int, int, int, int]:
        return (self.h2_group, self.h2_space, self.h2_invariant, self.h3_group, self.h3_space)

    @property
    def verdict(self) -> str:
        return "pass" if self.kernel_identity and self.connecting_bound else "fail"


def _deck_generators(G: FiniteGroup) -> list[int]:
    gens = sorted({g for g in (G.gen_images or []) if g != 0})
    return gens or [0]


def cartan_leray_report(X, ell: int, *, budget: int = DEFAULT_COSET_BUDGET,
                        group_cap: int = DEFAULT_GROUP_CAP,
                        degree_cap: int = DEFAULT_DEGREE_CAP) -> CartanLerayReport:
    """The five terms 0 -> H^2(G) -> H^2(M) -> H^2_inv(cover) -> H^3(G) -> H^3(M).

    Cohomology maps are transposes of the homology maps over F_l: the deck
    transformation g acts on H^2(cover) by A_g^T and pi^* = (pi_*)^T.
    """
    C = finite_cover(X, budget)
    dims = bar_cohomology_dims(C.group, ell, 3, cap=group_cap, degree_cap=degree_cap)
    h2M = _space_cohomology(C, 2, ell)
    h3M = _space_cohomology(C, 3, ell)
    Hc = FieldHomology(C.chain_complex.boundaries, ell)
    Hb = FieldHomology(C.base_complex.boundaries, ell)
    d = Hc.dim(2)
    actions = []
    for g in _deck_generators(C.group):
        A = induced_map_mod_p(Hc, Hc, C.deck_matrix(g, 2), 2) if d else np.zeros((0, 0), np.int64)
        actions.append(A.T % ell)
    inv_dim, _ = invariant_subspace(actions, ell) if d else (0, None)
    push = induced_map_mod_p(Hc, Hb, C.projection(2), 2) if d and Hb.dim(2) else \
        np.zeros((Hb.dim(2), d), np.int64)
    pull = push.T % ell
    rank = rank_mod_p(pull, ell) if pull.size else 0
    kernel = h2M - rank
    return CartanLerayReport(
        ell, dims[2], h2M, inv_dim, dims[3], h3M,
        tuple(tuple(int(v) for v in row) for row in pull), rank, kernel,
        kernel == dims[2], inv_dim - rank <= dims[3])


# ---------------------------------------------------------------------------
# local systems on the free loop space

@dataclass(frozen=True)
class LoopCensus:
    ell: int
    invariant_h2: int     # a = dim H^2_inv(cover; F_l)
    h1: int               # b = dim H^1(M; F_l)
    count: int            # l^(a+b)
    exists_trivial_on_base: bool


def loop_census(X, ell: int, *, budget: int = DEFAULT_COSET_BUDGET) -> LoopCensus:
    """|Hom(pi_1(L_0 M), Z/l)| = l^(a + b) and whether a > 0."""
    C = finite_cover(X, budget)
    Hc = FieldHomology(C.chain_complex.boundaries, ell)
    d = Hc.dim(2)
    if d:
        actions = [induced_map_mod_p(Hc, Hc, C.deck_matrix(g, 2), 2).T % ell
                   for g in _deck_generators(C.group)]
        a, _ = invariant_subspace(actions, ell)
    else:
        a = 0
    b = _space_cohomology(C, 1, ell)
    systems = enumerate_local_systems(C.presentation, ell)
    if len(systems) != ell ** b:
        raise AssertionError("local system count disagrees with dim H^1")
    return LoopCensus(ell, a, b, ell ** (a + b), a > 0)


# ---------------------------------------------------------------------------
# the H-space obstruction

@dataclass(frozen=True)
class ObstructionCertificate:
    ell: int
    system: LocalSystem
    degree: int
    rank: int

    def describe(self) -> str:
        return (f"certificate: l={self.ell} system [{self.system.format()}] "
                f"H_{self.degree} has rank {self.rank}")


@dataclass(frozen=True)
class NoneFound:
    primes: tuple[int, ...]
    systems_checked: int
    max_degree: int

    def describe(self) -> str:
        return (f"none-found: {self.systems_checked} nontrivial systems over primes "
                f"{list(self.primes)}, degrees 0..{self.max_degree}")


def hspace_obstruction(X, primes: Sequence[int]):
    """First nonzero twisted homology group among nontrivial Z/l systems.

    Search order: primes ascending, systems in lexicographic exponent order,
    degrees ascending.  Works on the edge-path model directly, so a finite
    fundamental group is not required.
    """
    E = as_equivariant(X)
    checked = 0
    for ell in sorted(set(primes)):
        for L in enumerate_local_systems(E.presentation, ell):
            if is_trivial(L):
                continue
            checked += 1
            betti = betti_twisted(twisted_complex(E, L, check=False)).betti
            for k, b in enumerate(betti):
                if b:
                    return ObstructionCertificate(ell, L, k, b)
    return NoneFound(tuple(sorted(set(primes))), checked, E.dim)


def verify_certificate(X, cert: ObstructionCertificate) -> bool:
    E = as_equivariant(X)
    if cert.system.presentation != E.presentation or is_trivial(cert.system):
        return False
    betti = betti_twisted(twisted_complex(E, cert.system, check=True)).betti
    return cert.degree < len(betti) and betti[cert.degree] == cert.rank > 0


# ---------------------------------------------------------------------------
# vanishing on the nerve

@dataclass(frozen=True)
class VanishingWitness:
    element: int                    # g with chi(g) != 1
    coefficient: CyclotomicNumber   # (1 - chi(g))^-1
    chain: BarChain                 # coefficient * [g]
    boundary: BarChain              # should be [ ]
    betti: tuple[int, ...]          # twisted Betti numbers in degrees 0..N

    @property
    def bounds_unit(self) -> bool:
        return self.boundary == unit_chain(self.chain.group, self.chain.chi)

    @property
    def vanishes(self) -> bool:
        return not any(self.betti)


def vanishing_witness(G: FiniteGroup, chi: LocalSystem, N: int, *,
                      cap: int = DEFAULT_GROUP_CAP) -> VanishingWitness:
    """Degree-1 chain c with d c = [ ], plus twisted Betti numbers up to degree N."""
    if not G.is_abelian():
        raise InvalidInputError("the vanishing witness is built for abelian groups")
    if is_trivial(chi):
        raise PreconditionError("the character is trivial, so no 1 - g is a unit")
    vals = character_values(G, chi)
    g = next(h for h in range(1, G.order) if vals[h])
    u = unit_one_minus(RootOfUnity(chi.ell, vals[g]))
    c = BarChain(G, chi, 1, {(g,): u})
    dc = bar_chain_boundary(c)
    E = nerve_complex(G, N + 1, cap=cap)
    betti = betti_twisted(twisted_complex(E, chi, check=False)).betti[: N + 1]
    return VanishingWitness(g, u, c, dc, tuple(betti))


def contraction(w: VanishingWitness, x: BarChain) -> BarChain:
    """s(x) = c * x; d s + s d = 1 because d c = [ ] and [ ] is the unit."""
    return shuffle_product(w.chain, x)

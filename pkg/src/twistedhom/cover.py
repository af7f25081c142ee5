"""Equivariant cellular models and finite universal covers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import BudgetExceededError, InvalidInputError
from .local_systems import EquivariantComplex, GroupRingElement, GroupRingMatrix
from .matrix import SparseMatrix
from .presentation import (DEFAULT_COSET_BUDGET, CosetTable, EdgePathData, FiniteGroup,
                           GroupPresentation, edge_path_data, group_from_coset_table,
                           product_presentation, todd_coxeter)
from .simplicial import (IntegerChainComplex, SimplicialComplex, boundary_matrices,
                         tensor_boundaries)


def edge_path_complex(K: SimplicialComplex, basepoint: int | None = None) -> EquivariantComplex:
    """Boundaries of the distinguished lifts of K's simplices over Z[pi_1].

    The lift of ``(v0, ..., vk)`` starts at the lift of ``v0`` joined to the
    base lift by the tree; its 0-th face then starts at ``g(v0 v1) . v1~``,
    so

        d s~ = w(v0 v1) (d_0 s)~ + sum_{i >= 1} (-1)^i (d_i s)~

    where ``w(e)`` is the generator word of the edge (empty on the tree).
    """
    P, data = edge_path_data(K, basepoint)
    mats = [GroupRingMatrix(P, SparseMatrix(0, len(K.cells[0])))]
    one = GroupRingElement.scalar(1)
    for k in range(1, K.dim + 1):
        faces = K.index[k - 1]
        cols = []
        for s in K.cells[k]:
            col = {faces[s[1:]]: GroupRingElement.word(data.edge_word[(s[0], s[1])])}
            for i in range(1, k + 1):
                col[faces[s[:i] + s[i + 1:]]] = -one if i % 2 else one
            cols.append(col)
        mats.append(GroupRingMatrix(P, SparseMatrix(len(K.cells[k - 1]), len(K.cells[k]), cols)))
    E = EquivariantComplex(P, mats, base=K, labels=[list(c) for c in K.cells])
    E.edge_data = data
    return E


def equivariant_product(A: EquivariantComplex, B: EquivariantComplex) -> EquivariantComplex:
    """Cellular product over the direct product of the two groups."""
    P = product_presentation(A.presentation, B.presentation)
    m = A.presentation.ngens

    def shift(e: GroupRingElement) -> GroupRingElement:
        return GroupRingElement({tuple(x + m if x > 0 else x - m for x in w): c
                                 for w, c in e.terms.items()})

    da = [M.matrix for M in A.boundaries]
    db = [M.matrix.map(shift) for M in B.boundaries]
    mats, cells = tensor_boundaries(da, db)
    la = A.labels or [list(range(n)) for n in A.sizes()]
    lb = B.labels or [list(range(n)) for n in B.sizes()]
    labels = [[(la[p][i], lb[n - p][j]) for (p, i, j) in cs] for n, cs in enumerate(cells)]
    name = f"{A.name or 'A'} x {B.name or 'B'}"
    return EquivariantComplex(P, [GroupRingMatrix(P, M) for M in mats], labels=labels, name=name)


@dataclass
class CoveringComplex:
    """The universal cover of an equivariant model with finite group G.

    Lifted cell ``(c, h)`` has index ``c * N + h``; the distinguished lift of
    c is ``(c, 0)``.  The deck transformation g sends ``(c, h)`` to
    ``(c, g h)``.
    """

    equivariant: EquivariantComplex
    table: CosetTable
    group: FiniteGroup
    chain_complex: IntegerChainComplex

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def base(self):
        return self.equivariant.base

    @property
    def presentation(self) -> GroupPresentation:
        return self.equivariant.presentation

    @cached_property
    def base_complex(self) -> IntegerChainComplex:
        if self.base is not None:
            return boundary_matrices(self.base)
        return self.equivariant.augmentation()

    def euler_characteristic(self) -> int:
        return self.chain_complex.euler_characteristic()

    def deck_permutation(self, g: int, k: int) -> list[int]:
        N = self.order
        row = self.group.mul_table[g]
        return [c * N + row[h] for c in range(self.equivariant.sizes()[k]) for h in range(N)]

    def deck_matrix(self, g: int, k: int) -> SparseMatrix:
        perm = self.deck_permutation(g, k)
        return SparseMatrix(len(perm), len(perm), [{perm[j]: 1} for j in range(len(perm))])

    def projection(self, k: int) -> SparseMatrix:
        N = self.order
        n = self.equivariant.sizes()[k]
        return SparseMatrix(n, n * N, [{j // N: 1} for j in range(n * N)])

    def as_simplicial(self) -> SimplicialComplex:
        """The lifted simplicial complex (vertex (v, h) labelled v*N + h)."""
        K = self.base
        data: EdgePathData | None = getattr(self.equivariant, "edge_data", None)
        if K is None or data is None:
            raise InvalidInputError("cover has no simplicial structure")
        G, N = self.group, self.order
        elem = {e: G.eval_word(w) for e, w in data.edge_word.items()}
        simplices = []
        for s in K.facets():
            for h in range(N):
                verts = [s[0] * N + h]
                for v in s[1:]:
                    verts.append(v * N + G.mul(h, elem[(s[0], v)]))
                simplices.append(verts)
        return SimplicialComplex(simplices)


def finite_group_of(P: GroupPresentation, budget: int = DEFAULT_COSET_BUDGET):
    T = todd_coxeter(P, budget)
    return T, group_from_coset_table(T)


def cover_from_group_ring(E: EquivariantComplex, table: CosetTable | None = None, *,
                          budget: int = DEFAULT_COSET_BUDGET) -> CoveringComplex:
    """Expand a free Z[G]-complex into the integer complex of the cover."""
    if table is None:
        table = todd_coxeter(E.presentation, budget)
    elif table.presentation != E.presentation:
        raise InvalidInputError("coset table is for a different presentation")
    G = group_from_coset_table(table)
    N = G.order
    mats = []
    for k, M in enumerate(E.boundaries):
        rows = M.shape[0] * N
        lifted_entries = []
        for j, col in enumerate(M.matrix.cols):
            lifted_entries.append({i: e.in_group(G) for i, e in col.items()})
        cols = []
        for j in range(M.shape[1]):
            src = lifted_entries[j]
            for h in range(N):
                row = G.mul_table[h]
                out: dict[int, int] = {}
                for i, zg in src.items():
                    for w, c in zg.items():
                        r = i * N + row[w]
                        out[r] = out.get(r, 0) + c
                cols.append(out)
        mats.append(SparseMatrix(rows, M.shape[1] * N, cols))
    labels = None
    if E.labels is not None:
        labels = [[(c, h) for c in E.labels[k] for h in range(N)] for k in range(len(mats))]
    C = IntegerChainComplex(mats, labels, check=True)
    return CoveringComplex(E, table, G, C)


def universal_cover(K: SimplicialComplex, T: CosetTable | None = None, *,
                    budget: int = DEFAULT_COSET_BUDGET) -> CoveringComplex:
    """Universal cover of a connected simplicial complex with finite pi_1.

    ``T`` must come from :func:`fundamental_group` of K (same presentation);
    when omitted it is enumerated with the given budget.
    """
    E = edge_path_complex(K)
    return cover_from_group_ring(E, T, budget=budget)


def equivariant_boundary(C: CoveringComplex) -> list[GroupRingMatrix]:
    return list(C.equivariant.boundaries)


def require_finite(E: EquivariantComplex, budget: int = DEFAULT_COSET_BUDGET) -> CoveringComplex:
    """Cover for cover-dependent operations; over-budget groups are reported."""
    try:
        return cover_from_group_ring(E, budget=budget)
    except BudgetExceededError as exc:
        raise BudgetExceededError(
            f"{exc}; this operation needs a finite fundamental group") from None

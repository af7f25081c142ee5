"""Finite simplicial complexes and integral chain complexes."""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .errors import InvalidComplexError, InvalidInputError
from .matrix import SparseMatrix


class SimplicialComplex:
    """A face-closed set of strictly increasing vertex tuples.

    Cells of each dimension are indexed in lexicographic order; this ordering
    fixes the row/column order of every boundary matrix.
    """

    def __init__(self, simplices: Iterable[Sequence[int]], *, closure: bool = True):
        given = set()
        for s in simplices:
            t = tuple(sorted(int(v) for v in s))
            if not t:
                continue
            if len(set(t)) != len(t):
                raise InvalidInputError(f"repeated vertex in simplex {s!r}")
            if t[0] < 0:
                raise InvalidInputError(f"negative vertex label in {s!r}")
            given.add(t)
        if closure:
            full = set()
            for t in given:
                for k in range(1, len(t) + 1):
                    full.update(combinations(t, k))
        else:
            missing = find_missing_face(given)
            if missing is not None:
                raise InvalidInputError(f"complex is not face-closed: missing face {missing!r}")
            full = given
        dim = max((len(t) for t in full), default=0) - 1
        self.cells: list[list[tuple[int, ...]]] = [[] for _ in range(dim + 1)]
        for t in full:
            self.cells[len(t) - 1].append(t)
        for c in self.cells:
            c.sort()
        self.index: list[dict[tuple[int, ...], int]] = [
            {t: i for i, t in enumerate(c)} for c in self.cells]
        self.vertices: list[int] = [t[0] for t in self.cells[0]] if self.cells else []

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def simplices(self) -> list[tuple[int, ...]]:
        return [t for c in self.cells for t in c]

    def facets(self) -> list[tuple[int, ...]]:
        """Maximal simplices, sorted by dimension then lexicographically."""
        covered = set()
        for c in self.cells[1:]:
            for t in c:
                covered.update(combinations(t, len(t) - 1))
        return [t for c in self.cells for t in c if t not in covered]

    def edges(self) -> list[tuple[int, int]]:
        return list(self.cells[1]) if self.dim >= 1 else []

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        return len(_bfs_order(self, self.vertices[0])[0]) == len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.cells == other.cells

    def __repr__(self):
        return f"SimplicialComplex(f={self.f_vector()})"


def find_missing_face(simplices: set) -> tuple[int, ...] | None:
    for t in sorted(simplices, key=lambda s: (len(s), s)):
        if len(t) > 1:
            for f in combinations(t, len(t) - 1):
                if f not in simplices:
                    return f
    return None


def _bfs_order(K: SimplicialComplex, root: int):
    """Breadth-first search of the 1-skeleton, lowest vertex first."""
    adj: dict[int, list[int]] = {v: [] for v in K.vertices}
    for u, v in K.edges():
        adj[u].append(v)
        adj[v].append(u)
    for v in adj:
        adj[v].sort()
    parent = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in parent:
                parent[v] = u
                order.append(v)
                queue.append(v)
    return order, parent


def spanning_tree(K: SimplicialComplex, root: int) -> set[tuple[int, int]]:
    order, parent = _bfs_order(K, root)
    if len(order) != len(K.vertices):
        raise InvalidInputError("simplicial complex is not connected")
    return {tuple(sorted((v, p))) for v, p in parent.items() if p is not None}


class IntegerChainComplex:
    """Boundary matrices over Z, ``boundaries[k]`` mapping C_k -> C_{k-1}.

    ``boundaries[0]`` is the zero map out of C_0 (shape ``0 x n_0``).
    """

    def __init__(self, boundaries: Sequence[SparseMatrix],
                 labels: Sequence[Sequence[Hashable]] | None = None, *, check: bool = True):
        self.boundaries = list(boundaries)
        if not self.boundaries:
            self.boundaries = [SparseMatrix(0, 0)]
        if self.boundaries[0].nrows != 0:
            raise InvalidInputError("the boundary out of C_0 must have zero rows")
        for k in range(1, len(self.boundaries)):
            if self.boundaries[k].nrows != self.boundaries[k - 1].ncols:
                raise InvalidInputError(f"boundary {k} has incompatible shape")
        if labels is None:
            labels = [list(range(m.ncols)) for m in self.boundaries]
        self.labels = [list(x) for x in labels]
        if check:
            check_complex(self.boundaries)

    @property
    def dim(self) -> int:
        return len(self.boundaries) - 1

    def sizes(self) -> tuple[int, ...]:
        return tuple(m.ncols for m in self.boundaries)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.sizes()))

    def boundary(self, k: int) -> SparseMatrix:
        if k < 0 or k > self.dim + 1:
            raise IndexError(k)
        if k == self.dim + 1:
            return SparseMatrix(self.sizes()[-1], 0)
        return self.boundaries[k]

    def __repr__(self):
        return f"IntegerChainComplex(sizes={self.sizes()})"


def check_complex(boundaries: Sequence[SparseMatrix]) -> None:
    """Raise InvalidComplexError unless d_k d_{k+1} = 0 for every k."""
    for k in range(1, len(boundaries) - 1):
        prod = boundaries[k] @ boundaries[k + 1]
        if not prod.is_zero():
            raise InvalidComplexError(f"d_{k} d_{k + 1} != 0")


def boundary_matrices(K: SimplicialComplex) -> IntegerChainComplex:
    """Simplicial boundary with signs (-1)^i for deleting the i-th vertex."""
    mats = [SparseMatrix(0, len(K.cells[0]) if K.cells else 0)]
    for k in range(1, K.dim + 1):
        faces = K.index[k - 1]
        cols = []
        for t in K.cells[k]:
            col = {}
            for i in range(k + 1):
                col[faces[t[:i] + t[i + 1:]]] = -1 if i % 2 else 1
            cols.append(col)
        mats.append(SparseMatrix(len(K.cells[k - 1]), len(K.cells[k]), cols))
    return IntegerChainComplex(mats, [list(c) for c in K.cells] or [[]], check=False)


def tensor_cells(sizes_a: Sequence[int], sizes_b: Sequence[int]):
    """Cell index of the tensor complex: degree n cells ordered by (p, i, j)."""
    dim = len(sizes_a) + len(sizes_b) - 2
    cells: list[list[tuple[int, int, int]]] = [[] for _ in range(dim + 1)]
    for n in range(dim + 1):
        for p in range(max(0, n - len(sizes_b) + 1), min(n, len(sizes_a) - 1) + 1):
            q = n - p
            for i in range(sizes_a[p]):
                for j in range(sizes_b[q]):
                    cells[n].append((p, i, j))
    index = [{c: k for k, c in enumerate(cs)} for cs in cells]
    return cells, index


def tensor_boundaries(da: Sequence[SparseMatrix], db: Sequence[SparseMatrix]):
    """Graded tensor product d(a x b) = da x b + (-1)^|a| a x db.

    ``da``/``db`` list the boundaries including the zero map out of degree 0.
    Each entry comes from one factor only, so any entry type supporting
    negation and addition works (integers, group-ring elements).
    """
    sa = [m.ncols for m in da]
    sb = [m.ncols for m in db]
    cells, index = tensor_cells(sa, sb)
    mats = [SparseMatrix(0, len(cells[0]))]
    for n in range(1, len(cells)):
        cols = []
        for (p, i, j) in cells[n]:
            col: dict = {}
            q = n - p
            if p > 0:
                for r, v in da[p].cols[i].items():
                    col[index[n - 1][(p - 1, r, j)]] = v
            if q > 0:
                for r, v in db[q].cols[j].items():
                    key = index[n - 1][(p, i, r)]
                    w = -v if p % 2 else v
                    col[key] = col[key] + w if key in col else w
            cols.append(col)
        mats.append(SparseMatrix(len(cells[n - 1]), len(cells[n]), cols))
    return mats, cells


def tensor_complex(A: IntegerChainComplex, B: IntegerChainComplex) -> IntegerChainComplex:
    mats, cells = tensor_boundaries(A.boundaries, B.boundaries)
    labels = [[(A.labels[p][i], B.labels[n - p][j]) for (p, i, j) in cs]
              for n, cs in enumerate(cells)]
    return IntegerChainComplex(mats, labels, check=False)

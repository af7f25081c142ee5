"""A small column-sparse matrix, generic over the entry ring.

Entries may be Python ints, Fractions, CyclotomicNumbers, or anything
supporting ``+``, ``*`` and truthiness-as-nonzero.  Matrices are treated as
immutable once built.
"""

from __future__ import annotations

from typing import Any, Callable, Iterable, Sequence


class SparseMatrix:
    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: Sequence[dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [dict() for _ in range(ncols)]
        if len(cols) != ncols:
            raise ValueError("column count mismatch")
        self.cols = [dict((r, v) for r, v in c.items() if v) for c in cols]

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Any]]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        cols = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            for j, v in enumerate(row):
                if v:
                    cols[j][i] = v
        return cls(nrows, ncols, cols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int, one: Any = 1) -> "SparseMatrix":
        return cls(n, n, [{i: one} for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def get(self, i: int, j: int, zero: Any = 0) -> Any:
        return self.cols[j].get(i, zero)

    def entries(self) -> Iterable[tuple[int, int, Any]]:
        for j, c in enumerate(self.cols):
            for i in sorted(c):
                yield i, j, c[i]

    def to_dense(self, zero: Any = 0) -> list[list[Any]]:
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                out[i][j] = v
        return out

    def transpose(self) -> "SparseMatrix":
        cols = [dict() for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                cols[i][j] = v
        return SparseMatrix(self.ncols, self.nrows, cols)

    def map(self, fn: Callable[[Any], Any]) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols,
                            [{i: fn(v) for i, v in c.items()} for c in self.cols])

    def apply(self, vec: dict) -> dict:
        """Multiply by a sparse column vector given as {index: value}."""
        out: dict = {}
        for j, x in vec.items():
            if not x:
                continue
            for i, v in self.cols[j].items():
                out[i] = out[i] + v * x if i in out else v * x
        return {i: v for i, v in out.items() if v}

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseMatrix(self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.cols == other.cols

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def select(self, rows: Sequence[int], cols: Sequence[int]) -> "SparseMatrix":
        pos = {r: k for k, r in enumerate(rows)}
        out = []
        for j in cols:
            out.append({pos[i]: v for i, v in self.cols[j].items() if i in pos})
        return SparseMatrix(len(rows), len(cols), out)

"""Sparse matrices over an arbitrary exact ring.

Entries may be ints, rationals, prime-field elements, Laurent polynomials
or group-ring elements; anything with ``+``, ``*``, unary ``-`` and a
falsy zero works. Missing entries are the integer ``0``.

Matrices here act on the *right* of row vectors: a map ``V -> W`` has
shape ``dim V x dim W`` and the composite ``U -> V -> W`` is ``A @ B``.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Sequence


class Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: list[dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]
        if len(self.rows) != nrows:
            raise ValueError("row count mismatch")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int, one=1) -> "Matrix":
        return cls(n, n, [{i: one} for i in range(n)])

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        m = cls(nrows, ncols)
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    m.rows[i][j] = v
        return m

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, object]]) -> "Matrix":
        m = cls(nrows, ncols)
        for i, j, v in entries:
            m[i, j] = v
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, key):
        i, j = key
        return self.rows[i].get(j, 0)

    def __setitem__(self, key, value):
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(key)
        if value:
            self.rows[i][j] = value
        else:
            self.rows[i].pop(j, None)

    def items(self) -> Iterator[tuple[int, int, object]]:
        for i, row in enumerate(self.rows):
            for j in sorted(row):
                yield i, j, row[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def copy(self) -> "Matrix":
        return Matrix(self.nrows, self.ncols, [dict(r) for r in self.rows])

    def to_dense(self) -> list[list]:
        return [[row.get(j, 0) for j in range(self.ncols)] for row in self.rows]

    def map(self, f: Callable) -> "Matrix":
        out = Matrix(self.nrows, self.ncols)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                w = f(v)
                if w:
                    out.rows[i][j] = w
        return out

    def transpose(self) -> "Matrix":
        out = Matrix(self.ncols, self.nrows)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                out.rows[j][i] = v
        return out

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __neg__(self) -> "Matrix":
        return self.map(lambda v: -v)

    def scale(self, c) -> "Matrix":
        return self.map(lambda v: c * v)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        out = self.copy()
        for i, row in enumerate(other.rows):
            target = out.rows[i]
            for j, v in row.items():
                w = target.get(j, 0) + v
                if w:
                    target[j] = w
                else:
                    target.pop(j, None)
        return out

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = Matrix(self.nrows, other.ncols)
        orows = other.rows
        for i, row in enumerate(self.rows):
            acc: dict = {}
            for k, v in row.items():
                for j, w in orows[k].items():
                    if j in acc:
                        acc[j] = acc[j] + v * w
                    else:
                        acc[j] = v * w
            out.rows[i] = {j: x for j, x in acc.items() if x}
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.rows, other.rows))

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        cmap = {c: k for k, c in enumerate(col_idx)}
        out = Matrix(len(row_idx), len(col_idx))
        for k, r in enumerate(row_idx):
            out.rows[k] = {cmap[c]: v for c, v in self.rows[r].items() if c in cmap}
        return out

    def place(self, block: "Matrix", row0: int, col0: int) -> None:
        """Add ``block`` into self with its corner at ``(row0, col0)``."""
        for i, row in enumerate(block.rows):
            target = self.rows[row0 + i]
            for j, v in row.items():
                c = col0 + j
                w = target.get(c, 0) + v
                if w:
                    target[c] = w
                else:
                    target.pop(c, None)

    def first_difference(self, other: "Matrix") -> tuple[int, int, object, object] | None:
        """First ``(row, col, self_value, other_value)`` where the two differ."""
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        for i in range(self.nrows):
            a, b = self.rows[i], other.rows[i]
            if a == b:
                continue
            for j in sorted(set(a) | set(b)):
                if a.get(j, 0) != b.get(j, 0):
                    return i, j, a.get(j, 0), b.get(j, 0)
        return None


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    out = Matrix(sum(b.nrows for b in blocks), sum(b.ncols for b in blocks))
    r = c = 0
    for b in blocks:
        out.place(b, r, c)
        r += b.nrows
        c += b.ncols
    return out


def linear_combination(terms: Iterable[tuple[object, Matrix]], nrows: int, ncols: int) -> Matrix:
    out = Matrix(nrows, ncols)
    for coeff, m in terms:
        if coeff:
            out = out + m.scale(coeff)
    return out

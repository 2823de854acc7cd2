"""Exact rational matrices and vectors.

Matrices are stored column-sparse: ``cols[j]`` maps row index -> nonzero
Fraction.  Columns index the source basis throughout the package, so a
degree-n boundary matrix has shape dims[n-1] x dims[n] and composition is
plain ``A @ B``.

All elimination routines use deterministic pivoting (smallest row index
first, columns in given order) so that bases, solutions, and reports are
reproducible byte for byte.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rationals import ZERO, ONE, rat

Vector = tuple[Fraction, ...]


def vec(values: Iterable) -> Vector:
    return tuple(rat(v) for v in values)


def vzero(n: int) -> Vector:
    return (ZERO,) * n


def vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(s: Fraction, a: Vector) -> Vector:
    return tuple(s * x for x in a)


def vdot(a: Vector, b: Vector) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), ZERO)


class Matrix:
    """Immutable-by-convention exact rational matrix.

    Do not mutate ``cols`` after construction; every operation returns a
    fresh instance.  Zero entries are never stored.
    """

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: list[dict[int, Fraction]] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimension")
        self.nrows = nrows
        self.ncols = ncols
        if cols is None:
            cols = [dict() for _ in range(ncols)]
        if len(cols) != ncols:
            raise ValueError("column count mismatch")
        self.cols = cols

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [{i: ONE} for i in range(n)])

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        cols: list[dict[int, Fraction]] = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                v = rat(v)
                if v != 0:
                    cols[j][i] = v
        return cls(nrows, ncols, cols)

    @classmethod
    def from_cols(cls, nrows: int, columns: Sequence[Sequence]) -> "Matrix":
        cols: list[dict[int, Fraction]] = []
        for col in columns:
            if len(col) != nrows:
                raise ValueError("column length mismatch")
            cols.append({i: rat(v) for i, v in enumerate(col) if rat(v) != 0})
        return cls(nrows, len(cols), cols)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int,
                     entries: Iterable[tuple[int, int, Fraction]]) -> "Matrix":
        cols: list[dict[int, Fraction]] = [dict() for _ in range(ncols)]
        for i, j, v in entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValueError(f"entry ({i},{j}) out of range")
            v = rat(v)
            if v != 0:
                cols[j][i] = cols[j].get(i, ZERO) + v
                if cols[j][i] == 0:
                    del cols[j][i]
        return cls(nrows, ncols, cols)

    @classmethod
    def block(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix; shapes must be consistent per row/column."""
        row_dims = [row[0].nrows for row in grid]
        col_dims = [blk.ncols for blk in grid[0]]
        for bi, row in enumerate(grid):
            if len(row) != len(col_dims):
                raise ValueError("ragged block grid")
            for bj, blk in enumerate(row):
                if blk.nrows != row_dims[bi] or blk.ncols != col_dims[bj]:
                    raise ValueError("inconsistent block shapes")
        row_off = [0]
        for d in row_dims:
            row_off.append(row_off[-1] + d)
        col_off = [0]
        for d in col_dims:
            col_off.append(col_off[-1] + d)
        out = [dict() for _ in range(col_off[-1])]
        for bi, row in enumerate(grid):
            for bj, blk in enumerate(row):
                for j, col in enumerate(blk.cols):
                    dst = out[col_off[bj] + j]
                    for i, v in col.items():
                        dst[row_off[bi] + i] = v
        return cls(row_off[-1], col_off[-1], out)

    # -- access -------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def entry(self, i: int, j: int) -> Fraction:
        return self.cols[j].get(i, ZERO)

    def column(self, j: int) -> Vector:
        col = self.cols[j]
        return tuple(col.get(i, ZERO) for i in range(self.nrows))

    def to_rows(self) -> list[list[Fraction]]:
        rows = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.cols == other.cols

    def __hash__(self):
        raise TypeError("Matrix is not hashable")

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # -- arithmetic ---------------------------------------------------

    def __neg__(self) -> "Matrix":
        return Matrix(self.nrows, self.ncols,
                      [{i: -v for i, v in col.items()} for col in self.cols])

    def scale(self, s) -> "Matrix":
        s = rat(s)
        if s == 0:
            return Matrix.zeros(self.nrows, self.ncols)
        return Matrix(self.nrows, self.ncols,
                      [{i: s * v for i, v in col.items()} for col in self.cols])

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in add")
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            for i, v in b.items():
                w = c.get(i, ZERO) + v
                if w == 0:
                    c.pop(i, None)
                else:
                    c[i] = w
            cols.append(c)
        return Matrix(self.nrows, self.ncols, cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch in matmul: {self.shape} @ {other.shape}")
        cols: list[dict[int, Fraction]] = []
        for bcol in other.cols:
            acc: dict[int, Fraction] = {}
            for k, bv in bcol.items():
                for i, av in self.cols[k].items():
                    w = acc.get(i, ZERO) + av * bv
                    if w == 0:
                        acc.pop(i, None)
                    else:
                        acc[i] = w
            cols.append(acc)
        return Matrix(self.nrows, other.ncols, cols)

    def transpose(self) -> "Matrix":
        cols: list[dict[int, Fraction]] = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                cols[i][j] = v
        return Matrix(self.ncols, self.nrows, cols)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        acc: dict[int, Fraction] = {}
        for j, x in enumerate(v):
            if x == 0:
                continue
            for i, a in self.cols[j].items():
                acc[i] = acc.get(i, ZERO) + a * x
        return tuple(acc.get(i, ZERO) for i in range(self.nrows))

    def select_columns(self, indices: Sequence[int]) -> "Matrix":
        return Matrix(self.nrows, len(indices), [dict(self.cols[j]) for j in indices])


# -- elimination ------------------------------------------------------
#
# Column echelon with recorded recipes.  A "pivot" is a reduced column
# normalized to leading entry 1 at its smallest nonzero row; recipes
# express each pivot as a combination of the columns fed in so far.


class _Echelon:
    def __init__(self, nrows: int):
        self.nrows = nrows
        self.pivots: dict[int, dict[int, Fraction]] = {}   # pivot row -> column
        self.recipes: dict[int, dict[int, Fraction]] = {}  # pivot row -> combination
        self.order: list[int] = []                          # pivot rows in creation order

    def _reduce(self, col: dict[int, Fraction], recipe: dict[int, Fraction]):
        while col:
            p = min(col)
            piv = self.pivots.get(p)
            if piv is None:
                return p, col, recipe
            f = col[p]
            for i, v in piv.items():
                w = col.get(i, ZERO) - f * v
                if w == 0:
                    col.pop(i, None)
                else:
                    col[i] = w
            for k, v in self.recipes[p].items():
                w = recipe.get(k, ZERO) - f * v
                if w == 0:
                    recipe.pop(k, None)
                else:
                    recipe[k] = w
        return None, col, recipe

    def feed(self, col: dict[int, Fraction], tag: int) -> dict[int, Fraction] | None:
        """Reduce one column; return a nullspace recipe if it vanished."""
        p, col, recipe = self._reduce(dict(col), {tag: ONE})
        if p is None:
            return recipe
        lead = col[p]
        self.pivots[p] = {i: v / lead for i, v in col.items()}
        self.recipes[p] = {k: v / lead for k, v in recipe.items()}
        self.order.append(p)
        return None

    def residual(self, col: dict[int, Fraction]):
        """Reduce without inserting; return (residual, combination by pivot row)."""
        col = dict(col)
        combo: dict[int, Fraction] = {}
        while col:
            p = min(col)
            piv = self.pivots.get(p)
            if piv is None:
                return col, combo
            f = col[p]
            combo[p] = combo.get(p, ZERO) + f
            for i, v in piv.items():
                w = col.get(i, ZERO) - f * v
                if w == 0:
                    col.pop(i, None)
                else:
                    col[i] = w
        return col, combo

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(mat: Matrix) -> int:
    # rank is transpose-invariant; reduce along the short axis
    work = mat.transpose() if mat.ncols > mat.nrows else mat
    ech = _Echelon(work.nrows)
    for j, col in enumerate(work.cols):
        ech.feed(col, j)
        if ech.rank == min(work.shape):
            break
    return ech.rank


def nullspace(mat: Matrix) -> Matrix:
    """Columns form a basis of {x : mat @ x = 0}, deterministic order."""
    ech = _Echelon(mat.nrows)
    kernel: list[dict[int, Fraction]] = []
    for j, col in enumerate(mat.cols):
        recipe = ech.feed(col, j)
        if recipe is not None:
            kernel.append(recipe)
    return Matrix(mat.ncols, len(kernel), kernel)


def independent_column_indices(mat: Matrix) -> list[int]:
    ech = _Echelon(mat.nrows)
    out = []
    for j, col in enumerate(mat.cols):
        if ech.feed(col, j) is None:
            out.append(j)
    return out


def column_space_basis(mat: Matrix) -> Matrix:
    """The original columns at the independent indices."""
    return mat.select_columns(independent_column_indices(mat))


def solve(mat: Matrix, rhs: Sequence[Fraction]) -> Vector | None:
    """One exact solution of mat @ x = rhs (free coordinates 0), or None."""
    if len(rhs) != mat.nrows:
        raise ValueError("rhs length mismatch")
    ech = _Echelon(mat.nrows)
    for j, col in enumerate(mat.cols):
        ech.feed(col, j)
    target = {i: rat(v) for i, v in enumerate(rhs) if rat(v) != 0}
    residual, combo = ech.residual(target)
    if residual:
        return None
    x = [ZERO] * mat.ncols
    for p, f in combo.items():
        for k, v in ech.recipes[p].items():
            x[k] += f * v
    return tuple(x)


def solve_matrix(mat: Matrix, rhs: Matrix) -> Matrix | None:
    """Columnwise exact solve mat @ X = rhs; None if any column fails."""
    ech = _Echelon(mat.nrows)
    for j, col in enumerate(mat.cols):
        ech.feed(col, j)
    out: list[dict[int, Fraction]] = []
    for col in rhs.cols:
        residual, combo = ech.residual(col)
        if residual:
            return None
        acc: dict[int, Fraction] = {}
        for p, f in combo.items():
            for k, v in ech.recipes[p].items():
                w = acc.get(k, ZERO) + f * v
                if w == 0:
                    acc.pop(k, None)
                else:
                    acc[k] = w
        out.append(acc)
    return Matrix(mat.ncols, rhs.ncols, out)


def extend_independent(base: Matrix, extra: Matrix) -> list[int]:
    """Indices of extra's columns that are independent modulo col(base)."""
    if base.nrows != extra.nrows:
        raise ValueError("row mismatch")
    ech = _Echelon(base.nrows)
    for j, col in enumerate(base.cols):
        ech.feed(col, j)
    picked = []
    for j, col in enumerate(extra.cols):
        if ech.feed(col, base.ncols + j) is None:
            picked.append(j)
    return picked


def inverse(mat: Matrix) -> Matrix | None:
    if mat.nrows != mat.ncols:
        raise ValueError("inverse of non-square matrix")
    inv = solve_matrix(mat, Matrix.identity(mat.nrows))
    if inv is None:
        return None
    return inv

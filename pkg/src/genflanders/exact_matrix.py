"""Exact dense matrices over the rationals.

Entries are :class:`fractions.Fraction` values, kept in canonical form by
the standard library.  Matrices are immutable; every operation returns a
new matrix.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

Scalar = Fraction


class DimensionError(ValueError):
    """Shapes do not conform for the requested operation."""


class SingularMatrixError(ValueError):
    """Raised when inverting a matrix whose rank is below its size."""

    def __init__(self, size: int, rank: int):
        super().__init__(f"singular {size}x{size} matrix (rank {rank})")
        self.size = size
        self.rank = rank


def to_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


class Matrix:
    """Immutable rows x cols matrix of Fractions stored row-major."""

    __slots__ = ("rows", "cols", "_e", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        e = tuple(to_scalar(x) for x in entries)
        if rows < 0 or cols < 0:
            raise DimensionError("negative dimension")
        if len(e) != rows * cols:
            raise DimensionError(
                f"{len(e)} entries given for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self._e = e
        self._hash = None

    @classmethod
    def _raw(cls, rows: int, cols: int, entries: tuple) -> "Matrix":
        # entries already a tuple of Fractions
        m = object.__new__(cls)
        m.rows, m.cols, m._e, m._hash = rows, cols, entries, None
        return m

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        for c in columns:
            if len(c) != rows:
                raise DimensionError("ragged columns")
        return cls(rows, len(columns),
                   (columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one, zero = Fraction(1), Fraction(0)
        return cls._raw(n, n, tuple(one if i == j else zero
                                    for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        if cols is None:
            cols = rows
        return cls._raw(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[Fraction(0)] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls(rows, cols, (x for r in out for x in r))

    # -- access ------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def entries(self) -> tuple:
        return self._e

    def __getitem__(self, idx) -> Fraction:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        return self._e[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._e[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self._e[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        """Rows r0..r1-1 and columns c0..c1-1."""
        return Matrix._raw(r1 - r0, c1 - c0, tuple(
            self._e[i * self.cols + j] for i in range(r0, r1) for j in range(c0, c1)))

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.cols, self.rows, tuple(
            self._e[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    T = property(transpose)

    def is_zero(self) -> bool:
        return not any(self._e)

    # -- arithmetic --------------------------------------------------------

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other)
        return Matrix._raw(self.rows, self.cols,
                           tuple(a + b for a, b in zip(self._e, other._e)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other)
        return Matrix._raw(self.rows, self.cols,
                           tuple(a - b for a, b in zip(self._e, other._e)))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, tuple(-a for a in self._e))

    def scale(self, c) -> "Matrix":
        c = to_scalar(c)
        return Matrix._raw(self.rows, self.cols, tuple(c * a for a in self._e))

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        return mat_mul(self, other)

    def __pow__(self, k: int) -> "Matrix":
        return mat_pow(self, k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._e))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in self.row(i)) + "]"
                         for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def mat_mul(lhs: Matrix, rhs: Matrix) -> Matrix:
    if lhs.cols != rhs.rows:
        raise DimensionError(
            f"cannot multiply {lhs.rows}x{lhs.cols} by {rhs.rows}x{rhs.cols}")
    n, m, p = lhs.rows, lhs.cols, rhs.cols
    a, b = lhs._e, rhs._e
    bcols = [b[j::p] for j in range(p)] if p else []
    zero = Fraction(0)
    out = []
    for i in range(n):
        arow = a[i * m:(i + 1) * m]
        for j in range(p):
            s = zero
            for x, y in zip(arow, bcols[j]):
                if x and y:
                    s += x * y
            out.append(s)
    return Matrix._raw(n, p, tuple(out))


def mat_pow(m: Matrix, k: int) -> Matrix:
    if not m.is_square:
        raise DimensionError(f"power of non-square {m.rows}x{m.cols} matrix")
    if k < 0:
        raise ValueError("negative exponent")
    result = Matrix.identity(m.rows)
    base = m
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def rref(m: Matrix) -> tuple[Matrix, list[int], Matrix]:
    """Reduced row echelon form with the accumulated row transform.

    Returns ``(reduced, pivots, transform)`` with ``transform @ m == reduced``.
    The pivot in each column is the first nonzero entry at or below the
    current pivot row.
    """
    rows, cols = m.rows, m.cols
    a = m.to_rows()
    t = Matrix.identity(rows).to_rows()
    pivots: list[int] = []
    pr = 0
    for c in range(cols):
        if pr == rows:
            break
        sel = next((i for i in range(pr, rows) if a[i][c]), None)
        if sel is None:
            continue
        if sel != pr:
            a[pr], a[sel] = a[sel], a[pr]
            t[pr], t[sel] = t[sel], t[pr]
        piv = a[pr][c]
        if piv != 1:
            inv = 1 / piv
            a[pr] = [x * inv for x in a[pr]]
            t[pr] = [x * inv for x in t[pr]]
        for i in range(rows):
            f = a[i][c]
            if i != pr and f:
                ai, ap = a[i], a[pr]
                a[i] = [x - f * y for x, y in zip(ai, ap)]
                ti, tp = t[i], t[pr]
                t[i] = [x - f * y for x, y in zip(ti, tp)]
        pivots.append(c)
        pr += 1
    return (Matrix(rows, cols, (x for r in a for x in r)), pivots,
            Matrix(rows, rows, (x for r in t for x in r)))


def _pivots(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    # elimination without the transform, for rank-only queries
    rows, cols = m.rows, m.cols
    a = m.to_rows()
    pivots = []
    pr = 0
    for c in range(cols):
        if pr == rows:
            break
        sel = next((i for i in range(pr, rows) if a[i][c]), None)
        if sel is None:
            continue
        a[pr], a[sel] = a[sel], a[pr]
        inv = 1 / a[pr][c]
        a[pr] = [x * inv for x in a[pr]]
        for i in range(rows):
            f = a[i][c]
            if i != pr and f:
                a[i] = [x - f * y for x, y in zip(a[i], a[pr])]
        pivots.append(c)
        pr += 1
    return a, pivots


def rank(m: Matrix) -> int:
    return len(_pivots(m)[1])


def inverse(m: Matrix) -> Matrix:
    if not m.is_square:
        raise DimensionError(f"inverse of non-square {m.rows}x{m.cols} matrix")
    reduced, pivots, transform = rref(m)
    if len(pivots) < m.rows:
        raise SingularMatrixError(m.rows, len(pivots))
    return transform


def is_invertible(m: Matrix) -> bool:
    return m.is_square and rank(m) == m.rows


def nullspace_basis(m: Matrix) -> list[tuple]:
    """Basis of the right kernel, one vector per free column."""
    reduced, pivots = _pivots(m)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        basis.append(tuple(v))
    return basis


def colspace_basis(m: Matrix) -> list[tuple]:
    """The pivot columns of ``m`` itself."""
    return [m.column(j) for j in _pivots(m)[1]]


def rank_normal_form(m: Matrix) -> tuple[Matrix, int, Matrix]:
    """Factor a square ``m`` as ``P @ diag(I_r, 0) @ Q`` with P, Q invertible."""
    if not m.is_square:
        raise DimensionError("rank normal form needs a square matrix")
    n = m.rows
    reduced, pivots, transform = rref(m)
    r = len(pivots)
    p = inverse(transform)
    pivset = set(pivots)
    q_rows = [list(reduced.row(i)) for i in range(r)]
    for j in range(n):
        if j not in pivset:
            q_rows.append([Fraction(int(k == j)) for k in range(n)])
    return p, r, Matrix.from_rows(q_rows, n)


def rank_selector(n: int, r: int) -> Matrix:
    """diag(I_r, 0) of size n."""
    return Matrix.block_diag(Matrix.identity(r), Matrix.zeros(n - r))


def linearly_independent(vectors: Sequence[Sequence]) -> bool:
    """True when the given vectors are linearly independent."""
    if not vectors:
        return True
    return rank(Matrix.from_columns(vectors)) == len(vectors)

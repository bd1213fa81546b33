"""Exact dense linear algebra over the rationals.

Every scalar is a :class:`fractions.Fraction`; nothing in this package ever
touches a float.  Vectors are plain tuples of Fractions holding coordinates
relative to some fixed ordered basis.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, MalformedRationalError, NotNilpotentError, NotSquareError

Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; decimals, exponents and NaNs are rejected."""
    if isinstance(text, bool):
        raise MalformedRationalError(f"malformed rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise MalformedRationalError(f"malformed rational: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise MalformedRationalError(f"malformed rational: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise MalformedRationalError(f"zero denominator: {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _q(a) -> Fraction:
    return a if type(a) is Fraction else Fraction(a)


def vec(values: Iterable) -> Vector:
    return tuple(_q(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def add_vectors(x: Sequence, y: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(x, y, strict=True))


def sub_vectors(x: Sequence, y: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(x, y, strict=True))


def scale_vector(c, x: Sequence) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in x)


def is_zero_vector(x: Sequence) -> bool:
    return not any(x)


def linear_combination(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors, strict=True):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


class Matrix:
    """Immutable rectangular matrix of Fractions.

    As a linear map, column ``j`` is the image of the ``j``-th basis vector.
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(_q(a) for a in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise DimensionMismatchError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows
        self._hash = None

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls([[ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([unit_vector(n, i) for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> Matrix:
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls([[col[i] for col in columns] for i in range(rows)], len(columns))

    @property
    def entries(self) -> tuple:
        return self._data

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> Matrix:
        return Matrix(zip(*self._data), self.rows) if self.rows else Matrix.zeros(self.cols, 0)

    def trace(self) -> Fraction:
        if not self.is_square:
            raise NotSquareError("trace of a non-square matrix")
        return sum((self._data[i][i] for i in range(self.rows)), ZERO)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self._data)

    def flatten(self) -> Vector:
        return tuple(a for r in self._data for a in r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def _check_shape(self, other: Matrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError(
                f"shape {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_shape(other)
        return Matrix((add_vectors(a, b) for a, b in zip(self._data, other._data)), self.cols)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_shape(other)
        return Matrix((sub_vectors(a, b) for a, b in zip(self._data, other._data)), self.cols)

    def __neg__(self) -> Matrix:
        return Matrix(((-a for a in r) for r in self._data), self.cols)

    def __mul__(self, c) -> Matrix:
        if isinstance(c, Matrix):
            return NotImplemented
        return Matrix((scale_vector(c, r) for r in self._data), self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatchError(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            ocols = other.columns()
            return Matrix(
                ([sum((a * b for a, b in zip(r, c) if a and b), ZERO) for c in ocols]
                 for r in self._data),
                other.cols,
            )
        return self.apply(other)

    def __pow__(self, k: int) -> Matrix:
        if not self.is_square:
            raise NotSquareError("power of a non-square matrix")
        out = Matrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(a) for a in r) for r in self._data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


# -- sparse row reduction ---------------------------------------------------
#
# Rows are dicts {column: nonzero Fraction}.  Pivot rows are normalised so
# the pivot entry is 1; a new row is reduced against existing pivots in
# increasing column order, which only ever introduces entries to the right.


class RowReducer:
    """Incremental exact Gaussian elimination on sparse rows."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, Fraction]] = {}

    def reduce(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        row = {c: Fraction(a) for c, a in row.items() if a}
        done: set[int] = set()
        while True:
            cands = [c for c in row if c in self.pivots and c not in done]
            if not cands:
                return row
            c = min(cands)
            factor = row[c]
            for k, a in self.pivots[c].items():
                v = row.get(k, ZERO) - factor * a
                if v:
                    row[k] = v
                else:
                    row.pop(k, None)
            done.add(c)

    def add(self, row: dict[int, Fraction]) -> int | None:
        """Insert a row; return its new pivot column, or None if dependent."""
        row = self.reduce(row)
        if not row:
            return None
        p = min(row)
        inv = 1 / row[p]
        self.pivots[p] = {k: a * inv for k, a in row.items()}
        return p

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduced_rows(self) -> list[tuple[int, dict[int, Fraction]]]:
        """Fully reduced (RREF) pivot rows, sorted by pivot column."""
        cols = sorted(self.pivots)
        done: dict[int, dict[int, Fraction]] = {}
        for p in reversed(cols):
            row = dict(self.pivots[p])
            for q in [k for k in row if k != p and k in done]:
                factor = row.get(q)
                if not factor:
                    continue
                for k, a in done[q].items():
                    v = row.get(k, ZERO) - factor * a
                    if v:
                        row[k] = v
                    else:
                        row.pop(k, None)
            done[p] = row
        return [(p, done[p]) for p in cols]


def _sparse_rows(m: Matrix) -> list[dict[int, Fraction]]:
    return [{j: a for j, a in enumerate(r) if a} for r in m.entries]


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns (zero rows kept at the bottom)."""
    red = RowReducer(m.cols)
    for row in _sparse_rows(m):
        red.add(row)
    rows = []
    pivots = []
    for p, row in red.reduced_rows():
        pivots.append(p)
        rows.append([row.get(j, ZERO) for j in range(m.cols)])
    rank = len(rows)
    rows.extend([ZERO] * m.cols for _ in range(m.rows - rank))
    return Matrix(rows, m.cols), rank, pivots


def rank(m: Matrix) -> int:
    red = RowReducer(m.cols)
    for row in _sparse_rows(m):
        red.add(row)
    return red.rank


def _kernel_from_rows(reduced: list[tuple[int, dict[int, Fraction]]], ncols: int) -> list[Vector]:
    pivot_cols = {p for p, _ in reduced}
    basis = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for p, row in reduced:
            a = row.get(f)
            if a:
                v[p] = -a
        basis.append(tuple(v))
    return basis


def kernel(m: Matrix) -> list[Vector]:
    """Exact null-space basis, one vector per free column in increasing order."""
    red = RowReducer(m.cols)
    for row in _sparse_rows(m):
        red.add(row)
    return _kernel_from_rows(red.reduced_rows(), m.cols)


def solve_sparse(rows: Iterable[tuple[dict[int, Fraction], Fraction]], ncols: int
                 ) -> tuple[Vector, list[Vector]] | None:
    """Solve a sparse affine system given as (coefficients, rhs) pairs.

    Returns ``(particular, homogeneous_basis)`` or None when inconsistent.
    The particular solution vanishes on every free column.
    """
    red = RowReducer(ncols + 1)
    for coeffs, rhs in rows:
        row = dict(coeffs)
        if rhs:
            row[ncols] = Fraction(rhs)
        if red.add(row) == ncols:
            return None
    reduced = red.reduced_rows()
    particular = [ZERO] * ncols
    for p, row in reduced:
        particular[p] = row.get(ncols, ZERO)
    homog = _kernel_from_rows([(p, {k: a for k, a in row.items() if k != ncols})
                               for p, row in reduced], ncols)
    return tuple(particular), homog


def solve_affine(m: Matrix, b: Sequence) -> tuple[Vector, list[Vector]] | None:
    """All solutions of ``m x = b`` as particular + span(basis), or None if inconsistent."""
    if len(b) != m.rows:
        raise DimensionMismatchError(f"rhs of length {len(b)} for {m.rows} rows")
    return solve_sparse(zip(_sparse_rows(m), (Fraction(x) for x in b)), m.cols)


def inverse(m: Matrix) -> Matrix:
    """Inverse of a square matrix; raises :class:`ZeroDivisionError` if singular."""
    if not m.is_square:
        raise NotSquareError("inverse of a non-square matrix")
    n = m.rows
    red = RowReducer(2 * n)
    for i, r in enumerate(m.entries):
        row = {k: a for k, a in enumerate(r) if a}
        row[n + i] = ONE
        red.add(row)
    reduced = red.reduced_rows()
    if len(reduced) < n or any(p >= n for p, _ in reduced):
        raise ZeroDivisionError("matrix is singular")
    return Matrix([[row.get(n + j, ZERO) for j in range(n)] for _, row in reduced], n)


def det(m: Matrix) -> Fraction:
    if not m.is_square:
        raise NotSquareError(f"determinant of a {m.rows}x{m.cols} matrix")
    a = [list(r) for r in m.entries]
    n = m.rows
    result = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        piv = a[c][c]
        result *= piv
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] / piv
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return result


def is_nilpotent_matrix(m: Matrix) -> bool:
    if not m.is_square:
        raise NotSquareError("nilpotency test on a non-square matrix")
    power = m
    for _ in range(max(m.rows - 1, 0)):
        if power.is_zero():
            return True
        power = power @ m
    return power.is_zero()


def nilpotent_exp(m: Matrix) -> Matrix:
    """exp(m) for nilpotent m, as the finite sum of m^k / k!."""
    if not is_nilpotent_matrix(m):
        raise NotNilpotentError("matrix is not nilpotent")
    n = m.rows
    out = Matrix.identity(n)
    power = Matrix.identity(n)
    for k in range(1, n):
        power = power @ m
        if power.is_zero():
            break
        out = out + power * Fraction(1, factorial(k))
    return out

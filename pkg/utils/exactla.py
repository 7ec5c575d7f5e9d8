"""Exact dense linear algebra over the rationals.

Vectors are tuples of Fractions. `Matrix` is an immutable value type; row
reduction, rank, determinants, inverses and products run on sympy's
`DomainMatrix` over QQ. Subspaces are kept as row spaces with a canonical
reduced row echelon basis, so two subspaces are equal exactly when their bases
are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from utils.errors import DimensionMismatch, NotSubspace

ZERO = Fraction(0)
ONE = Fraction(1)

Vector = tuple


def scalar(value) -> Fraction:
    """Coerce an int, string "p/q" or Fraction to a Fraction."""
    if type(value) is Fraction:
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def format_scalar(value) -> str:
    value = scalar(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _to_qq(x: Fraction):
    return QQ(x.numerator, x.denominator)


def _from_qq(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    # --- Constructors ---

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], cols: int | None = None) -> "Matrix":
        rows = [tuple(scalar(x) for x in row) for row in rows]
        if cols is None:
            if not rows:
                raise DimensionMismatch("column count of an empty row list is ambiguous")
            cols = len(rows[0])
        for row in rows:
            if len(row) != cols:
                raise DimensionMismatch(f"row of length {len(row)} in a matrix with {cols} columns")
        return cls(len(rows), cols, tuple(x for row in rows for x in row))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def from_domain_matrix(cls, dm: DomainMatrix) -> "Matrix":
        rows, cols = dm.shape
        entries = [ZERO] * (rows * cols)
        for i, row in dm.to_sparse().rep.items():
            for j, q in row.items():
                entries[i * cols + j] = _from_qq(q)
        return cls(rows, cols, tuple(entries))

    @classmethod
    def unit_rows(cls, indices: Sequence[int], cols: int) -> "Matrix":
        """Rows e_i for i in indices (a selection matrix)."""
        entries = [ZERO] * (len(indices) * cols)
        for r, i in enumerate(indices):
            entries[r * cols + i] = ONE
        return cls(len(indices), cols, tuple(entries))

    # --- Access ---

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_empty(self) -> bool:
        return self.rows == 0 or self.cols == 0

    @cached_property
    def domain_matrix(self) -> DomainMatrix:
        """The same matrix as a sparse DomainMatrix over QQ."""
        elements: dict[int, dict[int, object]] = {}
        for idx, x in enumerate(self.entries):
            if x:
                i, j = divmod(idx, self.cols)
                elements.setdefault(i, {})[j] = _to_qq(x)
        return DomainMatrix(elements, self.shape, QQ)

    @cached_property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def select_rows(self, indices: Sequence[int]) -> "Matrix":
        return Matrix(len(indices), self.cols, tuple(x for i in indices for x in self.row(i)))

    def select_cols(self, indices: Sequence[int]) -> "Matrix":
        return Matrix(self.rows, len(indices),
                      tuple(self.entries[i * self.cols + j] for i in range(self.rows) for j in indices))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return self.select_rows(rows).select_cols(cols)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionMismatch("trace of a non-square matrix")
        return sum((self.entries[i * self.cols + i] for i in range(self.rows)), ZERO)

    # --- Arithmetic ---

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        if self.is_empty or other.is_empty:
            return Matrix.zeros(self.rows, other.cols)
        return Matrix.from_domain_matrix(self.domain_matrix.matmul(other.domain_matrix))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def scale(self, c) -> "Matrix":
        c = scalar(c)
        return Matrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def vecmul(self, v: Sequence) -> tuple:
        """Row vector times matrix."""
        if len(v) != self.rows:
            raise DimensionMismatch(f"vector of length {len(v)} against {self.rows} rows")
        acc = [ZERO] * self.cols
        for k, a in enumerate(v):
            if a:
                for j, x in enumerate(self.row(k)):
                    if x:
                        acc[j] += a * x
        return tuple(acc)

    def rank(self) -> int:
        if self.is_empty:
            return 0
        return self.domain_matrix.rank()


def hstack(*blocks: Matrix, rows: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(rows or 0, 0)
    n = blocks[0].rows
    if any(b.rows != n for b in blocks):
        raise DimensionMismatch("hstack of blocks with different row counts")
    return Matrix(n, sum(b.cols for b in blocks), tuple(x for i in range(n) for b in blocks for x in b.row(i)))


def vstack(*blocks: Matrix, cols: int | None = None) -> Matrix:
    if not blocks:
        return Matrix.zeros(0, cols or 0)
    m = blocks[0].cols
    if any(b.cols != m for b in blocks):
        raise DimensionMismatch("vstack of blocks with different column counts")
    return Matrix(sum(b.rows for b in blocks), m, tuple(x for b in blocks for x in b.entries))


def linear_combination(coefficients: Sequence, matrices: Sequence[Matrix], rows: int, cols: int) -> Matrix:
    acc = [ZERO] * (rows * cols)
    for c, m in zip(coefficients, matrices):
        if c:
            for idx, x in enumerate(m.entries):
                if x:
                    acc[idx] += c * x
    return Matrix(rows, cols, tuple(acc))


# --- Row Reduction ---

def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    if m.is_empty:
        return m, ()
    reduced, pivots = m.domain_matrix.rref()
    return Matrix.from_domain_matrix(reduced), tuple(pivots)


def nullspace(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Canonical basis of {v : m·v = 0} together with the free columns it is keyed on.

    The basis vector for free column f has a 1 at f and zeros at the other free
    columns, so the coordinates of a null vector are its entries at the free columns.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = tuple(c for c in range(m.cols) if c not in pivot_set)
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for t, p in enumerate(pivots):
            v[p] = -reduced[t, f]
        basis.extend(v)
    return Matrix(len(free), m.cols, tuple(basis)), free


def kernel_basis(m: Matrix) -> Matrix:
    return nullspace(m)[0]


def left_kernel(m: Matrix) -> Matrix:
    """Rows x with x·m = 0."""
    return kernel_basis(m.T)


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """Particular solution of m·x = b with free variables zero, or None."""
    if len(b) != m.rows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {m.rows} equations")
    column = Matrix(m.rows, 1, tuple(scalar(x) for x in b))
    reduced, pivots = rref(hstack(m, column))
    if pivots and pivots[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for t, p in enumerate(pivots):
        x[p] = reduced[t, m.cols]
    return tuple(x)


def det(m: Matrix) -> Fraction:
    if m.rows != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    if m.is_empty:
        return ONE
    return _from_qq(m.domain_matrix.det())


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    if m.is_empty:
        return m
    try:
        return Matrix.from_domain_matrix(m.domain_matrix.inv())
    except DMNonInvertibleMatrixError:
        raise DimensionMismatch("matrix is singular") from None


# --- Subspaces ---

@dataclass(frozen=True)
class Subspace:
    """A row space with its canonical rref basis."""
    basis: Matrix
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, m: Matrix) -> "Subspace":
        reduced, pivots = rref(m)
        return cls(reduced.select_rows(range(len(pivots))), pivots)

    @classmethod
    def of_vectors(cls, vectors: Iterable[Sequence], ambient: int) -> "Subspace":
        return cls.span(Matrix.from_rows(vectors, cols=ambient))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(Matrix.zeros(0, ambient), ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(Matrix.identity(ambient), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def ambient(self) -> int:
        return self.basis.cols

    @cached_property
    def complement(self) -> tuple[int, ...]:
        """Coordinates not used as pivots; their unit vectors span a complement."""
        pivot_set = set(self.pivots)
        return tuple(c for c in range(self.ambient) if c not in pivot_set)

    def reduce(self, v: Sequence) -> tuple:
        v = list(v)
        for t, p in enumerate(self.pivots):
            c = v[p]
            if c:
                for j, x in enumerate(self.basis.row(t)):
                    if x:
                        v[j] -= c * x
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(other.basis.row(i)) for i in range(other.dim))

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of v in the canonical basis; v must lie in the space."""
        if not self.contains(v):
            raise NotSubspace("vector does not lie in the subspace")
        return tuple(scalar(v[p]) for p in self.pivots)

    @cached_property
    def projection(self) -> Matrix:
        """ambient × |complement| matrix sending v to the complement coordinates of v mod self."""
        index = {c: k for k, c in enumerate(self.complement)}
        q = len(self.complement)
        entries = [ZERO] * (self.ambient * q)
        for c, k in index.items():
            entries[c * q + k] = ONE
        for t, p in enumerate(self.pivots):
            row = self.basis.row(t)
            for c, k in index.items():
                if row[c]:
                    entries[p * q + k] = -row[c]
        return Matrix(self.ambient, q, tuple(entries))

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise DimensionMismatch(f"ambient dimensions {self.ambient} and {other.ambient} differ")
        return Subspace.span(vstack(self.basis, other.basis))


def _check_ambient(u: Matrix, v: Matrix):
    if u.cols != v.cols:
        raise DimensionMismatch(f"ambient dimensions {u.cols} and {v.cols} differ")


def image_basis(m: Matrix) -> Matrix:
    """Canonical basis (as rows) of the column space of m."""
    return Subspace.span(m.T).basis


def intersect(u: Matrix, v: Matrix) -> Matrix:
    _check_ambient(u, v)
    coefficients = left_kernel(vstack(u, -v))
    return Subspace.span(coefficients.select_cols(range(u.rows)) @ u).basis


def sum_spaces(u: Matrix, v: Matrix) -> Matrix:
    _check_ambient(u, v)
    return Subspace.span(vstack(u, v)).basis


def quotient_map(u: Matrix, v: Matrix) -> Matrix:
    """Projection V → V/U as a (dim V/U) × (dim V) matrix in V's canonical coordinates.

    V/U is coordinatized by the canonical basis vectors of V whose coordinate
    positions are not pivots of U expressed in V-coordinates.
    """
    _check_ambient(u, v)
    big = Subspace.span(v)
    small = Subspace.span(u)
    if not big.contains_space(small):
        raise NotSubspace("first argument is not contained in the second")
    inner = Subspace.span(Matrix.from_rows([big.coordinates(small.basis.row(i)) for i in range(small.dim)],
                                           cols=big.dim))
    return inner.projection.T

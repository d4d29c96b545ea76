"""Exact dense linear algebra over the rationals.

Everything downstream (kernels, quotients, solvers) reduces to the
routines here.  Scalars are :class:`fractions.Fraction`; there is no
floating point anywhere, so every comparison is an exact identity.
Subspaces are kept in reduced row echelon form, which is the unique
canonical representative: two subspaces are equal iff their stored
bases are structurally equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import NotASubspace, NotInSubspace, SpaceMismatch

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def as_scalar(x) -> Fraction:
    """Coerce ints / strings / Fractions to an exact scalar (floats refused)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"refusing inexact scalar of type {type(x).__name__}")


def vec(entries: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_scalar(x) for x in entries)


def zero_vec(n: int) -> tuple[Fraction, ...]:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if len(u) != len(v):
        raise SpaceMismatch(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if len(u) != len(v):
        raise SpaceMismatch(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    c = as_scalar(c)
    return tuple(c * a for a in v)


def is_zero_vec(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


class Matrix:
    """Immutable dense matrix of exact rationals (row-major)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(vec(r) for r in entries)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise SpaceMismatch("ragged rows in matrix")
        else:
            width = 0
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("Matrix is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: Optional[int] = None) -> "Matrix":
        columns = [vec(c) for c in columns]
        if not columns:
            return cls.zero(rows or 0, 0)
        n = len(columns[0])
        if any(len(c) != n for c in columns):
            raise SpaceMismatch("ragged columns")
        return cls([[c[i] for c in columns] for i in range(n)])

    # -- basic structure ---------------------------------------------

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def is_zero(self) -> bool:
        return all(is_zero_vec(r) for r in self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.entries == other.entries \
            and self.rows == other.rows and self.cols == other.cols

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise SpaceMismatch("matrix shapes differ")
        return Matrix([vec_add(a, b) for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise SpaceMismatch("matrix shapes differ")
        return Matrix([vec_sub(a, b) for a, b in zip(self.entries, other.entries)])

    def scale(self, c) -> "Matrix":
        c = as_scalar(c)
        return Matrix([[c * x for x in r] for r in self.entries])

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise SpaceMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ot = other.transpose().entries
        return Matrix([[sum((a * b for a, b in zip(row, col)), ZERO) for col in ot]
                       for row in self.entries])

    def matvec(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise SpaceMismatch(f"vector length {len(v)} vs {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(row, v)), ZERO) for row in self.entries)

    # -- elimination ---------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        return rref(self)

    def rank(self) -> int:
        return len(self.rref()[1])


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form together with its pivot columns.

    The result is the unique RREF of the row space, hence canonical:
    row-equivalent matrices give structurally equal results.
    """
    work = [list(r) for r in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = ONE / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return Matrix(work), tuple(pivots)


def kernel_basis(m: Matrix) -> "Subspace":
    """Canonical basis of the right kernel {v : m v = 0}."""
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for j in free:
        v = [ZERO] * m.cols
        v[j] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red.entries[r][j]
        basis.append(v)
    return Subspace.from_vectors(m.cols, basis)


def solve(m: Matrix, b: Sequence[Fraction]) -> Optional[tuple[Fraction, ...]]:
    """One exact solution of m x = b, or None when b is outside the column space."""
    b = vec(b)
    if len(b) != m.rows:
        raise SpaceMismatch(f"rhs length {len(b)} vs {m.rows} rows")
    aug = Matrix([list(row) + [bb] for row, bb in zip(m.entries, b)]) if m.cols else None
    if m.cols == 0:
        return () if is_zero_vec(b) else None
    red, pivots = rref(aug)
    if m.cols in pivots:
        return None  # pivot in the augmented column: inconsistent
    x = [ZERO] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = red.entries[r][m.cols]
    return tuple(x)


class Subspace:
    """A subspace of Q^n held by its unique reduced-echelon basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Sequence[Sequence]):
        rows = tuple(vec(r) for r in basis)
        if any(len(r) != ambient_dim for r in rows):
            raise SpaceMismatch("basis vector of wrong length")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", rows)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Sequence[Sequence]) -> "Subspace":
        vectors = [vec(v) for v in vectors]
        if not vectors:
            return cls(ambient_dim, [])
        red, pivots = rref(Matrix(vectors))
        return cls(ambient_dim, red.entries[: len(pivots)])

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim).entries)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Eliminate v against the echelon basis; zero iff v is a member."""
        v = list(vec(v))
        if len(v) != self.ambient_dim:
            raise SpaceMismatch("vector has wrong ambient dimension")
        for row in self.basis:
            lead = next((j for j, x in enumerate(row) if x != 0), None)
            if lead is not None and v[lead] != 0:
                f = v[lead]
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero_vec(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def coordinates(self, v: Sequence[Fraction]) -> Optional[tuple[Fraction, ...]]:
        """Coefficients of v over the stored basis, or None if v is outside."""
        if self.dim == 0:
            return () if is_zero_vec(vec(v)) else None
        return solve(Matrix.from_columns(self.basis), v)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim \
            and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"


class QuotientData:
    """Concrete model of big/small: canonical coordinates modulo `small`."""

    __slots__ = ("dim", "representatives", "_solver_matrix", "_small_dim")

    def __init__(self, dim: int, representatives: tuple, solver_matrix: Matrix, small_dim: int):
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "representatives", representatives)
        object.__setattr__(self, "_solver_matrix", solver_matrix)
        object.__setattr__(self, "_small_dim", small_dim)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("QuotientData is immutable")

    def reduce(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Coordinates of v + small over the chosen representatives.

        Linear in v, and zero exactly on members of `small`.
        """
        if self._solver_matrix.cols == 0:
            if not is_zero_vec(vec(v)) and self._solver_matrix.rows:
                raise NotInSubspace("vector is outside the big subspace")
            return ()
        x = solve(self._solver_matrix, v)
        if x is None:
            raise NotInSubspace("vector is outside the big subspace")
        return tuple(x[self._small_dim:])


def quotient_data(big: Subspace, small: Subspace) -> QuotientData:
    """Dimension, representative vectors and a reduction map for big/small.

    Raises NotASubspace unless small is contained in big.  The
    representatives are the lexicographically first basis vectors of
    `big` that extend a basis of `small`; `reduce` expresses any member
    of `big` in the induced quotient coordinates.
    """
    if big.ambient_dim != small.ambient_dim:
        raise SpaceMismatch("subspaces of different ambient spaces")
    if not big.contains_subspace(small):
        raise NotASubspace("`small` is not contained in `big`")
    chosen: list[tuple[Fraction, ...]] = []
    current = list(small.basis)
    current_rank = small.dim
    for cand in big.basis:
        probe = Subspace.from_vectors(big.ambient_dim, current + [cand])
        if probe.dim > current_rank:
            chosen.append(cand)
            current.append(cand)
            current_rank = probe.dim
    dim = big.dim - small.dim
    assert len(chosen) == dim
    solver = Matrix.from_columns(list(small.basis) + chosen, rows=big.ambient_dim) \
        if (small.dim + len(chosen)) else Matrix.zero(big.ambient_dim, 0)
    return QuotientData(dim, tuple(chosen), solver, small.dim)

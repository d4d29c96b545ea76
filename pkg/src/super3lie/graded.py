"""Z2-graded vector spaces, homogeneous maps and the super wedge square.

Parities are plain ints 0 (even) and 1 (odd), added mod 2.  Every
sign-bearing formula downstream is evaluated on homogeneous basis
elements and extended multilinearly, so non-homogeneous elements never
meet a degree function directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import SpaceMismatch
from .linalg import Matrix, vec, zero_vec

EVEN = 0
ODD = 1


def check_parity(p: int) -> int:
    if p not in (0, 1):
        raise ValueError(f"parity must be 0 or 1, got {p!r}")
    return p


@dataclass(frozen=True)
class SuperSpace:
    """Finite-dimensional Z2-graded space with a named homogeneous basis."""

    name: str
    basis: tuple[tuple[str, int], ...]

    def __post_init__(self):
        labels = [lbl for lbl, _ in self.basis]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate basis labels in {self.name!r}")
        for _, p in self.basis:
            check_parity(p)

    @classmethod
    def build(cls, name: str, items: Sequence) -> "SuperSpace":
        return cls(name, tuple((str(lbl), int(p)) for lbl, p in items))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lbl for lbl, _ in self.basis)

    @property
    def parities(self) -> tuple[int, ...]:
        return tuple(p for _, p in self.basis)

    @property
    def even_dim(self) -> int:
        return sum(1 for _, p in self.basis if p == EVEN)

    @property
    def odd_dim(self) -> int:
        return sum(1 for _, p in self.basis if p == ODD)

    def index(self, label: str) -> int:
        for i, (lbl, _) in enumerate(self.basis):
            if lbl == label:
                return i
        raise KeyError(label)

    def parity(self, i: int) -> int:
        return self.basis[i][1]

    def zero(self) -> tuple[Fraction, ...]:
        return zero_vec(self.dim)

    def basis_vector(self, i: int) -> tuple[Fraction, ...]:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return tuple(v)

    def coerce(self, v: Sequence) -> tuple[Fraction, ...]:
        v = vec(v)
        if len(v) != self.dim:
            raise SpaceMismatch(f"vector of length {len(v)} in {self.dim}-dim space {self.name!r}")
        return v

    def parity_of(self, v: Sequence) -> Optional[int]:
        """Parity of a homogeneous vector; None for zero or mixed vectors."""
        v = self.coerce(v)
        seen = {self.parity(i) for i, x in enumerate(v) if x != 0}
        if len(seen) == 1:
            return seen.pop()
        return None

    def homogeneous_part(self, v: Sequence, parity: int) -> tuple[Fraction, ...]:
        v = self.coerce(v)
        return tuple(x if self.parity(i) == parity else Fraction(0) for i, x in enumerate(v))


@dataclass(frozen=True)
class GradedLinearMap:
    """A homogeneous linear map of a declared Z2-degree.

    The matrix must vanish at (i, j) unless parity(target_i) equals
    parity(source_j) + degree; general maps are handled as sums of an
    even and an odd part.
    """

    source: SuperSpace
    target: SuperSpace
    degree: int
    matrix: Matrix

    def __post_init__(self):
        check_parity(self.degree)
        if (self.matrix.rows, self.matrix.cols) != (self.target.dim, self.source.dim):
            raise SpaceMismatch(
                f"matrix is {self.matrix.rows}x{self.matrix.cols}, expected "
                f"{self.target.dim}x{self.source.dim}")
        for i in range(self.target.dim):
            for j in range(self.source.dim):
                if self.matrix[i, j] != 0 and \
                        self.target.parity(i) != (self.source.parity(j) + self.degree) % 2:
                    raise SpaceMismatch(
                        f"entry ({i},{j}) breaks homogeneity of degree {self.degree}")

    @classmethod
    def zero(cls, source: SuperSpace, target: SuperSpace, degree: int = EVEN) -> "GradedLinearMap":
        return cls(source, target, degree, Matrix.zero(target.dim, source.dim))

    @classmethod
    def identity(cls, space: SuperSpace) -> "GradedLinearMap":
        return cls(space, space, EVEN, Matrix.identity(space.dim))

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        return self.matrix.matvec(self.source.coerce(v))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __add__(self, other: "GradedLinearMap") -> "GradedLinearMap":
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            raise SpaceMismatch("maps are not addable (spaces or degrees differ)")
        return GradedLinearMap(self.source, self.target, self.degree, self.matrix + other.matrix)

    def __sub__(self, other: "GradedLinearMap") -> "GradedLinearMap":
        return self + other.scale(-1)

    def scale(self, c) -> "GradedLinearMap":
        return GradedLinearMap(self.source, self.target, self.degree, self.matrix.scale(c))


def compose_graded(f: GradedLinearMap, g: GradedLinearMap) -> GradedLinearMap:
    """f after g; degrees add mod 2."""
    if g.target != f.source:
        raise SpaceMismatch("compose_graded: inner spaces differ")
    return GradedLinearMap(g.source, f.target, (f.degree + g.degree) % 2, f.matrix @ g.matrix)


def supercommutator(f: GradedLinearMap, g: GradedLinearMap) -> GradedLinearMap:
    """[f, g] = f g - (-1)^{|f||g|} g f on a common space."""
    if f.source != f.target or g.source != g.target or f.source != g.source:
        raise SpaceMismatch("supercommutator needs endomorphisms of one space")
    sign = -1 if (f.degree and g.degree) else 1
    m = f.matrix @ g.matrix - (g.matrix @ f.matrix).scale(sign)
    return GradedLinearMap(f.source, f.target, (f.degree + g.degree) % 2, m)


@dataclass(frozen=True)
class WedgeBasis:
    """Canonical ordered basis of the super wedge square of a space.

    Pairs (i, j) with i < j for any parities, plus the diagonal (i, i)
    for odd i only: odd vectors self-pair nontrivially, even ones
    square to zero.  Ordering is lexicographic, which fixes the
    coordinates of every cochain tensor downstream.
    """

    space: SuperSpace
    pairs: tuple[tuple[int, int], ...]

    @property
    def dim(self) -> int:
        return len(self.pairs)

    def index(self, i: int, j: int) -> int:
        return _pair_index(self)[(i, j)]

    def parity(self, w: int) -> int:
        i, j = self.pairs[w]
        return (self.space.parity(i) + self.space.parity(j)) % 2

    def pair_parities(self) -> tuple[int, ...]:
        return tuple(self.parity(w) for w in range(self.dim))

    def zero(self) -> tuple[Fraction, ...]:
        return zero_vec(self.dim)

    def coerce(self, X: Sequence) -> tuple[Fraction, ...]:
        X = vec(X)
        if len(X) != self.dim:
            raise SpaceMismatch(f"wedge coordinates of length {len(X)}, expected {self.dim}")
        return X

    def parity_of(self, X: Sequence) -> Optional[int]:
        X = self.coerce(X)
        seen = {self.parity(w) for w, x in enumerate(X) if x != 0}
        if len(seen) == 1:
            return seen.pop()
        return None


@lru_cache(maxsize=None)
def _pair_index(wb: WedgeBasis) -> dict:
    return {pair: k for k, pair in enumerate(wb.pairs)}


@lru_cache(maxsize=None)
def wedge_basis(space: SuperSpace) -> WedgeBasis:
    pairs = []
    for i in range(space.dim):
        if space.parity(i) == ODD:
            pairs.append((i, i))
        for j in range(i + 1, space.dim):
            pairs.append((i, j))
    pairs.sort()
    return WedgeBasis(space, tuple(pairs))


def wedge_pair_coords(wb: WedgeBasis, i: int, j: int) -> list[tuple[int, Fraction]]:
    """Coordinates of e_i wedge e_j as (index, coefficient) pairs.

    e_j ^ e_i for i < j rewrites to -(-1)^{|e_i||e_j|} e_i ^ e_j; an even
    diagonal pair vanishes, an odd one is kept as a basis element.
    """
    sp = wb.space
    if i == j:
        if sp.parity(i) == ODD:
            return [(wb.index(i, i), Fraction(1))]
        return []
    if i < j:
        return [(wb.index(i, j), Fraction(1))]
    sign = Fraction(-1) if (sp.parity(i) * sp.parity(j)) % 2 == 0 else Fraction(1)
    # swapping x ^ y -> y ^ x costs -(-1)^{|x||y|}: -1 unless both odd
    return [(wb.index(j, i), sign)]


def wedge_expand(wb: WedgeBasis, x: Sequence, y: Sequence) -> tuple[Fraction, ...]:
    """Bilinear expansion of x ^ y over the canonical wedge basis."""
    sp = wb.space
    x = sp.coerce(x)
    y = sp.coerce(y)
    out = [Fraction(0)] * wb.dim
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in enumerate(y):
            if yj == 0:
                continue
            for w, coeff in wedge_pair_coords(wb, i, j):
                out[w] += xi * yj * coeff
    return tuple(out)

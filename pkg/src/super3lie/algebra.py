"""3-Lie superalgebras: structure tensors, axiom checks, superderivations.

The graded axioms are, for homogeneous x_i with |.| the Z2-degree:

  grading      |[x1,x2,x3]| = |x1|+|x2|+|x3|
  super-skew   [x1,x2,x3] = -(-1)^{|x1||x2|}[x2,x1,x3]
                          = -(-1)^{|x2||x3|}[x1,x3,x2]
  fundamental  [x1,x2,[x3,x4,x5]] = [[x1,x2,x3],x4,x5]
               + (-1)^{|x3|(|x1|+|x2|)}[x3,[x1,x2,x4],x5]
               + (-1)^{(|x1|+|x2|)(|x3|+|x4|)}[x3,x4,[x1,x2,x5]]

Structure constants are stored for *all* index triples: odd indices
admit nonzero diagonal brackets such as [f,f,y], so a strictly
increasing fundamental domain would be wrong.  Consistency of the
redundant storage is what `verify_algebra` checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionCapExceeded, SpaceMismatch
from .graded import (EVEN, GradedLinearMap, SuperSpace, WedgeBasis,
                     wedge_basis, wedge_expand)
from .linalg import Matrix, is_zero_vec, kernel_basis, vec_add, vec_scale

DEFAULT_DIM_CAP = 10


def transposition_sign(parity_a: int, parity_b: int) -> Fraction:
    """Sign picked up when two adjacent bracket arguments swap."""
    return Fraction(1) if (parity_a and parity_b) else Fraction(-1)


def skew_orbit(triple: tuple[int, int, int], parities: Sequence[int]):
    """All permutations of an index triple with their super-skew signs.

    Yields (permuted_triple, sign) with sign relative to the input
    orientation; repeated indices may revisit a triple with both signs,
    which callers use to detect forced zeros.
    """
    seen: set = set()
    frontier = [(triple, Fraction(1))]
    while frontier:
        (a, b, c), sign = frontier.pop()
        if ((a, b, c), sign) in seen:
            continue
        seen.add(((a, b, c), sign))
        yield (a, b, c), sign
        frontier.append(((b, a, c), sign * transposition_sign(parities[a], parities[b])))
        frontier.append(((a, c, b), sign * transposition_sign(parities[b], parities[c])))


@dataclass(frozen=True)
class ThreeLieSuperalgebra:
    """A superspace with a trilinear structure tensor c[i][j][k] -> vector."""

    space: SuperSpace
    structure: tuple  # structure[i][j][k] is the coordinate tuple of [e_i, e_j, e_k]

    def __post_init__(self):
        n = self.space.dim
        if len(self.structure) != n or any(
                len(plane) != n or any(len(row) != n for row in plane)
                for plane in self.structure):
            raise SpaceMismatch("structure tensor must be n x n x n")
        for plane in self.structure:
            for row in plane:
                for v in row:
                    if len(v) != n:
                        raise SpaceMismatch("structure tensor values must be coordinate vectors")

    @classmethod
    def abelian(cls, space: SuperSpace) -> "ThreeLieSuperalgebra":
        z = space.zero()
        n = space.dim
        return cls(space, tuple(tuple(tuple(z for _ in range(n)) for _ in range(n))
                                for _ in range(n)))

    @classmethod
    def from_tensor(cls, space: SuperSpace, tensor) -> "ThreeLieSuperalgebra":
        n = space.dim
        packed = tuple(tuple(tuple(space.coerce(tensor[i][j][k]) for k in range(n))
                             for j in range(n)) for i in range(n))
        return cls(space, packed)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def wedge(self) -> WedgeBasis:
        return wedge_basis(self.space)

    def bracket_basis(self, i: int, j: int, k: int) -> tuple[Fraction, ...]:
        return self.structure[i][j][k]

    def bracket(self, x: Sequence, y: Sequence, z: Sequence) -> tuple[Fraction, ...]:
        """Trilinear extension of the structure tensor."""
        sp = self.space
        x, y, z = sp.coerce(x), sp.coerce(y), sp.coerce(z)
        out = list(sp.zero())
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                cij = xi * yj
                for k, zk in enumerate(z):
                    if zk == 0:
                        continue
                    val = self.structure[i][j][k]
                    f = cij * zk
                    for r, vr in enumerate(val):
                        if vr != 0:
                            out[r] += f * vr
        return tuple(out)

    def bracket_wedge(self, X: Sequence, z: Sequence) -> tuple[Fraction, ...]:
        """[X, z] for X in wedge coordinates (the pairing of the wedge square)."""
        wb = self.wedge
        X = wb.coerce(X)
        z = self.space.coerce(z)
        out = list(self.space.zero())
        for w, xw in enumerate(X):
            if xw == 0:
                continue
            i, j = wb.pairs[w]
            for k, zk in enumerate(z):
                if zk == 0:
                    continue
                f = xw * zk
                for r, vr in enumerate(self.structure[i][j][k]):
                    if vr != 0:
                        out[r] += f * vr
        return tuple(out)

    def is_abelian(self) -> bool:
        return all(is_zero_vec(self.structure[i][j][k])
                   for i in range(self.dim) for j in range(self.dim) for k in range(self.dim))


def leibniz_bracket_F(alg: ThreeLieSuperalgebra, X: Sequence, Y: Sequence) -> tuple[Fraction, ...]:
    """The Leibniz product on the wedge square:

    [X, y1^y2]_F = [X, y1]^y2 + (-1)^{|y1||X|} y1^[X, y2].
    """
    wb = alg.wedge
    sp = alg.space
    X = wb.coerce(X)
    Y = wb.coerce(Y)
    out = [Fraction(0)] * wb.dim
    for w, yw in enumerate(Y):
        if yw == 0:
            continue
        c, d = wb.pairs[w]
        ec, ed = sp.basis_vector(c), sp.basis_vector(d)
        # per homogeneous component of X, the sign (-1)^{|y1||X|} is fixed
        for parity in (0, 1):
            Xp = tuple(x if wb.parity(u) == parity else Fraction(0) for u, x in enumerate(X))
            if all(x == 0 for x in Xp):
                continue
            first = wedge_expand(wb, alg.bracket_wedge(Xp, ec), ed)
            sign = Fraction(-1) if (sp.parity(c) and parity) else Fraction(1)
            second = wedge_expand(wb, ec, alg.bracket_wedge(Xp, ed))
            for u in range(wb.dim):
                out[u] += yw * (first[u] + sign * second[u])
    return tuple(out)


@dataclass(frozen=True)
class Violation:
    """A failed identity, carrying both exactly evaluated sides."""

    kind: str
    indices: tuple[int, ...]
    lhs: tuple[Fraction, ...]
    rhs: tuple[Fraction, ...]

    def describe(self, space: SuperSpace) -> str:
        names = ",".join(space.labels[i] for i in self.indices)
        return (f"{self.kind} fails at ({names}): "
                f"lhs={[str(x) for x in self.lhs]}, rhs={[str(x) for x in self.rhs]}")


@dataclass(frozen=True)
class AlgebraReport:
    grading: bool
    super_skew: bool
    fundamental_identity: bool
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return self.grading and self.super_skew and self.fundamental_identity


def verify_algebra(alg: ThreeLieSuperalgebra, dim_cap: int = DEFAULT_DIM_CAP,
                   max_violations: int = 20) -> AlgebraReport:
    """Check grading, super-skew consistency and the fundamental identity.

    All checks are exhaustive over basis tuples and exact; the FI scan
    is O(n^5), guarded by `dim_cap`.  Violations are reported in
    lexicographic tuple order with both evaluated sides.
    """
    n = alg.dim
    if n > dim_cap:
        raise DimensionCapExceeded(
            f"dimension {n} exceeds cap {dim_cap}; raise dim_cap explicitly to proceed")
    sp = alg.space
    par = sp.parities
    violations: list[Violation] = []

    grading_ok = True
    for i in range(n):
        for j in range(n):
            for k in range(n):
                want = (par[i] + par[j] + par[k]) % 2
                val = alg.structure[i][j][k]
                bad = tuple(Fraction(0) if sp.parity(r) == want else x
                            for r, x in enumerate(val))
                if not is_zero_vec(bad):
                    grading_ok = False
                    if len(violations) < max_violations:
                        violations.append(Violation("grading", (i, j, k), val,
                                                    sp.homogeneous_part(val, want)))

    skew_ok = True
    for i in range(n):
        for j in range(n):
            for k in range(n):
                base = alg.structure[i][j][k]
                s12 = vec_scale(transposition_sign(par[i], par[j]), alg.structure[j][i][k])
                if base != s12:
                    skew_ok = False
                    if len(violations) < max_violations:
                        violations.append(Violation("super_skew(1,2)", (i, j, k), base, s12))
                s23 = vec_scale(transposition_sign(par[j], par[k]), alg.structure[i][k][j])
                if base != s23:
                    skew_ok = False
                    if len(violations) < max_violations:
                        violations.append(Violation("super_skew(2,3)", (i, j, k), base, s23))

    fi_ok = True
    basis = [sp.basis_vector(i) for i in range(n)]
    for a in range(n):
        for b in range(n):
            pab = (par[a] + par[b]) % 2
            for c in range(n):
                s2 = Fraction(-1) if (par[c] and pab) else Fraction(1)
                for d in range(n):
                    s3 = Fraction(-1) if (pab and (par[c] + par[d]) % 2) else Fraction(1)
                    for e in range(n):
                        lhs = alg.bracket(basis[a], basis[b], alg.structure[c][d][e])
                        rhs = vec_add(
                            alg.bracket(alg.structure[a][b][c], basis[d], basis[e]),
                            vec_add(
                                vec_scale(s2, alg.bracket(basis[c], alg.structure[a][b][d], basis[e])),
                                vec_scale(s3, alg.bracket(basis[c], basis[d], alg.structure[a][b][e]))))
                        if lhs != rhs:
                            fi_ok = False
                            if len(violations) < max_violations:
                                violations.append(Violation("fundamental_identity",
                                                            (a, b, c, d, e), lhs, rhs))
    violations.sort(key=lambda v: (v.kind, v.indices))
    return AlgebraReport(grading_ok, skew_ok, fi_ok, tuple(violations))


def is_superderivation(alg: ThreeLieSuperalgebra, D: GradedLinearMap
                       ) -> tuple[bool, Optional[Violation]]:
    """Graded Leibniz rule over the triple bracket, checked on all basis triples:

    D[x,y,z] = [Dx,y,z] + (-1)^{b|x|}[x,Dy,z] + (-1)^{b(|x|+|y|)}[x,y,Dz]
    """
    if D.source != alg.space or D.target != alg.space:
        raise SpaceMismatch("derivation candidate must be an endomorphism of the algebra")
    sp = alg.space
    par = sp.parities
    beta = D.degree
    basis = [sp.basis_vector(i) for i in range(sp.dim)]
    dcols = [D.apply(basis[i]) for i in range(sp.dim)]
    for i in range(sp.dim):
        for j in range(sp.dim):
            for k in range(sp.dim):
                lhs = D.apply(alg.structure[i][j][k])
                s2 = Fraction(-1) if (beta and par[i]) else Fraction(1)
                s3 = Fraction(-1) if (beta and (par[i] + par[j]) % 2) else Fraction(1)
                rhs = vec_add(
                    alg.bracket(dcols[i], basis[j], basis[k]),
                    vec_add(vec_scale(s2, alg.bracket(basis[i], dcols[j], basis[k])),
                            vec_scale(s3, alg.bracket(basis[i], basis[j], dcols[k]))))
                if lhs != rhs:
                    return False, Violation("superderivation", (i, j, k), lhs, rhs)
    return True, None


@dataclass(frozen=True)
class DerivationSpace:
    algebra: ThreeLieSuperalgebra
    degree: int
    basis: tuple[GradedLinearMap, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def homogeneous_positions(source: SuperSpace, target: SuperSpace, degree: int
                          ) -> list[tuple[int, int]]:
    """Matrix positions (i, j) allowed for a map homogeneous of `degree`."""
    return [(i, j) for i in range(target.dim) for j in range(source.dim)
            if target.parity(i) == (source.parity(j) + degree) % 2]


def map_from_positions(source: SuperSpace, target: SuperSpace, degree: int,
                       positions: Sequence[tuple[int, int]],
                       values: Sequence[Fraction]) -> GradedLinearMap:
    m = [[Fraction(0)] * source.dim for _ in range(target.dim)]
    for (i, j), v in zip(positions, values):
        m[i][j] = v
    return GradedLinearMap(source, target, degree, Matrix(m))


def derivation_space(alg: ThreeLieSuperalgebra, degree: int) -> DerivationSpace:
    """Solve the Leibniz rule as a linear system in the matrix entries.

    Unknowns are the homogeneity-allowed entries of D; one equation per
    basis triple and output coordinate.  The returned basis is the
    canonical echelon basis of the kernel, so it is deterministic.
    """
    sp = alg.space
    n = sp.dim
    par = sp.parities
    positions = homogeneous_positions(sp, sp, degree)
    pos_index = {p: c for c, p in enumerate(positions)}
    rows = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                s2 = Fraction(-1) if (degree and par[a]) else Fraction(1)
                s3 = Fraction(-1) if (degree and (par[a] + par[b]) % 2) else Fraction(1)
                for r in range(n):
                    row = [Fraction(0)] * len(positions)
                    # D applied to the bracket value: sum_k c[a,b,c]_k D[r,k]
                    for k, ck in enumerate(alg.structure[a][b][c]):
                        if ck != 0 and (r, k) in pos_index:
                            row[pos_index[(r, k)]] += ck
                    # minus the three Leibniz terms, linear in D's columns
                    for t, (slot, sign) in enumerate(((a, Fraction(1)), (b, s2), (c, s3))):
                        for i in range(n):
                            if (i, slot) not in pos_index:
                                continue
                            args = [a, b, c]
                            args[t] = i
                            coeff = alg.structure[args[0]][args[1]][args[2]][r]
                            if coeff != 0:
                                row[pos_index[(i, slot)]] -= sign * coeff
                    if any(x != 0 for x in row):
                        rows.append(row)
    if not positions:
        return DerivationSpace(alg, degree, ())
    system = Matrix(rows) if rows else Matrix.zero(1, len(positions))
    kernel = kernel_basis(system)
    maps = tuple(map_from_positions(sp, sp, degree, positions, v) for v in kernel.basis)
    return DerivationSpace(alg, degree, maps)


def adjoint_action(alg: ThreeLieSuperalgebra, X: Sequence) -> GradedLinearMap:
    """The map z -> [X, z] for homogeneous wedge coordinates X."""
    wb = alg.wedge
    X = wb.coerce(X)
    degree = wb.parity_of(X)
    if degree is None:
        if all(x == 0 for x in X):
            degree = EVEN
        else:
            raise SpaceMismatch("adjoint_action needs homogeneous wedge coordinates")
    cols = [alg.bracket_wedge(X, alg.space.basis_vector(k)) for k in range(alg.dim)]
    return GradedLinearMap(alg.space, alg.space, degree, Matrix.from_columns(cols))

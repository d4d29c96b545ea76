"""Representations of a 3-Lie superalgebra on a superspace.

A representation is a bilinear map Phi from the wedge square of the
acting algebra into endomorphisms of the module.  Phi is stored only on
canonical wedge pairs; evaluation at arbitrary arguments routes through
the wedge expansion, so the super-skew axiom holds by construction and
is never re-checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import DEFAULT_DIM_CAP, ThreeLieSuperalgebra, Violation, adjoint_action, verify_algebra
from .errors import InvalidAlgebra, SpaceMismatch
from .graded import SuperSpace, WedgeBasis, wedge_expand, wedge_pair_coords
from .linalg import Matrix, zero_vec


@dataclass(frozen=True)
class Representation:
    """Phi as one module-endomorphism matrix per canonical wedge pair.

    Construction checks shapes only; the degree condition and the two
    composition axioms are the business of `verify_representation`, so
    deliberately broken representations can be built for probing.
    """

    algebra: ThreeLieSuperalgebra
    module_space: SuperSpace
    phi: tuple[Matrix, ...]

    def __post_init__(self):
        wb = self.algebra.wedge
        if len(self.phi) != wb.dim:
            raise SpaceMismatch(f"expected {wb.dim} wedge-pair matrices, got {len(self.phi)}")
        m = self.module_space.dim
        for mat in self.phi:
            if (mat.rows, mat.cols) != (m, m):
                raise SpaceMismatch("phi matrices must act on the module space")

    @classmethod
    def zero(cls, algebra: ThreeLieSuperalgebra, module_space: SuperSpace) -> "Representation":
        wb = algebra.wedge
        m = module_space.dim
        return cls(algebra, module_space, tuple(Matrix.zero(m, m) for _ in range(wb.dim)))

    @property
    def wedge(self) -> WedgeBasis:
        return self.algebra.wedge

    def phi_matrix(self, X: Sequence) -> Matrix:
        """Linear extension of Phi over wedge coordinates."""
        X = self.wedge.coerce(X)
        m = self.module_space.dim
        acc = Matrix.zero(m, m)
        for w, xw in enumerate(X):
            if xw != 0:
                acc = acc + self.phi[w].scale(xw)
        return acc

    def phi_pair(self, i: int, j: int) -> Matrix:
        """Phi(e_i, e_j) for basis elements, including non-canonical order."""
        m = self.module_space.dim
        acc = Matrix.zero(m, m)
        for w, coeff in wedge_pair_coords(self.wedge, i, j):
            acc = acc + self.phi[w].scale(coeff)
        return acc

    def phi_elements(self, x: Sequence, y: Sequence) -> Matrix:
        return self.phi_matrix(wedge_expand(self.wedge, x, y))


def phi_eval(rep: Representation, X: Sequence, v: Sequence) -> tuple[Fraction, ...]:
    """Phi(X)(v) for wedge coordinates X and a module vector v."""
    v = rep.module_space.coerce(v)
    X = rep.wedge.coerce(X)
    out = list(zero_vec(rep.module_space.dim))
    for w, xw in enumerate(X):
        if xw == 0:
            continue
        col = rep.phi[w].matvec(v)
        for r, c in enumerate(col):
            if c != 0:
                out[r] += xw * c
    return tuple(out)


def _flat(m: Matrix) -> tuple[Fraction, ...]:
    return tuple(x for row in m.entries for x in row)


@dataclass(frozen=True)
class RepresentationReport:
    deg: bool
    skew: bool
    axiom3: bool
    axiom4: bool
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return self.deg and self.skew and self.axiom3 and self.axiom4


def verify_representation(rep: Representation, max_violations: int = 20) -> RepresentationReport:
    """Exact check of the four representation axioms on basis tuples.

    Axiom 2 (super-skew in the pair) is true by construction of the
    wedge storage and reported as such.  Axioms 3 and 4 are exact matrix
    identities over all basis 4-tuples:

      3: Phi(x1,x2)Phi(x3,x4) = Phi([x1,x2,x3],x4)
         + (-1)^{|x3|(|x1|+|x2|)} Phi(x3,[x1,x2,x4])
         + (-1)^{(|x1|+|x2|)(|x3|+|x4|)} Phi(x3,x4)Phi(x1,x2)

      4: Phi(x1,[x2,x3,x4]) = (-1)^{(|x1|+|x2|)(|x3|+|x4|)} Phi(x3,x4)Phi(x1,x2)
         - (-1)^{|x1|(|x2|+|x4|)+|x3||x4|} Phi(x2,x4)Phi(x1,x3)
         + (-1)^{|x1|(|x2|+|x3|)} Phi(x2,x3)Phi(x1,x4)
    """
    alg = rep.algebra
    sp = alg.space
    vs = rep.module_space
    wb = rep.wedge
    n = sp.dim
    par = sp.parities
    violations: list[Violation] = []

    deg_ok = True
    for w in range(wb.dim):
        want = wb.parity(w)
        mat = rep.phi[w]
        for r in range(vs.dim):
            for c in range(vs.dim):
                if mat[r, c] != 0 and vs.parity(r) != (vs.parity(c) + want) % 2:
                    deg_ok = False
                    if len(violations) < max_violations:
                        violations.append(Violation("degree", wb.pairs[w] + (r, c),
                                                    (mat[r, c],), (Fraction(0),)))

    def phi_vec_elt(xvec, j):
        """Phi(x, e_j) for a coordinate vector x (bilinear in the first slot)."""
        m = vs.dim
        acc = Matrix.zero(m, m)
        for i, xi in enumerate(xvec):
            if xi != 0:
                acc = acc + rep.phi_pair(i, j).scale(xi)
        return acc

    pm = [[rep.phi_pair(i, j) for j in range(n)] for i in range(n)]

    axiom3_ok = True
    axiom4_ok = True
    for x1 in range(n):
        for x2 in range(n):
            p12 = (par[x1] + par[x2]) % 2
            m12 = pm[x1][x2]
            for x3 in range(n):
                s_a3_2 = Fraction(-1) if (par[x3] and p12) else Fraction(1)
                for x4 in range(n):
                    p34 = (par[x3] + par[x4]) % 2
                    s_a3_3 = Fraction(-1) if (p12 and p34) else Fraction(1)
                    m34 = pm[x3][x4]
                    lhs = m12 @ m34
                    # second term acts in the *second* slot: Phi(x3, [x1,x2,x4])
                    second = Matrix.zero(vs.dim, vs.dim)
                    for k, ck in enumerate(alg.structure[x1][x2][x4]):
                        if ck != 0:
                            second = second + pm[x3][k].scale(ck)
                    rhs = phi_vec_elt(alg.structure[x1][x2][x3], x4) \
                        + second.scale(s_a3_2) + (m34 @ m12).scale(s_a3_3)
                    if lhs != rhs:
                        axiom3_ok = False
                        if len(violations) < max_violations:
                            violations.append(Violation("axiom3", (x1, x2, x3, x4),
                                                        _flat(lhs), _flat(rhs)))

                    # axiom 4
                    s_b1 = Fraction(-1) if (((par[x1] + par[x2]) % 2) and p34) else Fraction(1)
                    e_b2 = (par[x1] * (par[x2] + par[x4]) + par[x3] * par[x4]) % 2
                    s_b2 = Fraction(-1) if e_b2 else Fraction(1)
                    e_b3 = (par[x1] * (par[x2] + par[x3])) % 2
                    s_b3 = Fraction(-1) if e_b3 else Fraction(1)
                    lhs4 = Matrix.zero(vs.dim, vs.dim)
                    for k, ck in enumerate(alg.structure[x2][x3][x4]):
                        if ck != 0:
                            lhs4 = lhs4 + pm[x1][k].scale(ck)
                    rhs4 = (pm[x3][x4] @ pm[x1][x2]).scale(s_b1) \
                        - (pm[x2][x4] @ pm[x1][x3]).scale(s_b2) \
                        + (pm[x2][x3] @ pm[x1][x4]).scale(s_b3)
                    if lhs4 != rhs4:
                        axiom4_ok = False
                        if len(violations) < max_violations:
                            violations.append(Violation("axiom4", (x1, x2, x3, x4),
                                                        _flat(lhs4), _flat(rhs4)))
    violations.sort(key=lambda v: (v.kind, v.indices))
    return RepresentationReport(deg_ok, True, axiom3_ok, axiom4_ok, tuple(violations))


def adjoint_representation(alg: ThreeLieSuperalgebra,
                           dim_cap: int = DEFAULT_DIM_CAP) -> Representation:
    """The adjoint representation Phi(X) = [X, .] on the algebra itself."""
    report = verify_algebra(alg, dim_cap=dim_cap)
    if not report.ok:
        raise InvalidAlgebra("adjoint representation requires a verified algebra; "
                             + "; ".join(v.describe(alg.space) for v in report.violations[:3]))
    wb = alg.wedge
    mats = []
    for w in range(wb.dim):
        X = [Fraction(0)] * wb.dim
        X[w] = Fraction(1)
        mats.append(adjoint_action(alg, X).matrix)
    return Representation(alg, alg.space, tuple(mats))

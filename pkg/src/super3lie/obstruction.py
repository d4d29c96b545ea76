"""Superderivation pairs, obstruction cochains, and extensibility.

A pair (D_p, D_q) of homogeneous maps of one shared degree a is
*compatible* with a representation Phi when, as exact matrix identities
over all basis pairs,

  D_p Phi(x,y) - (-1)^{a(|x|+|y|)} Phi(x,y) D_p
      = Phi(D_q x, y) + (-1)^{a|x|} Phi(x, D_q y).

For an even arity-3 cochain Omega, the obstruction of the pair is

  Ob(x,y,z) = D_p(Omega(x,y,z)) - Omega(D_q x, y, z)
              - (-1)^{a|x|} Omega(x, D_q y, z)
              - (-1)^{a(|x|+|y|)} Omega(x, y, D_q z),

a cochain of parity |Omega| + a; for compatible pairs it is closed
whenever Omega is, so its class acts on first cohomology.  Lifting a
compatible even pair through an abelian extension succeeds exactly when
that class vanishes, and the lift is reconstructed from any solution of
Ob = d(mu).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import (Violation, homogeneous_positions, is_superderivation,
                      map_from_positions)
from .cohomology import (Cochain, CohomologySpace, coboundary,
                         coboundary_matrix, coboundary_preimage, cohomology)
from .errors import (NotACocycle, NotCompatible, NotExtensible,
                     OddPairUnsupported, SpaceMismatch)
from .extension import ExtensionData, _ensure_valid, extract_omega, extract_phi
from .graded import (EVEN, GradedLinearMap, SuperSpace, compose_graded,
                     supercommutator, wedge_expand)
from .linalg import Matrix, kernel_basis
from .representation import Representation


@dataclass(frozen=True)
class DerivationPair:
    """A homogeneous pair (D_p on the module side, D_q on the acting algebra)."""

    d_p: GradedLinearMap
    d_q: GradedLinearMap
    degree: int

    def __post_init__(self):
        if self.d_p.degree != self.degree or self.d_q.degree != self.degree:
            raise SpaceMismatch("pair members must share the declared degree")
        if self.d_p.source != self.d_p.target or self.d_q.source != self.d_q.target:
            raise SpaceMismatch("pair members must be endomorphisms")

    @classmethod
    def zero(cls, module_space: SuperSpace, algebra_space: SuperSpace,
             degree: int = EVEN) -> "DerivationPair":
        return cls(GradedLinearMap.zero(module_space, module_space, degree),
                   GradedLinearMap.zero(algebra_space, algebra_space, degree), degree)

    @classmethod
    def identity_on_module(cls, module_space: SuperSpace,
                           algebra_space: SuperSpace) -> "DerivationPair":
        return cls(GradedLinearMap.identity(module_space),
                   GradedLinearMap.zero(algebra_space, algebra_space, EVEN), EVEN)

    def scale(self, c) -> "DerivationPair":
        return DerivationPair(self.d_p.scale(c), self.d_q.scale(c), self.degree)

    def __add__(self, other: "DerivationPair") -> "DerivationPair":
        return DerivationPair(self.d_p + other.d_p, self.d_q + other.d_q, self.degree)


def is_compatible(rep: Representation, pair: DerivationPair
                  ) -> tuple[bool, Optional[Violation]]:
    """Exact check of the compatibility identity over all ordered basis pairs."""
    if pair.d_p.source != rep.module_space or pair.d_q.source != rep.algebra.space:
        raise SpaceMismatch("pair does not act on the representation's spaces")
    sp = rep.algebra.space
    par = sp.parities
    alpha = pair.degree
    dp, dq = pair.d_p.matrix, pair.d_q.matrix
    n = sp.dim
    m = rep.module_space.dim
    for x in range(n):
        sx = Fraction(-1) if (alpha and par[x]) else Fraction(1)
        for y in range(n):
            phi = rep.phi_pair(x, y)
            s = Fraction(-1) if (alpha and (par[x] + par[y]) % 2) else Fraction(1)
            lhs = dp @ phi - (phi @ dp).scale(s)
            rhs = Matrix.zero(m, m)
            for k in range(n):
                if dq[k, x] != 0:
                    rhs = rhs + rep.phi_pair(k, y).scale(dq[k, x])
                if dq[k, y] != 0:
                    rhs = rhs + rep.phi_pair(x, k).scale(sx * dq[k, y])
            if lhs != rhs:
                flat_l = tuple(v for row in lhs.entries for v in row)
                flat_r = tuple(v for row in rhs.entries for v in row)
                return False, Violation("compatibility", (x, y), flat_l, flat_r)
    return True, None


@dataclass(frozen=True)
class CompatiblePairSpace:
    """One degree component of the compatible-pair superalgebra."""

    rep: Representation
    degree: int
    basis: tuple[DerivationPair, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def compatible_pair_space(rep: Representation, degree: int) -> CompatiblePairSpace:
    """Solve for all pairs of the given degree: D_q a superderivation of the
    acting algebra, D_p any homogeneous map of the module, compatibility holding.

    The module carries no bracket here (the abelian case), so D_p is
    constrained by homogeneity only; the returned basis is canonical.
    """
    alg = rep.algebra
    sp = alg.space
    vs = rep.module_space
    par = sp.parities
    n, m = sp.dim, vs.dim
    pos_p = homogeneous_positions(vs, vs, degree)
    pos_q = homogeneous_positions(sp, sp, degree)
    npos_p = len(pos_p)
    idx_p = {p: c for c, p in enumerate(pos_p)}
    idx_q = {p: npos_p + c for c, p in enumerate(pos_q)}
    total = npos_p + len(pos_q)
    rows: list[list[Fraction]] = []

    # D_q must satisfy the Leibniz rule on the acting algebra
    for a in range(n):
        for b in range(n):
            s2 = Fraction(-1) if (degree and par[a]) else Fraction(1)
            s3 = Fraction(-1) if (degree and (par[a] + par[b]) % 2) else Fraction(1)
            for c in range(n):
                for r in range(n):
                    row = [Fraction(0)] * total
                    hit = False
                    for k, ck in enumerate(alg.structure[a][b][c]):
                        if ck != 0 and (r, k) in idx_q:
                            row[idx_q[(r, k)]] += ck
                            hit = True
                    for t, (slot, sign) in enumerate(((a, Fraction(1)), (b, s2), (c, s3))):
                        for i in range(n):
                            if (i, slot) not in idx_q:
                                continue
                            args = [a, b, c]
                            args[t] = i
                            coeff = alg.structure[args[0]][args[1]][args[2]][r]
                            if coeff != 0:
                                row[idx_q[(i, slot)]] -= sign * coeff
                                hit = True
                    if hit:
                        rows.append(row)

    # compatibility ties D_p to D_q through Phi
    pm = [[rep.phi_pair(x, y) for y in range(n)] for x in range(n)]
    for x in range(n):
        sx = Fraction(-1) if (degree and par[x]) else Fraction(1)
        for y in range(n):
            s = Fraction(-1) if (degree and (par[x] + par[y]) % 2) else Fraction(1)
            phi = pm[x][y]
            for r in range(m):
                for t in range(m):
                    row = [Fraction(0)] * total
                    hit = False
                    # (D_p phi)_{rt} = sum_s Dp[r,s] phi[s,t]
                    for sidx in range(m):
                        if phi[sidx, t] != 0 and (r, sidx) in idx_p:
                            row[idx_p[(r, sidx)]] += phi[sidx, t]
                            hit = True
                    # -(+-)(phi D_p)_{rt} = -s * sum_s phi[r,s] Dp[s,t]
                    for sidx in range(m):
                        if phi[r, sidx] != 0 and (sidx, t) in idx_p:
                            row[idx_p[(sidx, t)]] -= s * phi[r, sidx]
                            hit = True
                    # -Phi(D_q x, y)_{rt} - sx Phi(x, D_q y)_{rt}
                    for k in range(n):
                        if (k, x) in idx_q:
                            coeff = pm[k][y][r, t]
                            if coeff != 0:
                                row[idx_q[(k, x)]] -= coeff
                                hit = True
                        if (k, y) in idx_q:
                            coeff = pm[x][k][r, t]
                            if coeff != 0:
                                row[idx_q[(k, y)]] -= sx * coeff
                                hit = True
                    if hit:
                        rows.append(row)

    if total == 0:
        return CompatiblePairSpace(rep, degree, ())
    system = Matrix(rows) if rows else Matrix.zero(1, total)
    pairs = []
    for v in kernel_basis(system).basis:
        d_p = map_from_positions(vs, vs, degree, pos_p, v[:npos_p])
        d_q = map_from_positions(sp, sp, degree, pos_q, v[npos_p:])
        pairs.append(DerivationPair(d_p, d_q, degree))
    return CompatiblePairSpace(rep, degree, tuple(pairs))


def pair_supercommutator(p1: DerivationPair, p2: DerivationPair) -> DerivationPair:
    """Componentwise [D, D'] = D D' - (-1)^{aa'} D' D, of degree a + a'."""
    return DerivationPair(supercommutator(p1.d_p, p2.d_p),
                          supercommutator(p1.d_q, p2.d_q),
                          (p1.degree + p2.degree) % 2)


def obstruction_cochain(rep: Representation, omega: Cochain,
                        pair: DerivationPair) -> Cochain:
    """The obstruction of the pair against an arity-3 cochain Omega.

    For even Omega this is verbatim

      Ob(x,y,z) = D_p(Omega(x,y,z)) - Omega(D_q x, y, z)
                  - (-1)^{a|x|} Omega(x, D_q y, z)
                  - (-1)^{a(|x|+|y|)} Omega(x, y, D_q z).

    For odd Omega the D_q side additionally carries the graded-commutator
    factor (-1)^{a|Omega|}; that factor is invisible in the even case and
    is the unique choice under which a compatible pair sends cocycles to
    cocycles in every parity combination (checked exhaustively in tests).
    """
    if omega.rep != rep or omega.wedge_slots != 1:
        raise SpaceMismatch("omega must be an arity-3 cochain of the representation")
    if pair.d_p.source != rep.module_space or pair.d_q.source != rep.algebra.space:
        raise SpaceMismatch("pair does not act on the representation's spaces")
    alpha = pair.degree
    sp = rep.algebra.space
    wb = rep.wedge
    par = sp.parities
    dq_cols = [pair.d_q.apply(sp.basis_vector(i)) for i in range(sp.dim)]
    twist = Fraction(-1) if (alpha and omega.parity) else Fraction(1)

    def cell(cellidx):
        w, g = cellidx
        a, b = wb.pairs[w]
        acc = list(pair.d_p.apply(omega.value((w, g))))
        t1 = omega._eval_mixed([wedge_expand(wb, dq_cols[a], sp.basis_vector(b)), g])
        s2 = Fraction(-1) if (alpha and par[a]) else Fraction(1)
        t2 = omega._eval_mixed([wedge_expand(wb, sp.basis_vector(a), dq_cols[b]), g])
        s3 = Fraction(-1) if (alpha and (par[a] + par[b]) % 2) else Fraction(1)
        t3 = omega._eval_mixed([w, dq_cols[g]])
        for r in range(len(acc)):
            acc[r] -= twist * (t1[r] + s2 * t2[r] + s3 * t3[r])
        return tuple(acc)

    return Cochain.from_function(rep, (omega.parity + alpha) % 2, 1, cell)


def require_compatible(rep: Representation, pair: DerivationPair) -> None:
    ok, witness = is_compatible(rep, pair)
    if not ok:
        raise NotCompatible(f"pair fails compatibility: {witness}")


def psi_action(rep: Representation, pair: DerivationPair, omega: Cochain,
               h_target: Optional[CohomologySpace] = None) -> tuple[Fraction, ...]:
    """Class of the obstruction cochain of a compatible pair at a cocycle.

    Returns coordinates in the first cohomology at parity
    |omega| + degree(pair); vanishes on coboundary representatives.
    """
    require_compatible(rep, pair)
    if not coboundary(omega).is_zero():
        raise NotACocycle("psi_action needs a cocycle representative")
    ob = obstruction_cochain(rep, omega, pair)
    if h_target is None:
        h_target = cohomology(rep, 3, ob.parity)
    return h_target.class_of(ob)


@dataclass(frozen=True)
class H1Action:
    """The action of compatible pairs on graded first cohomology.

    The cohomology space is materialized as a superspace whose basis
    points at the canonical representatives of the even and odd parts,
    so each pair acts by an honest homogeneous matrix.
    """

    rep: Representation
    h_even: CohomologySpace
    h_odd: CohomologySpace
    space: SuperSpace

    @classmethod
    def build(cls, rep: Representation) -> "H1Action":
        h_even = cohomology(rep, 3, 0)
        h_odd = cohomology(rep, 3, 1)
        labels = [(f"h0_{i}", 0) for i in range(h_even.dim)] \
            + [(f"h1_{i}", 1) for i in range(h_odd.dim)]
        return cls(rep, h_even, h_odd,
                   SuperSpace.build(f"H1({rep.algebra.space.name})", labels))

    @property
    def dim(self) -> int:
        return self.space.dim

    def representative(self, i: int) -> Cochain:
        if i < self.h_even.dim:
            return self.h_even.representatives[i]
        return self.h_odd.representatives[i - self.h_even.dim]

    def class_coords(self, z: Cochain) -> tuple[Fraction, ...]:
        ne = self.h_even.dim
        if z.parity == 0:
            part = self.h_even.class_of(z)
            return tuple(part) + (Fraction(0),) * self.h_odd.dim
        part = self.h_odd.class_of(z)
        return (Fraction(0),) * ne + tuple(part)

    def psi_matrix(self, pair: DerivationPair) -> GradedLinearMap:
        require_compatible(self.rep, pair)
        cols = []
        for i in range(self.dim):
            ob = obstruction_cochain(self.rep, self.representative(i), pair)
            cols.append(self.class_coords(ob))
        return GradedLinearMap(self.space, self.space, pair.degree,
                               Matrix.from_columns(cols, rows=self.dim))


@dataclass(frozen=True)
class ObstructionResult:
    pair: DerivationPair
    parity: int
    class_coords: tuple[Fraction, ...]
    trivial: bool
    h_dim: int
    ob: Cochain


def extension_obstruction(ext: ExtensionData, pair: DerivationPair,
                          section: Optional[GradedLinearMap] = None) -> ObstructionResult:
    """Obstruction class of a compatible pair against a concrete extension.

    The class does not depend on the chosen section: two sections shift
    the obstruction cochain by an exact term.
    """
    _ensure_valid(ext)
    rep = extract_phi(ext)
    require_compatible(rep, pair)
    omega = extract_omega(ext, section=section, rep=rep)
    ob = obstruction_cochain(rep, omega, pair)
    h = cohomology(rep, 3, ob.parity)
    coords = h.class_of(ob)
    return ObstructionResult(pair, ob.parity, coords,
                             all(x == 0 for x in coords), h.dim, ob)


@dataclass(frozen=True)
class LiftedDerivation:
    ext: ExtensionData
    pair: DerivationPair
    d_l: GradedLinearMap
    mu: Cochain
    mu_space_dim: int  # solution-space dimension of the mu-solve


def lift_pair(ext: ExtensionData, pair: DerivationPair) -> LiftedDerivation:
    """Lift an even compatible pair through the extension, if its class vanishes.

    Solves Ob = d(mu) for an even map mu: Q -> P and assembles
    D_l(s(x) + v) = s(D_q x) + mu(x) + D_p(v); the result is verified to
    be a superderivation of L making both squares commute.
    """
    _ensure_valid(ext)
    if pair.degree != EVEN:
        raise OddPairUnsupported("lifting is supported for even pairs only")
    rep = extract_phi(ext)
    require_compatible(rep, pair)
    omega = extract_omega(ext, rep=rep)
    ob = obstruction_cochain(rep, omega, pair)
    mu = coboundary_preimage(ob)
    if mu is None:
        raise NotExtensible("obstruction class is nontrivial; the pair has no lift")
    mu_space_dim = kernel_basis(coboundary_matrix(rep, 1, EVEN).to_matrix()).dim

    L, Q, P = ext.total, ext.quotient, ext.sub_space
    mu_map = mu.as_linear_map()
    d_l_cols = []
    for j in range(L.dim):
        q = ext.proj.apply(L.space.basis_vector(j))
        sq = ext.section.apply(q)
        rem = tuple(a - b for a, b in zip(L.space.basis_vector(j), sq))
        v = ext.p_coordinates(rem)
        col = vec_sum(
            ext.section.apply(pair.d_q.apply(q)),
            ext.incl.apply(mu_map.apply(q)),
            ext.incl.apply(pair.d_p.apply(v)))
        d_l_cols.append(col)
    d_l = GradedLinearMap(L.space, L.space, EVEN, Matrix.from_columns(d_l_cols))

    report = check_extensible_witness(ext, pair, d_l)
    if not report.all_ok:  # pragma: no cover - would indicate a sign error upstream
        raise NotExtensible(f"constructed lift failed verification: {report}")
    return LiftedDerivation(ext, pair, d_l, mu, mu_space_dim)


def vec_sum(*vectors):
    out = list(vectors[0])
    for v in vectors[1:]:
        for i, x in enumerate(v):
            out[i] += x
    return tuple(out)


@dataclass(frozen=True)
class WitnessReport:
    derivation_ok: bool
    incl_square_ok: bool
    proj_square_ok: bool
    violations: tuple[Violation, ...]
    compatible: Optional[bool]  # extensibility-implies-compatibility probe

    @property
    def all_ok(self) -> bool:
        return self.derivation_ok and self.incl_square_ok and self.proj_square_ok


def check_extensible_witness(ext: ExtensionData, pair: DerivationPair,
                             d_l: GradedLinearMap) -> WitnessReport:
    """Verify a claimed lift: a superderivation of L commuting with both legs.

    When all three checks pass, compatibility of the pair with the
    extracted representation is probed as well (extensibility implies
    compatibility) and reported.
    """
    _ensure_valid(ext)
    violations: list[Violation] = []
    L = ext.total
    ok_der, w = is_superderivation(L, d_l)
    if w is not None:
        violations.append(w)
    lhs_i = compose_graded(d_l, ext.incl)
    rhs_i = compose_graded(ext.incl, pair.d_p)
    ok_incl = lhs_i.matrix == rhs_i.matrix
    if not ok_incl:
        violations.append(Violation("incl_square", (),
                                    tuple(x for r in lhs_i.matrix.entries for x in r),
                                    tuple(x for r in rhs_i.matrix.entries for x in r)))
    lhs_p = compose_graded(ext.proj, d_l)
    rhs_p = compose_graded(pair.d_q, ext.proj)
    ok_proj = lhs_p.matrix == rhs_p.matrix
    if not ok_proj:
        violations.append(Violation("proj_square", (),
                                    tuple(x for r in lhs_p.matrix.entries for x in r),
                                    tuple(x for r in rhs_p.matrix.entries for x in r)))
    compatible = None
    if ok_der and ok_incl and ok_proj:
        compatible = is_compatible(extract_phi(ext), pair)[0]
    return WitnessReport(ok_der, ok_incl, ok_proj, tuple(violations), compatible)

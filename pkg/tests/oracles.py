"""Independent oracles the tests check production code against.

These deliberately do not share code paths with the package: the
elimination oracle is a fresh naive Gauss-Jordan, sympy supplies a
second opinion on kernels and echelon forms, permutation signs come
from inversion counting rather than transposition chasing, and the
first-coboundary conditions are re-derived directly from the displayed
four-term formula.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy

from super3lie.cohomology import CochainBasis
from super3lie.representation import Representation


def naive_gauss_jordan(rows):
    """Plain fraction elimination to reduced echelon form; returns (rows, pivots)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    lead = 0
    for r in range(nrows):
        while lead < ncols:
            sel = None
            for i in range(r, nrows):
                if m[i][lead] != 0:
                    sel = i
                    break
            if sel is None:
                lead += 1
                continue
            m[r], m[sel] = m[sel], m[r]
            pv = m[r][lead]
            m[r] = [x / pv for x in m[r]]
            for i in range(nrows):
                if i != r and m[i][lead] != 0:
                    c = m[i][lead]
                    m[i] = [a - c * b for a, b in zip(m[i], m[r])]
            pivots.append(lead)
            lead += 1
            break
        else:
            break
    return m, pivots


def sympy_rref(rows):
    mat = sympy.Matrix([[sympy.Rational(x) for x in row] for row in rows])
    red, pivots = mat.rref()
    out = [[Fraction(str(red[i, j])) for j in range(red.cols)] for i in range(red.rows)]
    return out, tuple(pivots)


def sympy_nullspace_dim(rows):
    if not rows:
        return 0
    mat = sympy.Matrix([[sympy.Rational(x) for x in row] for row in rows])
    return len(mat.nullspace())


def sympy_rank(rows):
    if not rows:
        return 0
    return sympy.Matrix([[sympy.Rational(x) for x in row] for row in rows]).rank()


def super_perm_sign(perm, parities):
    """Sign for reordering bracket arguments, by inversion counting.

    Each inverted pair contributes the antisymmetry -1 and the Koszul
    factor (-1)^{p_i p_j}: total (-1)^{inv} * (-1)^{sum of products over
    inverted pairs}.
    """
    inv = 0
    koszul = 0
    for a, b in itertools.combinations(range(len(perm)), 2):
        if perm[a] > perm[b]:
            inv += 1
            koszul += parities[perm[a]] * parities[perm[b]]
    # perm maps positions to original indices: (x_{perm[0]}, x_{perm[1]}, ...)
    return Fraction(-1) ** inv * Fraction(-1) ** koszul


def first_coboundary_condition_rows(rep: Representation, parity: int):
    """The linear conditions on an arity-1 cochain f for its coboundary to
    vanish, enumerated directly from the displayed four-term formula:

      0 = -f([x1,x2,x3]) + (-1)^{F(p1+p2)} Phi(x1,x2) f(x3)
          + (-1)^{(F+p1)(p2+p3)} Phi(x2,x3) f(x1)
          + (-1)^{F(p1+p3)+p3(p1+p2)} Phi(x3,x1) f(x2)

    Unknowns are the CochainBasis coordinates of f; one row per
    (x1<x2 or odd diagonal, x3, output component).
    """
    alg = rep.algebra
    sp = alg.space
    vs = rep.module_space
    wb = rep.wedge
    domain = CochainBasis(rep, parity, 0)
    F = parity
    rows = []

    def phi_of(i, j):
        return rep.phi_pair(i, j)

    for (x1, x2) in wb.pairs:
        p1, p2 = sp.parity(x1), sp.parity(x2)
        for x3 in range(sp.dim):
            p3 = sp.parity(x3)
            s2 = Fraction(-1) ** (F * (p1 + p2))
            s3 = Fraction(-1) ** ((F + p1) * (p2 + p3))
            s4 = Fraction(-1) ** (F * (p1 + p3) + p3 * (p1 + p2))
            m2, m3, m4 = phi_of(x1, x2), phi_of(x2, x3), phi_of(x3, x1)
            bracket = alg.structure[x1][x2][x3]
            for r in range(vs.dim):
                row = [Fraction(0)] * domain.dim
                hit = False
                for g, coef in enumerate(bracket):
                    if coef != 0:
                        col = domain.index.get(((g,), r))
                        if col is not None:
                            row[col] -= coef
                            hit = True
                for (mat, sign, g) in ((m2, s2, x3), (m3, s3, x1), (m4, s4, x2)):
                    for c in range(vs.dim):
                        if mat[r, c] != 0:
                            col = domain.index.get(((g,), c))
                            if col is not None:
                                row[col] += sign * mat[r, c]
                                hit = True
                if hit:
                    rows.append(row)
    return rows, domain

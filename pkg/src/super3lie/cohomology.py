"""Graded cochain complex and cohomology of a represented 3-Lie superalgebra.

A cochain of arity 2k+1 is a multilinear map on k wedge-square slots
followed by one algebra slot, valued in the module.  The literature
counts the same object as a (k+1)-cochain living in C^k; reports print
both namings, the code is keyed by arity throughout (1, 3, 5, ...).

The coboundary takes arity L to arity L+2.  On an input with wedge
slots X_1..X_p (p = k+1 of the *output*) and final slot z it is the sum
of four families, each with the Koszul sign of the arguments it moves:

  [A]  sum_{j<k} (-1)^j (-1)^{|X_j|(|X_{j+1}|+..+|X_{k-1}|)}
         f(.., X_j^, .., [X_j, X_k]_F, .., z)
  [B]  sum_j (-1)^j (-1)^{|X_j|(|X_{j+1}|+..+|X_p|)} f(.., X_j^, .., [X_j, z])
  [C]  sum_j (-1)^{j+1} (-1)^{|X_j|(|f|+|X_1|+..+|X_{j-1}|)}
         Phi(X_j) f(.., X_j^, .., z)
  [D]  (-1)^{p+1} [ (-1)^{(|b|+|z|)(|f|+|X_1|+..+|X_{p-1}|+|a|)}
         Phi(b, z) f(X_1..X_{p-1}, a)
       + (-1)^{(|a|+|z|)(|f|+|X_1|+..+|X_{p-1}|)+|X_p||z|}
         Phi(z, a) f(X_1..X_{p-1}, b) ]          with X_p = a ^ b.

The closed forms at arities 1 and 3 are transcribed separately in
`coboundary_p1` / `coboundary_p2` and must agree coefficient for
coefficient with the general engine; together with the exact
delta-squared-is-zero scan this pins the sign conventions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .algebra import leibniz_bracket_F
from .errors import (ArityMismatch, LevelCapExceeded, NotACocycle,
                     SpaceMismatch)
from .graded import GradedLinearMap, wedge_expand, wedge_pair_coords
from .linalg import (Matrix, QuotientData, Subspace, is_zero_vec,
                     kernel_basis, quotient_data, solve, vec, zero_vec)
from .representation import Representation

DEFAULT_MAX_INPUT_ARITY = 5  # inputs up to (k=2)-wedge tensors; outputs reach arity 7

ZERO_F = Fraction(0)


def _sgn(exp: int) -> Fraction:
    return Fraction(-1) if exp % 2 else Fraction(1)


def wedge_slots_of_arity(arity: int) -> int:
    if arity < 1 or arity % 2 == 0:
        raise ArityMismatch(f"cochain arity must be odd and >= 1, got {arity}")
    return (arity - 1) // 2


class Cochain:
    """Dense coefficient tensor of a homogeneous cochain.

    coeffs[w_1]...[w_k][g] is the module vector the cochain takes on the
    canonical basis cell; at a cell of total input parity t the vector
    must lie in the module component of parity t + parity(f).
    """

    __slots__ = ("rep", "parity", "wedge_slots", "coeffs")

    def __init__(self, rep: Representation, parity: int, wedge_slots: int, coeffs):
        if parity not in (0, 1):
            raise ValueError("cochain parity must be 0 or 1")
        if wedge_slots < 0:
            raise ArityMismatch("wedge_slots must be >= 0")
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "parity", parity)
        object.__setattr__(self, "wedge_slots", wedge_slots)
        object.__setattr__(self, "coeffs", _freeze(coeffs, wedge_slots))
        self._validate()

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("Cochain is immutable")

    # -- structure -----------------------------------------------------

    @property
    def arity(self) -> int:
        return 2 * self.wedge_slots + 1

    @property
    def level(self) -> int:
        """Alias for the arity."""
        return self.arity

    @property
    def classical_index(self) -> int:
        """This cochain is a p-cochain in the classical C^{p-1} counting."""
        return self.wedge_slots + 1

    def cells(self):
        wb = self.rep.wedge
        n = self.rep.algebra.dim
        return itertools.product(*([range(wb.dim)] * self.wedge_slots + [range(n)]))

    def cell_parity(self, cell) -> int:
        wb = self.rep.wedge
        t = sum(wb.parity(w) for w in cell[:-1]) + self.rep.algebra.space.parity(cell[-1])
        return t % 2

    def value(self, cell) -> tuple[Fraction, ...]:
        v = self.coeffs
        for c in cell:
            v = v[c]
        return v

    def _validate(self):
        wb = self.rep.wedge
        n = self.rep.algebra.dim
        m = self.rep.module_space.dim
        expect = [wb.dim] * self.wedge_slots + [n]
        _check_shape(self.coeffs, expect, m)
        vs = self.rep.module_space
        for cell in self.cells():
            want = (self.cell_parity(cell) + self.parity) % 2
            for r, x in enumerate(self.value(cell)):
                if x != 0 and vs.parity(r) != want:
                    raise SpaceMismatch(
                        f"cochain coefficient at cell {cell} has a component of wrong parity")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, rep: Representation, parity: int, wedge_slots: int) -> "Cochain":
        return cls(rep, parity, wedge_slots,
                   _build(rep, wedge_slots, lambda cell: zero_vec(rep.module_space.dim)))

    @classmethod
    def from_function(cls, rep: Representation, parity: int, wedge_slots: int, fn) -> "Cochain":
        return cls(rep, parity, wedge_slots, _build(rep, wedge_slots, fn))

    @classmethod
    def from_cells(cls, rep: Representation, parity: int, wedge_slots: int,
                   cells: dict) -> "Cochain":
        """Build from a sparse {cell: module vector} mapping; absent cells are zero."""
        zero = zero_vec(rep.module_space.dim)
        return cls(rep, parity, wedge_slots,
                   _build(rep, wedge_slots, lambda cell: cells.get(cell, zero)))

    @classmethod
    def from_linear_map(cls, rep: Representation, glm: GradedLinearMap) -> "Cochain":
        """View a homogeneous map algebra -> module as an arity-1 cochain."""
        if glm.source != rep.algebra.space or glm.target != rep.module_space:
            raise SpaceMismatch("map must go from the acting algebra to the module")
        return cls(rep, glm.degree, 0,
                   _build(rep, 0, lambda cell: glm.matrix.column(cell[0])))

    def as_linear_map(self) -> GradedLinearMap:
        if self.wedge_slots != 0:
            raise ArityMismatch("only arity-1 cochains are linear maps")
        cols = [self.value((g,)) for g in range(self.rep.algebra.dim)]
        return GradedLinearMap(self.rep.algebra.space, self.rep.module_space,
                               self.parity, Matrix.from_columns(cols))

    # -- algebra ----------------------------------------------------------

    def _combine(self, other: "Cochain", op) -> "Cochain":
        if (self.rep, self.parity, self.wedge_slots) != (other.rep, other.parity, other.wedge_slots):
            raise ArityMismatch("cochains are not combinable")
        return Cochain(self.rep, self.parity, self.wedge_slots,
                       _build(self.rep, self.wedge_slots,
                              lambda cell: tuple(op(a, b) for a, b in
                                              zip(self.value(cell), other.value(cell)))))

    def __add__(self, other: "Cochain") -> "Cochain":
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self._combine(other, lambda a, b: a - b)

    def scale(self, c) -> "Cochain":
        c = Fraction(c)
        return Cochain(self.rep, self.parity, self.wedge_slots,
                       _build(self.rep, self.wedge_slots,
                              lambda cell: tuple(c * x for x in self.value(cell))))

    def is_zero(self) -> bool:
        return all(is_zero_vec(self.value(cell)) for cell in self.cells())

    def __eq__(self, other) -> bool:
        return isinstance(other, Cochain) and self.rep == other.rep \
            and self.parity == other.parity and self.wedge_slots == other.wedge_slots \
            and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.parity, self.wedge_slots, self.coeffs))

    # -- evaluation ---------------------------------------------------------

    def eval(self, Xs: Sequence[Sequence], z: Sequence) -> tuple[Fraction, ...]:
        """Multilinear extension at wedge-coordinate vectors and a module-side z."""
        if len(Xs) != self.wedge_slots:
            raise ArityMismatch(f"expected {self.wedge_slots} wedge arguments, got {len(Xs)}")
        wb = self.rep.wedge
        args = [wb.coerce(X) for X in Xs] + [self.rep.algebra.space.coerce(z)]
        return self._eval_mixed(args)

    def _eval_mixed(self, args) -> tuple[Fraction, ...]:
        """Like eval, but each argument may be an int (basis index) or a vector."""
        supports = []
        for a in args:
            if isinstance(a, int):
                supports.append(((a, Fraction(1)),))
            else:
                supports.append(tuple((i, x) for i, x in enumerate(a) if x != 0))
        m = self.rep.module_space.dim
        out = [Fraction(0)] * m
        for combo in itertools.product(*supports):
            coeff = Fraction(1)
            cell = []
            for idx, c in combo:
                coeff *= c
                cell.append(idx)
            val = self.value(tuple(cell))
            for r, x in enumerate(val):
                if x != 0:
                    out[r] += coeff * x
        return tuple(out)


def _freeze(coeffs, depth):
    if depth < 0:
        return vec(coeffs)
    return tuple(_freeze(c, depth - 1) for c in coeffs)


def _check_shape(coeffs, expect, m):
    if not expect:
        if len(coeffs) != m:
            raise SpaceMismatch("cochain value of wrong module dimension")
        return
    if len(coeffs) != expect[0]:
        raise SpaceMismatch("cochain tensor has wrong shape")
    for sub in coeffs:
        _check_shape(sub, expect[1:], m)


def _build(rep: Representation, wedge_slots: int, fn):
    wb = rep.wedge
    n = rep.algebra.dim

    def rec(prefix, depth):
        if depth == 0:
            return tuple(fn(prefix + (g,)) for g in range(n))
        return tuple(rec(prefix + (w,), depth - 1) for w in range(wb.dim))

    return rec((), wedge_slots)


def eval_cochain(f: Cochain, Xs: Sequence[Sequence], z: Sequence) -> tuple[Fraction, ...]:
    return f.eval(Xs, z)


class _DeltaContext:
    """Per-call scratch for coboundary evaluation: memoized Leibniz
    products of basis wedge pairs and Phi matrices of basis pairs,
    keyed by small integers so no large value ever gets hashed."""

    __slots__ = ("rep", "alg", "wb", "wpar", "leibniz", "phi_pairs")

    def __init__(self, rep: Representation):
        self.rep = rep
        self.alg = rep.algebra
        self.wb = self.alg.wedge
        self.wpar = tuple(self.wb.parity(w) for w in range(self.wb.dim))
        self.leibniz: dict = {}
        self.phi_pairs: dict = {}

    def leibniz_of(self, w1: int, w2: int) -> tuple[Fraction, ...]:
        val = self.leibniz.get((w1, w2))
        if val is None:
            X = [ZERO_F] * self.wb.dim
            Y = [ZERO_F] * self.wb.dim
            X[w1] = Fraction(1)
            Y[w2] = Fraction(1)
            val = leibniz_bracket_F(self.alg, tuple(X), tuple(Y))
            self.leibniz[(w1, w2)] = val
        return val

    def phi_of(self, i: int, j: int) -> Matrix:
        val = self.phi_pairs.get((i, j))
        if val is None:
            val = self.rep.phi_pair(i, j)
            self.phi_pairs[(i, j)] = val
        return val


def _delta_terms(ctx: _DeltaContext, parity_f: int, out_wedges: tuple[int, ...], g: int):
    """Terms of the coboundary at one output cell.

    Yields (coefficient, phi_matrix_or_None, argument_list); arguments
    are wedge/basis indices except for at most one coordinate vector
    (the slot a bracket landed in).  The last argument is the final
    algebra slot of the input cochain.
    """
    alg = ctx.alg
    wb = ctx.wb
    p = len(out_wedges)
    wpar = [ctx.wpar[w] for w in out_wedges]
    gpar = alg.space.parity(g)

    # [A] merge X_j into X_k through the Leibniz product
    for j0 in range(p):
        for k0 in range(j0 + 1, p):
            merged = ctx.leibniz_of(out_wedges[j0], out_wedges[k0])
            if all(x == 0 for x in merged):
                continue
            exp = (j0 + 1) + wpar[j0] * sum(wpar[j0 + 1:k0])
            args: list = [out_wedges[t] for t in range(p) if t != j0]
            args[k0 - 1] = merged
            yield _sgn(exp), None, args + [g]

    # [B] move X_j onto the final slot
    for j0 in range(p):
        i, j = wb.pairs[out_wedges[j0]]
        moved = alg.structure[i][j][g]
        if is_zero_vec(moved):
            continue
        exp = (j0 + 1) + wpar[j0] * sum(wpar[j0 + 1:])
        args = [out_wedges[t] for t in range(p) if t != j0]
        yield _sgn(exp), None, args + [moved]

    # [C] act by Phi(X_j) outside
    for j0 in range(p):
        exp = j0 + wpar[j0] * ((parity_f + sum(wpar[:j0])) % 2)
        args = [out_wedges[t] for t in range(p) if t != j0]
        yield _sgn(exp), ctx.rep.phi[out_wedges[j0]], args + [g]

    # [D] split the last wedge pair against the final slot
    a, b = wb.pairs[out_wedges[-1]]
    pa, pb = alg.space.parity(a), alg.space.parity(b)
    prefix = (parity_f + sum(wpar[:-1])) % 2
    args_head = list(out_wedges[:-1])
    exp1 = (p + 1) + (pb + gpar) * ((prefix + pa) % 2)
    yield _sgn(exp1), ctx.phi_of(b, g), args_head + [a]
    exp2 = (p + 1) + (pa + gpar) * prefix + ((pa + pb) % 2) * gpar
    yield _sgn(exp2), ctx.phi_of(g, a), args_head + [b]


def coboundary(f: Cochain, max_input_arity: int = DEFAULT_MAX_INPUT_ARITY) -> Cochain:
    """The coboundary of f, two arities up; parity is preserved."""
    if f.arity > max_input_arity:
        raise LevelCapExceeded(
            f"coboundary input arity {f.arity} exceeds cap {max_input_arity}")
    rep = f.rep
    m = rep.module_space.dim
    p = f.wedge_slots + 1
    ctx = _DeltaContext(rep)

    def cell_value(cell):
        out_wedges, g = tuple(cell[:-1]), cell[-1]
        acc = [Fraction(0)] * m
        for coeff, phi, args in _delta_terms(ctx, f.parity, out_wedges, g):
            val = f._eval_mixed(args)
            if phi is not None:
                val = phi.matvec(val)
            for r, x in enumerate(val):
                if x != 0:
                    acc[r] += coeff * x
        return tuple(acc)

    return Cochain(rep, f.parity, p, _build(rep, p, cell_value))


def coboundary_p1(f: Cochain) -> Cochain:
    """Closed form of the coboundary on arity-1 cochains:

    (df)(x1^x2, x3) = -f([x1,x2,x3]) + (-1)^{|f|(|x1|+|x2|)} Phi(x1,x2) f(x3)
      + (-1)^{(|f|+|x1|)(|x2|+|x3|)} Phi(x2,x3) f(x1)
      + (-1)^{|f|(|x1|+|x3|)+|x3|(|x1|+|x2|)} Phi(x3,x1) f(x2)

    Must equal `coboundary(f)` coefficient for coefficient.
    """
    if f.wedge_slots != 0:
        raise ArityMismatch("coboundary_p1 expects an arity-1 cochain")
    rep = f.rep
    alg = rep.algebra
    wb = rep.wedge
    par = alg.space.parities
    F = f.parity
    ctx = _DeltaContext(rep)

    def cell_value(cell):
        w, g = cell
        x1, x2 = wb.pairs[w]
        p1, p2, p3 = par[x1], par[x2], par[g]
        acc = [-x for x in f._eval_mixed([alg.structure[x1][x2][g]])]
        t2 = ctx.phi_of(x1, x2).matvec(f.value((g,)))
        s2 = _sgn(F * ((p1 + p2) % 2))
        t3 = ctx.phi_of(x2, g).matvec(f.value((x1,)))
        s3 = _sgn(((F + p1) % 2) * ((p2 + p3) % 2))
        t4 = ctx.phi_of(g, x1).matvec(f.value((x2,)))
        s4 = _sgn(F * ((p1 + p3) % 2) + p3 * ((p1 + p2) % 2))
        for r in range(len(acc)):
            acc[r] += s2 * t2[r] + s3 * t3[r] + s4 * t4[r]
        return tuple(acc)

    return Cochain(rep, f.parity, 1, _build(rep, 1, cell_value))


def coboundary_p2(f: Cochain) -> Cochain:
    """Closed form of the coboundary on arity-3 cochains (the eight-term display).

    Must equal `coboundary(f)` coefficient for coefficient.
    """
    if f.wedge_slots != 1:
        raise ArityMismatch("coboundary_p2 expects an arity-3 cochain")
    rep = f.rep
    alg = rep.algebra
    wb = rep.wedge
    par = alg.space.parities
    F = f.parity
    ctx = _DeltaContext(rep)

    def cell_value(cell):
        w1, w2, g = cell
        x1, x2 = wb.pairs[w1]
        x3, x4 = wb.pairs[w2]
        p1, p2, p3, p4, p5 = par[x1], par[x2], par[x3], par[x4], par[g]
        e3 = alg.space.basis_vector(x3)
        e4 = alg.space.basis_vector(x4)
        m = rep.module_space.dim
        acc = [Fraction(0)] * m

        def add(sign_exp: int, vecval):
            s = _sgn(sign_exp)
            for r, x in enumerate(vecval):
                if x != 0:
                    acc[r] += s * x

        # -f([x1,x2,x3],x4,x5)
        add(1, f._eval_mixed([wedge_expand(wb, alg.structure[x1][x2][x3], e4), g]))
        # -(-1)^{|x3|(|x1|+|x2|)} f(x3,[x1,x2,x4],x5)
        add(1 + p3 * (p1 + p2), f._eval_mixed([wedge_expand(wb, e3, alg.structure[x1][x2][x4]), g]))
        # -(-1)^{(|x1|+|x2|)(|x3|+|x4|)} f(x3,x4,[x1,x2,x5])
        add(1 + (p1 + p2) * (p3 + p4), f._eval_mixed([w2, alg.structure[x1][x2][g]]))
        # +f(x1,x2,[x3,x4,x5])
        add(0, f._eval_mixed([w1, alg.structure[x3][x4][g]]))
        # +(-1)^{|f|(|x1|+|x2|)} Phi(x1,x2) f(x3,x4,x5)
        add(F * (p1 + p2), rep.phi[w1].matvec(f.value((w2, g))))
        # -(-1)^{(|f|+|x1|+|x2|)(|x3|+|x4|)} Phi(x3,x4) f(x1,x2,x5)
        add(1 + (F + p1 + p2) * (p3 + p4), rep.phi[w2].matvec(f.value((w1, g))))
        # -(-1)^{(|f|+|x1|+|x2|+|x3|)(|x4|+|x5|)} Phi(x4,x5) f(x1,x2,x3)
        add(1 + (F + p1 + p2 + p3) * (p4 + p5),
            ctx.phi_of(x4, g).matvec(f.value((w1, x3))))
        # -(-1)^{(|f|+|x1|+|x2|)(|x3|+|x5|)+|x5|(|x3|+|x4|)} Phi(x5,x3) f(x1,x2,x4)
        add(1 + (F + p1 + p2) * (p3 + p5) + p5 * (p3 + p4),
            ctx.phi_of(g, x3).matvec(f.value((w1, x4))))
        return tuple(acc)

    return Cochain(rep, f.parity, 2, _build(rep, 2, cell_value))


# -- coordinates, matrices, cohomology spaces -------------------------------


class CochainBasis:
    """Canonical coordinates on the homogeneous cochains of one arity/parity."""

    __slots__ = ("rep", "parity", "wedge_slots", "cells", "index")

    def __init__(self, rep: Representation, parity: int, wedge_slots: int):
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "parity", parity)
        object.__setattr__(self, "wedge_slots", wedge_slots)
        wb = rep.wedge
        n = rep.algebra.dim
        vs = rep.module_space
        cells = []
        for cell in itertools.product(*([range(wb.dim)] * wedge_slots + [range(n)])):
            t = (sum(wb.parity(w) for w in cell[:-1])
                 + rep.algebra.space.parity(cell[-1])) % 2
            want = (t + parity) % 2
            for r in range(vs.dim):
                if vs.parity(r) == want:
                    cells.append((cell, r))
        object.__setattr__(self, "cells", tuple(cells))
        object.__setattr__(self, "index", {c: i for i, c in enumerate(cells)})

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("CochainBasis is immutable")

    @property
    def dim(self) -> int:
        return len(self.cells)

    @property
    def arity(self) -> int:
        return 2 * self.wedge_slots + 1

    def coords(self, f: Cochain) -> tuple[Fraction, ...]:
        if (f.rep, f.parity, f.wedge_slots) != (self.rep, self.parity, self.wedge_slots):
            raise ArityMismatch("cochain does not belong to this coordinate system")
        return tuple(f.value(cell)[r] for cell, r in self.cells)

    def cochain(self, coords: Sequence) -> Cochain:
        coords = vec(coords)
        if len(coords) != self.dim:
            raise SpaceMismatch("coordinate vector of wrong length")
        m = self.rep.module_space.dim
        values: dict = {}
        for ((cell, r), x) in zip(self.cells, coords):
            if x != 0:
                values.setdefault(cell, [Fraction(0)] * m)[r] = x
        zero = zero_vec(m)
        return Cochain(self.rep, self.parity, self.wedge_slots,
                       _build(self.rep, self.wedge_slots,
                              lambda cell: tuple(values.get(cell, zero))))


@dataclass(frozen=True)
class DeltaMatrix:
    """Sparse coboundary matrix between two cochain coordinate systems."""

    domain: CochainBasis
    codomain: CochainBasis
    entries: tuple  # ((row, col), value) pairs, sorted

    def to_matrix(self) -> Matrix:
        rows = [[Fraction(0)] * self.domain.dim for _ in range(self.codomain.dim)]
        for (r, c), v in self.entries:
            rows[r][c] += v
        return Matrix(rows)

    def apply_coords(self, coords: Sequence[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * self.codomain.dim
        for (r, c), v in self.entries:
            if coords[c] != 0:
                out[r] += v * coords[c]
        return out


@lru_cache(maxsize=32)
def coboundary_matrix(rep: Representation, arity: int, parity: int,
                      max_input_arity: int = DEFAULT_MAX_INPUT_ARITY) -> DeltaMatrix:
    """Matrix of the coboundary leaving the given arity, assembled sparsely.

    Cached: the result is immutable and the inputs are value objects.
    """
    if arity > max_input_arity:
        raise LevelCapExceeded(f"coboundary input arity {arity} exceeds cap {max_input_arity}")
    k_in = wedge_slots_of_arity(arity)
    domain = CochainBasis(rep, parity, k_in)
    codomain = CochainBasis(rep, parity, k_in + 1)
    wb = rep.wedge
    n = rep.algebra.dim
    vs = rep.module_space
    allowed_v = {w: tuple(r for r in range(vs.dim) if vs.parity(r) == w) for w in (0, 1)}
    dom_index = domain.index
    cod_index = codomain.index
    ctx = _DeltaContext(rep)
    phi_nnz: dict = {}

    def nonzeros(phi: Matrix):
        triples = phi_nnz.get(id(phi))
        if triples is None:
            triples = tuple((r, c, v) for r, row in enumerate(phi.entries)
                            for c, v in enumerate(row) if v != 0)
            phi_nnz[id(phi)] = triples
        return triples

    acc: dict = {}
    for out in itertools.product(*([range(wb.dim)] * (k_in + 1) + [range(n)])):
        out_wedges, g = out[:-1], out[-1]
        t_out = (sum(wb.parity(w) for w in out_wedges)
                 + rep.algebra.space.parity(g) + parity) % 2
        out_coords = allowed_v[t_out]
        for coeff, phi, args in _delta_terms(ctx, parity, out_wedges, g):
            # expand the at-most-one vector slot into basis cells
            vector_pos = next((i for i, a in enumerate(args) if not isinstance(a, int)), None)
            if vector_pos is None:
                expansions = [(tuple(args), Fraction(1))]
            else:
                expansions = []
                for i, x in enumerate(args[vector_pos]):
                    if x != 0:
                        cell_in = list(args)
                        cell_in[vector_pos] = i
                        expansions.append((tuple(cell_in), x))
            for cell_in, cf in expansions:
                base = coeff * cf
                if phi is None:
                    for rr in out_coords:
                        col = dom_index.get((cell_in, rr))
                        row = cod_index.get((out, rr))
                        if col is not None and row is not None:
                            key = (row, col)
                            acc[key] = acc.get(key, ZERO_F) + base
                else:
                    for r_out, rr, val in nonzeros(phi):
                        col = dom_index.get((cell_in, rr))
                        if col is None:
                            continue
                        row = cod_index.get((out, r_out))
                        if row is not None:
                            key = (row, col)
                            acc[key] = acc.get(key, ZERO_F) + base * val
    entries = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
    return DeltaMatrix(domain, codomain, entries)


@lru_cache(maxsize=128)
def cocycle_space(rep: Representation, arity: int, parity: int,
                  max_input_arity: int = DEFAULT_MAX_INPUT_ARITY) -> Subspace:
    """Kernel of the coboundary at (arity, parity), in CochainBasis coordinates."""
    dm = coboundary_matrix(rep, arity, parity, max_input_arity)
    return kernel_basis(dm.to_matrix())


def coboundary_space(rep: Representation, arity: int, parity: int,
                     max_input_arity: int = DEFAULT_MAX_INPUT_ARITY) -> Subspace:
    """Image of the coboundary arriving at (arity, parity)."""
    basis = CochainBasis(rep, parity, wedge_slots_of_arity(arity))
    if arity == 1:
        return Subspace.from_vectors(basis.dim, [])
    dm = coboundary_matrix(rep, arity - 2, parity, max_input_arity)
    return Subspace.from_vectors(basis.dim, dm.to_matrix().columns())


@dataclass(frozen=True)
class CohomologySpace:
    """Z/B at one arity and parity, with canonical representative lifts."""

    rep: Representation
    arity: int
    parity: int
    basis: CochainBasis
    cocycles: Subspace
    coboundaries: Subspace
    quotient: QuotientData

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def classical_index(self) -> int:
        """H^p with p the classical cohomology-group index."""
        return (self.arity - 1) // 2

    @property
    def representatives(self) -> tuple[Cochain, ...]:
        return tuple(self.basis.cochain(v) for v in self.quotient.representatives)

    def class_of(self, z: Cochain, max_input_arity: int = DEFAULT_MAX_INPUT_ARITY
                 ) -> tuple[Fraction, ...]:
        """Canonical coordinates of [z]; requires z to be a cocycle."""
        if not coboundary(z, max_input_arity).is_zero():
            raise NotACocycle("class_of requires a cocycle")
        return self.quotient.reduce(self.basis.coords(z))

    def is_trivial(self, z: Cochain) -> bool:
        return is_zero_vec(self.class_of(z))


@lru_cache(maxsize=64)
def cohomology(rep: Representation, arity: int, parity: int,
               max_input_arity: int = DEFAULT_MAX_INPUT_ARITY) -> CohomologySpace:
    basis = CochainBasis(rep, parity, wedge_slots_of_arity(arity))
    Z = cocycle_space(rep, arity, parity, max_input_arity)
    B = coboundary_space(rep, arity, parity, max_input_arity)
    return CohomologySpace(rep, arity, parity, basis, Z, B, quotient_data(Z, B))


def is_cocycle(z: Cochain, max_input_arity: int = DEFAULT_MAX_INPUT_ARITY) -> bool:
    return coboundary(z, max_input_arity).is_zero()


# -- fully skew arity-3 cochains ---------------------------------------------
#
# The cochain complex antisymmetrizes only the wedge slot; the trilinear
# forms that classify abelian extensions are additionally super-skew
# between the second wedge component and the final slot, i.e. they
# factor through the super exterior cube.


def is_fully_skew(omega: Cochain) -> bool:
    """Does the arity-3 cochain satisfy omega(x,z,y) = -(-1)^{|y||z|} omega(x,y,z)?"""
    if omega.wedge_slots != 1:
        raise ArityMismatch("full skewness concerns arity-3 cochains")
    rep = omega.rep
    sp = rep.algebra.space
    wb = rep.wedge
    for x in range(sp.dim):
        for y in range(sp.dim):
            for z in range(sp.dim):
                lhs = omega._eval_mixed(
                    [wedge_expand(wb, sp.basis_vector(x), sp.basis_vector(z)), y])
                sign = Fraction(-1) if not (sp.parity(y) and sp.parity(z)) else Fraction(1)
                rhs = omega._eval_mixed(
                    [wedge_expand(wb, sp.basis_vector(x), sp.basis_vector(y)), z])
                if lhs != tuple(sign * v for v in rhs):
                    return False
    return True


def skew_constraint_rows(basis: CochainBasis) -> list[list[Fraction]]:
    """Linear conditions cutting the fully skew forms out of arity-3 cochains."""
    if basis.wedge_slots != 1:
        raise ArityMismatch("skew constraints concern arity-3 cochains")
    rep = basis.rep
    sp = rep.algebra.space
    wb = rep.wedge
    rows = []
    m = rep.module_space.dim
    for x in range(sp.dim):
        for y in range(sp.dim):
            for z in range(sp.dim):
                sign = Fraction(-1) if not (sp.parity(y) and sp.parity(z)) else Fraction(1)
                for r in range(m):
                    row = [Fraction(0)] * basis.dim
                    hit = False
                    for w, cf in wedge_pair_coords(wb, x, z):
                        col = basis.index.get(((w, y), r))
                        if col is not None:
                            row[col] += cf
                            hit = True
                    for w, cf in wedge_pair_coords(wb, x, y):
                        col = basis.index.get(((w, z), r))
                        if col is not None:
                            row[col] -= sign * cf
                            hit = True
                    if hit and any(v != 0 for v in row):
                        rows.append(row)
    return rows


def skew_cocycle_space(rep: Representation, parity: int,
                       max_input_arity: int = DEFAULT_MAX_INPUT_ARITY) -> Subspace:
    """Fully skew arity-3 cocycles: the forms eligible to build extensions."""
    dm = coboundary_matrix(rep, 3, parity, max_input_arity)
    rows = [list(r) for r in dm.to_matrix().entries]
    rows.extend(skew_constraint_rows(dm.domain))
    if not rows:
        return Subspace.full(dm.domain.dim)
    return kernel_basis(Matrix(rows))


def coboundary_preimage(z: Cochain, max_input_arity: int = DEFAULT_MAX_INPUT_ARITY
                        ) -> Optional[Cochain]:
    """Some f with coboundary(f) = z, or None; the canonical `solve` pick."""
    if z.wedge_slots == 0:
        raise ArityMismatch("arity-1 cochains are never coboundaries here")
    rep = z.rep
    dm = coboundary_matrix(rep, z.arity - 2, z.parity, max_input_arity)
    target = dm.codomain.coords(z)
    x = solve(dm.to_matrix(), target)
    if x is None:
        return None
    return dm.domain.cochain(x)

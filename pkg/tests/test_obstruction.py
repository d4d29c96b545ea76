import random
from fractions import Fraction

import pytest

import gen
from super3lie.algebra import homogeneous_positions, map_from_positions
from super3lie.cohomology import (Cochain, CochainBasis, coboundary,
                                  cohomology)
from super3lie.errors import (NotCompatible, NotExtensible,
                              OddPairUnsupported)
from super3lie.extension import build_extension, extract_phi
from super3lie.graded import (EVEN, ODD, GradedLinearMap, compose_graded,
                              supercommutator)
from super3lie.linalg import Matrix, Subspace
from super3lie.obstruction import (DerivationPair, H1Action,
                                   check_extensible_witness,
                                   compatible_pair_space,
                                   extension_obstruction, is_compatible,
                                   lift_pair, obstruction_cochain,
                                   pair_supercommutator, psi_action)
from super3lie.representation import Representation, adjoint_representation


def even3d_quotient_rep():
    """Nonzero Phi on a 2-dim abelian quotient: Phi(e2bar, e3bar) = 1 on <e1>."""
    return gen.quotient_representation(gen.even3d(), (0,))


def test_zero_pair_compatible():
    rep = even3d_quotient_rep()
    pair = DerivationPair.zero(rep.module_space, rep.algebra.space)
    assert is_compatible(rep, pair)[0]


def test_identity_zero_pair_compatible():
    rep = even3d_quotient_rep()
    pair = DerivationPair.identity_on_module(rep.module_space, rep.algebra.space)
    ok, witness = is_compatible(rep, pair)
    assert ok, witness


@pytest.mark.parametrize("seed", range(4))
def test_inner_pairs_compatible(seed):
    """(Phi(a^b), ad(a^b)) is compatible: that's axiom 3 in disguise."""
    rng = random.Random(seed)
    alg, rep = gen.algebra_rep_pair(rng, max_dim=4)
    wb = rep.wedge
    from super3lie.algebra import adjoint_action
    for w in range(wb.dim):
        X = [Fraction(0)] * wb.dim
        X[w] = Fraction(1)
        pair = DerivationPair(
            GradedLinearMap(rep.module_space, rep.module_space, wb.parity(w), rep.phi[w]),
            adjoint_action(rep.algebra, tuple(X)),
            wb.parity(w))
        ok, witness = is_compatible(rep, pair)
        assert ok, (w, witness)


def test_compatible_pair_space_zero_rep_dims():
    """Zero Phi on an abelian algebra: every (homogeneous d_p, derivation d_q)."""
    Q = gen.ThreeLieSuperalgebra.abelian(gen.superspace(2, 1))
    P = gen.superspace(1, 1)
    rep = Representation.zero(Q, P)
    from super3lie.algebra import derivation_space
    for degree in (EVEN, ODD):
        dim_hom_p = len(homogeneous_positions(P, P, degree))
        dim_der_q = derivation_space(Q, degree).dim
        assert compatible_pair_space(rep, degree).dim == dim_hom_p + dim_der_q


@pytest.mark.parametrize("seed", range(3))
def test_compatible_pair_space_members_and_inner_membership(seed):
    rng = random.Random(10 + seed)
    alg, rep = gen.algebra_rep_pair(rng, max_dim=4)
    wb = rep.wedge
    from super3lie.algebra import adjoint_action
    for degree in (EVEN, ODD):
        cps = compatible_pair_space(rep, degree)
        for pair in cps.basis:
            assert is_compatible(rep, pair)[0]
        flat = [tuple(x for row in p.d_p.matrix.entries for x in row)
                + tuple(x for row in p.d_q.matrix.entries for x in row)
                for p in cps.basis]
        span = Subspace.from_vectors(
            rep.module_space.dim ** 2 + alg.dim ** 2, flat)
        for w in range(wb.dim):
            if wb.parity(w) != degree:
                continue
            X = [Fraction(0)] * wb.dim
            X[w] = Fraction(1)
            inner = DerivationPair(
                GradedLinearMap(rep.module_space, rep.module_space, degree, rep.phi[w]),
                adjoint_action(rep.algebra, tuple(X)), degree)
            vec = tuple(x for row in inner.d_p.matrix.entries for x in row) \
                + tuple(x for row in inner.d_q.matrix.entries for x in row)
            assert span.contains(vec)


@pytest.mark.parametrize("seed", range(3))
def test_closure_under_supercommutator(seed):
    rng = random.Random(20 + seed)
    alg, rep = gen.algebra_rep_pair(rng, max_dim=4)
    spaces = {d: compatible_pair_space(rep, d) for d in (EVEN, ODD)}
    for da in (EVEN, ODD):
        for db in (EVEN, ODD):
            for p1 in spaces[da].basis[:3]:
                for p2 in spaces[db].basis[:3]:
                    comm = pair_supercommutator(p1, p2)
                    assert comm.degree == (da + db) % 2
                    ok, witness = is_compatible(rep, comm)
                    assert ok, witness


def test_pair_supercommutator_with_zero_and_antisymmetry():
    rng = random.Random(3)
    rep = even3d_quotient_rep()
    cps = compatible_pair_space(rep, EVEN)
    zero = DerivationPair.zero(rep.module_space, rep.algebra.space)
    for p in cps.basis[:3]:
        c = pair_supercommutator(p, zero)
        assert c.d_p.is_zero() and c.d_q.is_zero()
    for p1 in cps.basis[:2]:
        for p2 in cps.basis[:2]:
            lhs = pair_supercommutator(p1, p2)
            rhs = pair_supercommutator(p2, p1)
            assert lhs.d_p.matrix == rhs.d_p.matrix.scale(-1)
            assert lhs.d_q.matrix == rhs.d_q.matrix.scale(-1)


def test_super_jacobi_on_compatible_basis():
    rng = random.Random(4)
    rep = adjoint_representation(gen.super_central())
    spaces = {d: compatible_pair_space(rep, d) for d in (EVEN, ODD)}
    members = [(d, p) for d in (EVEN, ODD) for p in spaces[d].basis[:3]]
    for da, a in members:
        for db, b in members:
            for dc, c in members:
                lhs = pair_supercommutator(a, pair_supercommutator(b, c))
                t1 = pair_supercommutator(pair_supercommutator(a, b), c)
                sign = Fraction(-1) if (da and db) else Fraction(1)
                t2 = pair_supercommutator(b, pair_supercommutator(a, c))
                assert lhs.d_p.matrix == t1.d_p.matrix + t2.d_p.matrix.scale(sign)
                assert lhs.d_q.matrix == t1.d_q.matrix + t2.d_q.matrix.scale(sign)


def test_obstruction_zero_omega_and_identity_pair():
    rng = random.Random(5)
    rep = even3d_quotient_rep()
    basis = CochainBasis(rep, EVEN, 1)
    zero = basis.cochain([Fraction(0)] * basis.dim)
    pair = DerivationPair.identity_on_module(rep.module_space, rep.algebra.space)
    assert obstruction_cochain(rep, zero, pair).is_zero()
    omega = gen.random_cochain(rng, rep, EVEN, 1)
    # (id_P, 0) in even degree reproduces omega itself
    assert obstruction_cochain(rep, omega, pair) == omega


@pytest.mark.parametrize("seed", range(4))
def test_lemma_obstruction_is_cocycle(seed):
    rng = random.Random(30 + seed)
    alg, rep = gen.algebra_rep_pair(rng, max_dim=4)
    for degree in (EVEN, ODD):
        pair = gen.random_compatible_pair(rng, rep, degree)
        if pair is None:
            continue
        for parity in (EVEN, ODD):
            omega = gen.random_cocycle(rng, rep, parity)
            if omega is None:
                continue
            ob = obstruction_cochain(rep, omega, pair)
            assert ob.parity == (parity + degree) % 2
            assert coboundary(ob).is_zero()


@pytest.mark.parametrize("seed", range(4))
def test_psi_well_defined_cochain_identity(seed):
    """Ob of an exact form equals d(D_p lam - (-1)^{a|lam|} lam D_q), exactly."""
    rng = random.Random(40 + seed)
    alg, rep = gen.algebra_rep_pair(rng, max_dim=4)
    sp, vs = rep.algebra.space, rep.module_space
    for degree in (EVEN, ODD):
        pair = gen.random_compatible_pair(rng, rep, degree)
        if pair is None:
            continue
        for lam_parity in (EVEN, ODD):
            pos = homogeneous_positions(sp, vs, lam_parity)
            lam = map_from_positions(sp, vs, lam_parity, pos,
                                     [Fraction(rng.randint(-2, 2)) for _ in pos])
            dlam = coboundary(Cochain.from_linear_map(rep, lam))
            ob = obstruction_cochain(rep, dlam, pair)
            twist = Fraction(-1) if (degree and lam_parity) else Fraction(1)
            inner = compose_graded(pair.d_p, lam) \
                - compose_graded(lam, pair.d_q).scale(twist)
            assert ob == coboundary(Cochain.from_linear_map(rep, inner))


def test_psi_action_kills_trivial_classes():
    rng = random.Random(6)
    rep = even3d_quotient_rep()
    pair = gen.random_compatible_pair(rng, rep, EVEN)
    h = cohomology(rep, 3, EVEN)
    lam = gen.random_cochain(rng, rep, EVEN, 0)
    out = psi_action(rep, pair, coboundary(lam), h_target=h)
    assert all(x == 0 for x in out)


@pytest.mark.parametrize("seed", range(2))
def test_psi_homomorphism_on_h1(seed):
    """Psi([p1,p2]) = [Psi(p1), Psi(p2)] as exact matrices on graded H^1."""
    rng = random.Random(50 + seed)
    alg, rep = gen.algebra_rep_pair(rng, max_dim=4)
    action = H1Action.build(rep)
    if action.dim == 0:
        pytest.skip("trivial H^1 here")
    spaces = {d: compatible_pair_space(rep, d) for d in (EVEN, ODD)}
    members = [(d, p) for d in (EVEN, ODD) for p in spaces[d].basis[:2]]
    cached = [(d, p, action.psi_matrix(p)) for d, p in members]
    for da, p1, m1 in cached:
        for db, p2, m2 in cached:
            lhs = action.psi_matrix(pair_supercommutator(p1, p2))
            rhs = supercommutator(m1, m2)
            assert lhs.matrix == rhs.matrix, (da, db)


def test_extension_obstruction_direct_product_trivial():
    rep = even3d_quotient_rep()
    basis = CochainBasis(rep, EVEN, 1)
    ext = build_extension(rep, basis.cochain([Fraction(0)] * basis.dim))
    pair = DerivationPair.identity_on_module(rep.module_space, rep.algebra.space)
    res = extension_obstruction(ext, pair)
    assert res.trivial


def test_extension_obstruction_reproduces_omega_class():
    """(id_P, 0) gives Ob = Omega, so the class is [Omega] itself."""
    rep = Representation.zero(
        gen.ThreeLieSuperalgebra.abelian(gen.superspace(3, 0)), gen.superspace(1, 0))
    from super3lie.cohomology import skew_cocycle_space
    omega = CochainBasis(rep, EVEN, 1).cochain(skew_cocycle_space(rep, EVEN).basis[0])
    ext = build_extension(rep, omega)
    pair = DerivationPair.identity_on_module(rep.module_space, rep.algebra.space)
    res = extension_obstruction(ext, pair)
    assert not res.trivial
    h = cohomology(rep, 3, EVEN)
    assert res.class_coords == h.class_of(omega)


@pytest.mark.parametrize("seed", range(4))
def test_extension_obstruction_section_independent(seed):
    rng = random.Random(60 + seed)
    ext = gen.random_extension(rng)
    rep = extract_phi(ext)
    pair = gen.random_compatible_pair(rng, rep, EVEN)
    if pair is None:
        pytest.skip("no compatible pairs")
    s2 = gen.random_section(rng, ext)
    r1 = extension_obstruction(ext, pair)
    r2 = extension_obstruction(ext, pair, section=s2)
    assert r1.class_coords == r2.class_coords
    # cochain-level difference is d(D_p lam - lam D_q) with lam = s1 - s2 (even lam)
    lam = ext.section - s2
    lam_cols = [ext.p_coordinates(lam.apply(ext.quotient.space.basis_vector(i)))
                for i in range(ext.quotient.dim)]
    lam_map = GradedLinearMap(ext.quotient.space, ext.sub_space, EVEN,
                              Matrix.from_columns(lam_cols, rows=ext.sub_space.dim))
    inner = compose_graded(pair.d_p, lam_map) - compose_graded(lam_map, pair.d_q)
    assert r1.ob - r2.ob == coboundary(Cochain.from_linear_map(rep, inner))


def test_lift_direct_product_pairs():
    rep = even3d_quotient_rep()
    basis = CochainBasis(rep, EVEN, 1)
    ext = build_extension(rep, basis.cochain([Fraction(0)] * basis.dim))
    zero_pair = DerivationPair.zero(rep.module_space, rep.algebra.space)
    lifted = lift_pair(ext, zero_pair)
    assert lifted.d_l.is_zero()
    id_pair = DerivationPair.identity_on_module(rep.module_space, rep.algebra.space)
    lifted2 = lift_pair(ext, id_pair)
    # D_l = projection onto the P block
    n_q = ext.quotient.dim
    for j in range(ext.total.dim):
        col = lifted2.d_l.matrix.column(j)
        expected = ext.total.space.basis_vector(j) if j >= n_q \
            else ext.total.space.zero()
        assert col == expected
    report = check_extensible_witness(ext, id_pair, lifted2.d_l)
    assert report.all_ok and report.compatible


def test_lift_refuses_odd_pairs():
    rep = adjoint_representation(gen.super_central())
    basis = CochainBasis(rep, EVEN, 1)
    ext = build_extension(rep, basis.cochain([Fraction(0)] * basis.dim))
    cps = compatible_pair_space(rep, ODD)
    if cps.dim == 0:
        pytest.skip("no odd pairs")
    with pytest.raises(OddPairUnsupported):
        lift_pair(ext, cps.basis[0])


def test_lift_refuses_incompatible_pairs():
    rep = even3d_quotient_rep()
    basis = CochainBasis(rep, EVEN, 1)
    ext = build_extension(rep, basis.cochain([Fraction(0)] * basis.dim))
    # d_q = identity on Q is NOT a superderivation companion for d_p = 0 here
    bad = DerivationPair(
        GradedLinearMap.zero(rep.module_space, rep.module_space, EVEN),
        GradedLinearMap.identity(rep.algebra.space), EVEN)
    if is_compatible(rep, bad)[0]:
        pytest.skip("pair unexpectedly compatible")
    with pytest.raises(NotCompatible):
        lift_pair(ext, bad)


def test_lift_not_extensible_on_obstructed_extension():
    rep = Representation.zero(
        gen.ThreeLieSuperalgebra.abelian(gen.superspace(3, 0)), gen.superspace(1, 0))
    from super3lie.cohomology import skew_cocycle_space
    omega = CochainBasis(rep, EVEN, 1).cochain(skew_cocycle_space(rep, EVEN).basis[0])
    ext = build_extension(rep, omega)
    pair = DerivationPair.identity_on_module(rep.module_space, rep.algebra.space)
    with pytest.raises(NotExtensible):
        lift_pair(ext, pair)


def test_witness_report_detects_broken_lifts():
    rep = even3d_quotient_rep()
    basis = CochainBasis(rep, EVEN, 1)
    ext = build_extension(rep, basis.cochain([Fraction(0)] * basis.dim))
    id_pair = DerivationPair.identity_on_module(rep.module_space, rep.algebra.space)
    # d_l = 0 with a nonzero pair: the inclusion square must fail
    zero_dl = GradedLinearMap.zero(ext.total.space, ext.total.space, EVEN)
    report = check_extensible_witness(ext, id_pair, zero_dl)
    assert not report.incl_square_ok
    assert any(v.kind == "incl_square" for v in report.violations)
    # perturbing a genuine lift off the P block breaks the inclusion square
    lifted = lift_pair(ext, id_pair)
    rows = [list(r) for r in lifted.d_l.matrix.entries]
    n_q = ext.quotient.dim
    rows[n_q][n_q] += 1
    bad_dl = GradedLinearMap(ext.total.space, ext.total.space, EVEN, Matrix(rows))
    report2 = check_extensible_witness(ext, id_pair, bad_dl)
    assert not report2.all_ok
    assert not report2.incl_square_ok or not report2.derivation_ok


@pytest.mark.parametrize("seed", range(5))
def test_lift_iff_trivial_class(seed):
    """Lift exists iff the class vanishes: both directions on generated data."""
    rng = random.Random(70 + seed)
    ext = gen.random_extension(rng)
    rep = extract_phi(ext)
    for _ in range(3):
        pair = gen.random_compatible_pair(rng, rep, EVEN)
        if pair is None:
            break
        res = extension_obstruction(ext, pair)
        if res.trivial:
            lifted = lift_pair(ext, pair)
            report = check_extensible_witness(ext, pair, lifted.d_l)
            assert report.all_ok and report.compatible
        else:
            with pytest.raises(NotExtensible):
                lift_pair(ext, pair)

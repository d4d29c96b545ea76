"""Acceptance suite: one test per criterion, every comparison exact.

Each test prints one `[criterion N] PASS ...` line (run with -s to see
them).  Tolerances are zero throughout: all assertions are equalities
of rationals, never approximations.  Matrix composites in criterion 1
run in exact int64 sparse arithmetic with overflow bounds asserted.
"""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
import scipy.sparse as sp

import gen
from super3lie.algebra import verify_algebra
from super3lie.cohomology import (Cochain, CochainBasis, coboundary,
                                  coboundary_matrix, coboundary_p1,
                                  coboundary_p2, cohomology)
from super3lie.errors import NotExtensible
from super3lie.extension import (build_extension, extract_omega, extract_phi,
                                 h1_zero_implies_split, is_split,
                                 section_is_homomorphism)
from super3lie.graded import (EVEN, ODD, GradedLinearMap, compose_graded,
                              supercommutator)
from super3lie.linalg import Matrix
from super3lie.obstruction import (DerivationPair, H1Action,
                                   check_extensible_witness,
                                   compatible_pair_space,
                                   extension_obstruction, is_compatible,
                                   lift_pair, obstruction_cochain,
                                   pair_supercommutator)
from super3lie.representation import (Representation, adjoint_representation,
                                      verify_representation)

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def announce(n: int, message: str):
    print(f"\n[criterion {n:2d}] PASS: {message}")


# -- instance schedules ---------------------------------------------------------


def sized_algebra(rng: random.Random, n: int):
    """A certified algebra of dimension exactly n with both parities."""
    while True:
        if n == 2:
            alg = rng.choice([
                gen.ThreeLieSuperalgebra.abelian(gen.superspace(1, 1)),
                gen.nilpotent_algebra(rng, 1, 1),
            ])
        elif n == 3:
            alg = rng.choice([
                gen.super_central(), gen.odd_line_action(),
                gen.nilpotent_algebra(rng, 2, 1), gen.nilpotent_algebra(rng, 1, 2),
            ])
        elif n == 4:
            alg = rng.choice([
                gen.nilpotent_algebra(rng, 2, 2),
                gen.direct_sum(gen.super_central(),
                               gen.ThreeLieSuperalgebra.abelian(gen.superspace(0, 1))),
                gen.direct_sum(gen.even3d(),
                               gen.ThreeLieSuperalgebra.abelian(gen.superspace(0, 1))),
            ])
        else:
            alg = rng.choice([
                gen.direct_sum(gen.even3d(),
                               gen.ThreeLieSuperalgebra.abelian(gen.superspace(1, 1))),
                gen.direct_sum(gen.super_central(),
                               gen.ThreeLieSuperalgebra.abelian(gen.superspace(1, 1))),
                gen.direct_sum(gen.heisenberg(),
                               gen.ThreeLieSuperalgebra.abelian(gen.superspace(0, 1))),
            ])
        if rng.random() < 0.5:
            alg = gen.twist_algebra(rng, alg)
        if alg.dim != n or alg.space.even_dim == 0 or alg.space.odd_dim == 0:
            continue
        report = verify_algebra(alg)
        assert report.ok
        return alg


def rep_for_size(rng: random.Random, alg):
    """Pick a representation that keeps the arity-7 scan affordable."""
    if alg.dim <= 4:
        return gen.valid_representation(rng, alg)
    rep = Representation.zero(alg, gen.superspace(1, 1))
    assert verify_representation(rep).ok
    return rep


REP_POOL_BUILDERS = (
    lambda: gen.quotient_representation(gen.even3d(), (0,)),
    lambda: adjoint_representation(gen.even3d()),
    lambda: adjoint_representation(gen.super_central()),
    lambda: adjoint_representation(gen.odd_line_action()),
    lambda: gen.quotient_representation(gen.odd_line_action(), (2,)),
    lambda: gen.quotient_representation(gen.heisenberg(), (3,)),
    lambda: gen.quotient_representation(
        gen.direct_sum(gen.even3d(), gen.super_central()), (4,)),
)


# -- criterion 1 -------------------------------------------------------------------


def sparse_int(dm) -> sp.csr_matrix:
    rows, cols, data = [], [], []
    for (r, c), v in dm.entries:
        assert v.denominator == 1, "integer fast path needs integral entries"
        assert abs(v.numerator) < 10 ** 6
        rows.append(r)
        cols.append(c)
        data.append(int(v))
    return sp.csr_matrix((data, (rows, cols)),
                         shape=(dm.codomain.dim, dm.domain.dim), dtype=np.int64)


def composite_zero(rep, parity) -> bool:
    d13 = coboundary_matrix(rep, 1, parity)
    d35 = coboundary_matrix(rep, 3, parity)
    d57 = coboundary_matrix(rep, 5, parity)
    a13, a35, a57 = sparse_int(d13), sparse_int(d35), sparse_int(d57)
    for big, small in ((a35, a13), (a57, a35)):
        if small.shape[1] == 0 or big.shape[0] == 0:
            continue
        bound = (abs(big).max() if big.nnz else 0) * (abs(small).max() if small.nnz else 0)
        assert bound * max(big.shape[1], 1) < 2 ** 62, "overflow bound violated"
        if (big @ small).nnz != 0:
            return False
    return True


def test_criterion_01_delta_squared_master():
    rng = random.Random(20260810)
    schedule = [2] * 14 + [3] * 16 + [4] * 12 + [5] * 8
    assert len(schedule) == 50
    checked = 0
    for n in schedule:
        alg = sized_algebra(rng, n)
        rep = rep_for_size(rng, alg)
        for parity in (EVEN, ODD):
            assert composite_zero(rep, parity), \
                f"delta^2 != 0 at dim {n}, parity {parity}"
        checked += 1
    assert checked == 50
    announce(1, "delta-squared is exactly zero on both composites "
                f"(C0->C1->C2 and C1->C2->C3), both parities, {checked} pairs, dims 2-5")


# -- criterion 2 -------------------------------------------------------------------


def test_criterion_02_specialization_equality():
    rng = random.Random(2)
    count1 = count3 = 0
    for _ in range(11):
        alg, rep = gen.algebra_rep_pair(rng, max_dim=4)
        for parity in (EVEN, ODD):
            for _ in range(3):
                f1 = gen.random_cochain(rng, rep, parity, 0)
                assert coboundary(f1) == coboundary_p1(f1)
                count1 += 1
                f3 = gen.random_cochain(rng, rep, parity, 1)
                assert coboundary(f3) == coboundary_p2(f3)
                count3 += 1
    assert count1 + count3 >= 100
    announce(2, f"general engine equals the closed forms coefficient-for-coefficient "
                f"on {count1} arity-1 and {count3} arity-3 random cochains")


# -- criteria 3 and 4 ----------------------------------------------------------------


def generated_extensions(seed: int, count: int):
    rng = random.Random(seed)
    exts = []
    while len(exts) < count:
        exts.append(gen.random_extension(rng))
    return rng, exts


def test_criterion_03_extracted_data_is_lawful():
    rng, exts = generated_extensions(3, 20)
    for ext in exts:
        section = gen.random_section(rng, ext)
        rep = extract_phi(ext, section=section)
        assert verify_representation(rep).ok
        omega = extract_omega(ext, section=section, rep=rep)
        assert coboundary(omega).is_zero()
    announce(3, "extract_phi verifies and extract_omega is closed on 20 "
                "generated extensions with random sections")


def test_criterion_04_section_independence():
    rng, exts = generated_extensions(4, 20)
    for ext in exts:
        s1 = gen.random_section(rng, ext)
        s2 = gen.random_section(rng, ext)
        rep = extract_phi(ext, section=s1)
        om1 = extract_omega(ext, section=s1, rep=rep)
        om2 = extract_omega(ext, section=s2, rep=rep)
        lam = s1 - s2
        lam_cols = [ext.p_coordinates(lam.apply(ext.quotient.space.basis_vector(i)))
                    for i in range(ext.quotient.dim)]
        lam_map = GradedLinearMap(ext.quotient.space, ext.sub_space, EVEN,
                                  Matrix.from_columns(lam_cols, rows=ext.sub_space.dim))
        assert om1 - om2 == coboundary(Cochain.from_linear_map(rep, lam_map))
        pair = DerivationPair.identity_on_module(ext.sub_space, ext.quotient.space)
        r1 = extension_obstruction(ext, pair, section=s1)
        r2 = extension_obstruction(ext, pair, section=s2)
        assert r1.class_coords == r2.class_coords
    announce(4, "Omega_1 - Omega_2 = d(s_1 - s_2) exactly and obstruction classes "
                "coincide for two random sections on 20 extensions")


# -- criterion 5 ----------------------------------------------------------------------


def test_criterion_05_cocycle_iff_fundamental_identity():
    rng = random.Random(5)
    built_ok = 0
    fi_failures = 0
    attempts = 0
    while (built_ok < 8 or fi_failures < 5) and attempts < 120:
        attempts += 1
        rep = REP_POOL_BUILDERS[rng.randrange(len(REP_POOL_BUILDERS))]()
        omega = gen.random_skew_cocycle(rng, rep)
        if omega is not None and built_ok < 8:
            ext = build_extension(rep, omega)
            assert verify_algebra(ext.total).ok
            built_ok += 1
        bad = gen.random_skew_noncocycle(rng, rep)
        if bad is not None and fi_failures < 5:
            ext = build_extension(rep, bad, check_cocycle=False)
            report = verify_algebra(ext.total)
            assert report.grading and report.super_skew
            assert not report.fundamental_identity
            assert any(v.kind == "fundamental_identity" for v in report.violations)
            fi_failures += 1
    assert built_ok >= 8 and fi_failures >= 5
    announce(5, f"twisted bracket verifies for {built_ok} cocycles and the FI "
                f"fails with witnesses for {fi_failures} non-cocycles")


# -- criterion 6 ----------------------------------------------------------------------


def test_criterion_06_h1_zero_forces_split():
    rng, exts = generated_extensions(6, 14)
    # seed the ensemble with extensions whose relevant H-space vanishes
    for builder, subs in ((gen.even3d, (0,)), (gen.odd_line_action, (2,))):
        rep = gen.quotient_representation(builder(), subs)
        basis = CochainBasis(rep, EVEN, 1)
        exts.append(build_extension(rep, basis.cochain([Fraction(0)] * basis.dim)))
    zero_h = 0
    for ext in exts:
        report = h1_zero_implies_split(ext)
        if report.h1_even_dim == 0:
            zero_h += 1
            assert report.split and report.status == "verified"
            res = is_split(ext)
            ok, witness = section_is_homomorphism(ext, res.section_prime)
            assert ok, witness
    assert zero_h >= 2
    announce(6, f"every generated extension with vanishing even H^1 splits, with the "
                f"homomorphism identity verified on all basis triples ({zero_h} instances)")


# -- criteria 7, 8, 9 --------------------------------------------------------------------


def test_criterion_07_obstruction_is_cocycle():
    rng = random.Random(7)
    done = {EVEN: 0, ODD: 0}
    attempts = 0
    while (done[EVEN] + done[ODD] < 30 or min(done.values()) < 8) and attempts < 200:
        attempts += 1
        rep = REP_POOL_BUILDERS[rng.randrange(len(REP_POOL_BUILDERS))]()
        degree = ODD if done[ODD] < done[EVEN] else EVEN
        pair = gen.random_compatible_pair(rng, rep, degree)
        omega = gen.random_cocycle(rng, rep, EVEN)
        if pair is None or omega is None:
            continue
        ob = obstruction_cochain(rep, omega, pair)
        assert coboundary(ob).is_zero()
        done[degree] += 1
    assert done[EVEN] + done[ODD] >= 30 and min(done.values()) >= 8
    announce(7, f"delta(Ob) = 0 exactly on {done[EVEN]} even-degree and "
                f"{done[ODD]} odd-degree compatible-pair instances")


def test_criterion_08_psi_well_defined():
    rng = random.Random(8)
    count = 0
    attempts = 0
    from super3lie.algebra import homogeneous_positions, map_from_positions
    while count < 30 and attempts < 150:
        attempts += 1
        rep = REP_POOL_BUILDERS[rng.randrange(len(REP_POOL_BUILDERS))]()
        degree = rng.choice((EVEN, ODD))
        pair = gen.random_compatible_pair(rng, rep, degree)
        if pair is None:
            continue
        sp_, vs = rep.algebra.space, rep.module_space
        pos = homogeneous_positions(sp_, vs, EVEN)
        lam = map_from_positions(sp_, vs, EVEN, pos,
                                 [Fraction(rng.randint(-2, 2)) for _ in pos])
        dlam = coboundary(Cochain.from_linear_map(rep, lam))
        ob = obstruction_cochain(rep, dlam, pair)
        inner = compose_graded(pair.d_p, lam) - compose_graded(lam, pair.d_q)
        assert ob == coboundary(Cochain.from_linear_map(rep, inner))
        count += 1
    assert count >= 30
    # Psi of a trivial class is trivial
    rep = adjoint_representation(gen.even3d())
    pair = gen.random_compatible_pair(rng, rep, EVEN)
    h = cohomology(rep, 3, EVEN)
    lam_c = gen.random_cochain(rng, rep, EVEN, 0)
    from super3lie.obstruction import psi_action
    assert all(x == 0 for x in psi_action(rep, pair, coboundary(lam_c), h_target=h))
    announce(8, f"Ob(d lambda) = d(D_p lambda - lambda D_q) exactly on {count} "
                "instances; trivial classes map to trivial classes")


def test_criterion_09_t_phi_closure_and_psi_homomorphism():
    rng = random.Random(9)
    # closure on every generated representation
    closure_reps = 0
    for build in REP_POOL_BUILDERS:
        rep = build()
        spaces = {d: compatible_pair_space(rep, d) for d in (EVEN, ODD)}
        for da in (EVEN, ODD):
            for db in (EVEN, ODD):
                for p1 in spaces[da].basis[:2]:
                    for p2 in spaces[db].basis[:2]:
                        comm = pair_supercommutator(p1, p2)
                        ok, witness = is_compatible(rep, comm)
                        assert ok, witness
        closure_reps += 1
    # Psi is a homomorphism on graded H^1, exact matrix identity
    hom_instances = 0
    for build in (REP_POOL_BUILDERS[1], REP_POOL_BUILDERS[2], REP_POOL_BUILDERS[3]):
        rep = build()
        action = H1Action.build(rep)
        if action.dim == 0:
            continue
        spaces = {d: compatible_pair_space(rep, d) for d in (EVEN, ODD)}
        members = [p for d in (EVEN, ODD) for p in spaces[d].basis[:2]]
        cached = [(p, action.psi_matrix(p)) for p in members]
        for p1, m1 in cached:
            for p2, m2 in cached:
                lhs = action.psi_matrix(pair_supercommutator(p1, p2))
                assert lhs.matrix == supercommutator(m1, m2).matrix
                hom_instances += 1
    assert hom_instances >= 10
    announce(9, f"T_Phi closed under the supercommutator on {closure_reps} reps; "
                f"Psi respects brackets on graded H^1 in {hom_instances} exact "
                "matrix identities")


# -- criterion 10 ----------------------------------------------------------------------


def test_criterion_10_lift_iff_trivial_class():
    rng = random.Random(10)
    instances = 0
    lifted = 0
    obstructed = 0
    attempts = 0
    while instances < 20 and attempts < 120:
        attempts += 1
        ext = gen.random_extension(rng)
        rep = extract_phi(ext)
        pair = gen.random_compatible_pair(rng, rep, EVEN)
        if pair is None:
            continue
        res = extension_obstruction(ext, pair)
        if res.trivial:
            lift = lift_pair(ext, pair)
            report = check_extensible_witness(ext, pair, lift.d_l)
            assert report.all_ok
            assert report.compatible  # extensible implies compatible
            lifted += 1
        else:
            with pytest.raises(NotExtensible):
                lift_pair(ext, pair)
            obstructed += 1
        instances += 1
    assert instances >= 20 and lifted >= 3 and obstructed >= 3
    announce(10, f"lift_pair succeeded exactly on the {lifted} trivial classes and "
                 f"raised NotExtensible on the {obstructed} nontrivial ones; every "
                 "lift passed the witness checks and implied compatibility")


# -- criterion 11 ----------------------------------------------------------------------


def test_criterion_11_cli_determinism_and_round_trip(tmp_path):
    from super3lie.cli import main
    from super3lie.io_formats import parse_algebra, serialize_algebra
    from test_cli import JOB_COMMANDS

    job_files = sorted(p.name for p in (CORPUS / "jobs").glob("*.json"))
    assert job_files == sorted(JOB_COMMANDS)
    for job_name in job_files:
        command, _ = JOB_COMMANDS[job_name]
        out1 = tmp_path / f"{job_name}.1.json"
        out2 = tmp_path / f"{job_name}.2.json"
        main([command, "--job", str(CORPUS / "jobs" / job_name), "--out", str(out1)])
        main([command, "--job", str(CORPUS / "jobs" / job_name), "--out", str(out2)])
        assert out1.read_bytes() == out2.read_bytes(), job_name

    algebra_files = sorted((CORPUS / "algebras").glob("*.json"))
    round_tripped = 0
    for path in algebra_files:
        if path.name == "conflicting_skew.json":
            continue  # the deliberate parse-failure fixture
        alg = parse_algebra(str(path))
        again = parse_algebra(serialize_algebra(alg))
        assert again.structure == alg.structure
        round_tripped += 1
    announce(11, f"byte-identical reports across two runs of all {len(job_files)} "
                 f"corpus jobs; parse/serialize round-trip exact on "
                 f"{round_tripped} algebra files")

"""Command-line interface.

    super3lie <command> --job <file> [--out <file>] [--figures <dir>]
                        [--dim-cap N] [--level-cap P]

Commands read their inputs from a JSON job file (definitions inline or
as paths relative to the job file) and emit a deterministic JSON report
plus a human summary on standard output.  Exit codes: 0 success, 1
mathematical negative (axioms fail, extension does not split, class
nontrivial, ...), 2 malformed input or unsupported request.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import figures
from .algebra import DEFAULT_DIM_CAP, derivation_space, verify_algebra
from .cohomology import Cochain, coboundary, cohomology
from .errors import (DimensionCapExceeded, InvalidAlgebra, InvalidExtension,
                     InvalidRepresentation, LevelCapExceeded, NotACocycle,
                     NotCompatible, NotExtensible, NotInSubspace,
                     OddPairUnsupported, ParseError, SpaceMismatch,
                     Super3LieError)
from .extension import build_extension, extract_omega, extract_phi, is_split
from .graded import EVEN, GradedLinearMap
from .io_formats import (format_rational, load_json, parse_algebra,
                         parse_cochain, parse_extension, parse_linear_map,
                         parse_pair, parse_representation, report_to_json,
                         serialize_algebra, serialize_cochain,
                         serialize_linear_map, serialize_matrix,
                         serialize_violation)
from .linalg import Matrix
from .obstruction import (check_extensible_witness, compatible_pair_space,
                          extension_obstruction, lift_pair)
from .representation import verify_representation

DEFAULT_LEVEL_CAP = 3  # highest cochain level fed to the coboundary (classical counting)

COMMANDS = ("verify", "derivations", "verify-rep", "cohomology", "build-extension",
            "extract", "split-test", "compatible-pairs", "obstruction", "lift")


class Job:
    def __init__(self, data: dict, base_dir: str, dim_cap: int, level_cap: int):
        self.data = data
        self.base_dir = base_dir
        options = data.get("options", {})
        self.dim_cap = dim_cap if dim_cap is not None else options.get("dim_cap", DEFAULT_DIM_CAP)
        self.level_cap = level_cap if level_cap is not None \
            else options.get("level_cap", DEFAULT_LEVEL_CAP)
        self.options = options

    @property
    def max_arity(self) -> int:
        return 2 * self.level_cap - 1

    def require(self, key):
        if key not in self.data:
            raise ParseError(f"job file is missing the {key!r} definition")
        return self.data[key]


def _parities(job: Job):
    p = job.options.get("parity", "both")
    if p == "both":
        return (0, 1)
    if p in (0, 1):
        return (p,)
    raise ParseError("options.parity must be 0, 1 or \"both\"")


def _degrees(job: Job):
    d = job.options.get("degree", "both")
    if d == "both":
        return (0, 1)
    if d in (0, 1):
        return (d,)
    raise ParseError("options.degree must be 0, 1 or \"both\"")


# -- command handlers -------------------------------------------------------


def cmd_verify(job: Job):
    alg = parse_algebra(job.require("algebra"), job.base_dir)
    report = verify_algebra(alg, dim_cap=job.dim_cap)
    out = {
        "command": "verify",
        "algebra": alg.space.name,
        "dims": {"total": alg.dim, "even": alg.space.even_dim, "odd": alg.space.odd_dim},
        "checks": {"grading": report.grading, "super_skew": report.super_skew,
                   "fundamental_identity": report.fundamental_identity},
        "witnesses": [serialize_violation(v, alg.space) for v in report.violations],
        "status": "ok" if report.ok else "negative",
    }
    summary = [f"algebra {alg.space.name!r}: dims {alg.dim} "
               f"(even {alg.space.even_dim}, odd {alg.space.odd_dim})",
               f"grading={report.grading} super_skew={report.super_skew} "
               f"fundamental_identity={report.fundamental_identity}"]
    return out, (0 if report.ok else 1), summary


def cmd_derivations(job: Job):
    alg = parse_algebra(job.require("algebra"), job.base_dir)
    if alg.dim > job.dim_cap:
        raise DimensionCapExceeded(f"dimension {alg.dim} exceeds cap {job.dim_cap}")
    spaces = {}
    for degree in _degrees(job):
        ds = derivation_space(alg, degree)
        spaces[str(degree)] = {
            "dim": ds.dim,
            "basis": [serialize_matrix(d.matrix) for d in ds.basis],
        }
    out = {"command": "derivations", "algebra": alg.space.name,
           "dims": {d: s["dim"] for d, s in spaces.items()},
           "spaces": spaces, "status": "ok"}
    summary = [f"superderivations of {alg.space.name!r}: "
               + ", ".join(f"degree {d}: dim {s['dim']}" for d, s in sorted(spaces.items()))]
    return out, 0, summary


def cmd_verify_rep(job: Job):
    rep = parse_representation(job.require("representation"), job.base_dir)
    report = verify_representation(rep)
    out = {
        "command": "verify-rep",
        "dims": {"algebra": rep.algebra.dim, "module": rep.module_space.dim},
        "checks": {"deg": report.deg, "skew": report.skew,
                   "axiom3": report.axiom3, "axiom4": report.axiom4},
        "witnesses": [serialize_violation(v, rep.algebra.space) for v in report.violations],
        "status": "ok" if report.ok else "negative",
    }
    summary = [f"representation on {rep.module_space.name!r}: "
               f"deg={report.deg} skew={report.skew} "
               f"axiom3={report.axiom3} axiom4={report.axiom4}"]
    return out, (0 if report.ok else 1), summary


def cmd_cohomology(job: Job):
    rep = parse_representation(job.require("representation"), job.base_dir)
    p = job.options.get("p", 1)
    if not isinstance(p, int) or p < 1:
        raise ParseError("options.p must be a positive integer")
    arity = 2 * p + 1
    if arity > job.max_arity:
        raise LevelCapExceeded(
            f"H^{p} needs coboundaries of level-{p + 1} cochains; raise --level-cap")
    blocks = {}
    summary = [f"H^{p} (cocycles of arity {arity})"]
    for parity in _parities(job):
        h = cohomology(rep, arity, parity, max_input_arity=job.max_arity)
        reps = []
        for c in h.representatives:
            reps.append(serialize_cochain(c))
        blocks[str(parity)] = {
            "cochain_dim": h.basis.dim,
            "cocycle_dim": h.cocycles.dim,
            "coboundary_dim": h.coboundaries.dim,
            "dim": h.dim,
            "representatives": reps,
        }
        summary.append(f"  parity {parity}: cochains {h.basis.dim}, "
                       f"Z {h.cocycles.dim}, B {h.coboundaries.dim}, H {h.dim}")
    out = {"command": "cohomology", "classical_index": p, "arity": arity,
           "level": {"cochain_level": p + 1, "arity": arity},
           "dims": {par: b["dim"] for par, b in blocks.items()},
           "blocks": blocks, "status": "ok"}
    return out, 0, summary


def cmd_build_extension(job: Job):
    rep = parse_representation(job.require("representation"), job.base_dir)
    omega = parse_cochain(job.require("omega"), rep, job.base_dir)
    check = job.options.get("check_cocycle", True)
    ext = build_extension(rep, omega, check_cocycle=check)
    report = verify_algebra(ext.total, dim_cap=job.dim_cap)
    out = {
        "command": "build-extension",
        "total": serialize_algebra(ext.total),
        "sub_labels": [ext.total.space.labels[i] for i in ext.sub_indices],
        "checks": {"grading": report.grading, "super_skew": report.super_skew,
                   "fundamental_identity": report.fundamental_identity},
        "witnesses": [serialize_violation(v, ext.total.space) for v in report.violations],
        "status": "ok" if report.ok else "negative",
    }
    summary = [f"built extension of dim {ext.total.dim}; "
               f"verify_algebra -> {'ok' if report.ok else 'FAILED'}"]
    return out, (0 if report.ok else 1), summary


def _job_sections(job: Job, ext):
    """Optional section overrides in jobs: 'section' and 'second_section'."""
    sections = [None, None]
    for slot, key in enumerate(("section", "second_section")):
        if key in job.data:
            s = parse_linear_map(job.data[key], ext.quotient.space,
                                 ext.total.space, key)
            if (ext.proj.matrix @ s.matrix) != Matrix.identity(ext.quotient.dim):
                raise ParseError(f"{key} is not a section of the projection")
            sections[slot] = s
    return sections


def cmd_extract(job: Job):
    ext = parse_extension(job.require("extension"), job.base_dir)
    section, second = _job_sections(job, ext)
    rep = extract_phi(ext, section=section)
    omega = extract_omega(ext, section=section, rep=rep)
    rep_report = verify_representation(rep)
    closed = coboundary(omega, max_input_arity=job.max_arity).is_zero()
    out = {
        "command": "extract",
        "phi": [{"pair": [rep.algebra.space.labels[i], rep.algebra.space.labels[j]],
                 "matrix": serialize_matrix(rep.phi[w])}
                for w, (i, j) in enumerate(rep.wedge.pairs)],
        "omega": serialize_cochain(omega),
        "representation_ok": rep_report.ok,
        "omega_is_cocycle": closed,
        "status": "ok" if (rep_report.ok and closed) else "negative",
    }
    summary = [f"extracted Phi ({len(rep.phi)} wedge pairs) and Omega; "
               f"representation ok: {rep_report.ok}; cocycle: {closed}"]
    if second is not None:
        rep2 = extract_phi(ext, section=second)
        omega2 = extract_omega(ext, section=second, rep=rep)
        diff = omega2 - omega
        lam = second - (section if section is not None else ext.section)
        lam_cols = [ext.p_coordinates(lam.apply(ext.quotient.space.basis_vector(i)))
                    for i in range(ext.quotient.dim)]
        lam_map = GradedLinearMap(ext.quotient.space, ext.sub_space, EVEN,
                                  Matrix.from_columns(lam_cols, rows=ext.sub_space.dim))
        delta_lam = coboundary(Cochain.from_linear_map(rep, lam_map))
        out["section_independence"] = {
            "phi_equal": rep2.phi == rep.phi,
            "omega_difference_is_coboundary_of_section_difference": diff == delta_lam,
        }
        summary.append("section independence: phi_equal="
                       f"{out['section_independence']['phi_equal']}, "
                       "omega diff = d(lambda): "
                       f"{out['section_independence']['omega_difference_is_coboundary_of_section_difference']}")
    return out, (0 if out["status"] == "ok" else 1), summary


def cmd_split_test(job: Job):
    ext = parse_extension(job.require("extension"), job.base_dir)
    result = is_split(ext)
    if result is None:
        out = {"command": "split-test", "split": False, "status": "negative"}
        return out, 1, ["extension does not split (class of Omega is nontrivial)"]
    out = {
        "command": "split-test",
        "split": True,
        "xi": serialize_cochain(result.xi),
        "section_prime": serialize_linear_map(result.section_prime),
        "status": "ok",
    }
    return out, 0, ["extension splits; homomorphic section emitted"]


def cmd_compatible_pairs(job: Job):
    rep = parse_representation(job.require("representation"), job.base_dir)
    blocks = {}
    for degree in _degrees(job):
        cps = compatible_pair_space(rep, degree)
        blocks[str(degree)] = {
            "dim": cps.dim,
            "basis": [{"d_p": serialize_matrix(p.d_p.matrix),
                       "d_q": serialize_matrix(p.d_q.matrix)} for p in cps.basis],
        }
    out = {"command": "compatible-pairs",
           "dims": {d: b["dim"] for d, b in blocks.items()},
           "blocks": blocks, "status": "ok"}
    summary = ["compatible pairs: "
               + ", ".join(f"degree {d}: dim {b['dim']}" for d, b in sorted(blocks.items()))]
    return out, 0, summary


def cmd_obstruction(job: Job):
    ext = parse_extension(job.require("extension"), job.base_dir)
    pair = parse_pair(job.require("pair"), ext.sub_space, ext.quotient.space, job.base_dir)
    section, second = _job_sections(job, ext)
    result = extension_obstruction(ext, pair, section=section)
    out = {
        "command": "obstruction",
        "parity": result.parity,
        "h_dim": result.h_dim,
        "class": [format_rational(x) for x in result.class_coords],
        "trivial": result.trivial,
        "status": "ok" if result.trivial else "negative",
    }
    summary = [f"obstruction class in H^1 parity {result.parity} (dim {result.h_dim}): "
               + ("trivial" if result.trivial else "NONTRIVIAL")]
    if second is not None:
        result2 = extension_obstruction(ext, pair, section=second)
        out["section_independence"] = {
            "classes_equal": result.class_coords == result2.class_coords}
        summary.append(f"class from second section equal: "
                       f"{result.class_coords == result2.class_coords}")
    return out, (0 if result.trivial else 1), summary


def cmd_lift(job: Job):
    ext = parse_extension(job.require("extension"), job.base_dir)
    pair = parse_pair(job.require("pair"), ext.sub_space, ext.quotient.space, job.base_dir)
    try:
        lifted = lift_pair(ext, pair)
    except NotExtensible:
        result = extension_obstruction(ext, pair)
        out = {
            "command": "lift",
            "extensible": False,
            "reason": "NotExtensible",
            "class": [format_rational(x) for x in result.class_coords],
            "status": "negative",
        }
        return out, 1, ["pair is NOT extensible; obstruction class emitted"]
    witness = check_extensible_witness(ext, pair, lifted.d_l)
    out = {
        "command": "lift",
        "extensible": True,
        "d_l": serialize_linear_map(lifted.d_l),
        "mu": serialize_cochain(lifted.mu),
        "mu_solution_space_dim": lifted.mu_space_dim,
        "witness_checks": {
            "derivation": witness.derivation_ok,
            "incl_square": witness.incl_square_ok,
            "proj_square": witness.proj_square_ok,
            "compatible": witness.compatible,
        },
        "status": "ok",
    }
    summary = [f"pair lifted; mu solution space dim {lifted.mu_space_dim}; "
               f"diagram checks all pass: {witness.all_ok}"]
    return out, 0, summary


HANDLERS = {
    "verify": cmd_verify,
    "derivations": cmd_derivations,
    "verify-rep": cmd_verify_rep,
    "cohomology": cmd_cohomology,
    "build-extension": cmd_build_extension,
    "extract": cmd_extract,
    "split-test": cmd_split_test,
    "compatible-pairs": cmd_compatible_pairs,
    "obstruction": cmd_obstruction,
    "lift": cmd_lift,
}


def run_command(command: str, job: Job):
    """Dispatch; returns (report dict, exit code, summary lines)."""
    if command not in HANDLERS:
        raise ParseError(f"unknown command {command!r}")
    return HANDLERS[command](job)


def _render_figures(command: str, report: dict, fig_dir: str) -> list[str]:
    os.makedirs(fig_dir, exist_ok=True)
    written = []
    rows = [("command", command), ("status", report.get("status", ""))]
    if command in ("verify", "verify-rep", "build-extension"):
        checks = report.get("checks", {})
        rows += [(f"check.{k}", v) for k, v in sorted(checks.items())]
        rows.append(("witnesses", len(report.get("witnesses", []))))
        written.append(figures.bar_chart(
            fig_dir, f"{command}-checks.png", f"{command}: failed checks",
            list(sorted(checks)), [0 if checks[k] else 1 for k in sorted(checks)],
            ylabel="0 = pass, 1 = fail"))
    elif command in ("derivations", "compatible-pairs"):
        dims = report.get("dims", {})
        rows += [(f"dim.deg{k}", v) for k, v in sorted(dims.items())]
        written.append(figures.bar_chart(
            fig_dir, f"{command}-dims.png", f"{command}: dimensions",
            [f"degree {k}" for k in sorted(dims)], [dims[k] for k in sorted(dims)]))
    elif command == "cohomology":
        labels, values = [], []
        for par, block in sorted(report.get("blocks", {}).items()):
            for key in ("cochain_dim", "cocycle_dim", "coboundary_dim", "dim"):
                labels.append(f"p{par}:{key.replace('_dim', '') or 'H'}")
                values.append(block[key])
                rows.append((f"parity{par}.{key}", block[key]))
        written.append(figures.bar_chart(
            fig_dir, "cohomology-dims.png",
            f"H^{report.get('classical_index')} dimensions", labels, values))
    elif command == "obstruction":
        coords = report.get("class", [])
        rows += [(f"class[{i}]", c) for i, c in enumerate(coords)]
        written.append(figures.class_coordinates(
            fig_dir, "obstruction-class.png", "obstruction class coordinates", coords))
    else:
        for key in ("split", "extensible", "representation_ok", "omega_is_cocycle"):
            if key in report:
                rows.append((key, report[key]))
    written.append(figures.write_summary_csv(fig_dir, rows))
    return written


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="super3lie",
        description="exact computations with finite-dimensional 3-Lie superalgebras")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--job", required=True, help="JSON job file")
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--figures", help="render charts and summary.csv into this directory")
        p.add_argument("--dim-cap", type=int, default=None,
                       help=f"algebra dimension cap (default {DEFAULT_DIM_CAP})")
        p.add_argument("--level-cap", type=int, default=None,
                       help=f"cochain level cap (default {DEFAULT_LEVEL_CAP})")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        data = load_json(args.job)
        if not isinstance(data, dict):
            raise ParseError("job file must contain a JSON object")
        job = Job(data, os.path.dirname(os.path.abspath(args.job)),
                  args.dim_cap, args.level_cap)
        report, code, summary = run_command(args.command, job)
    except (NotACocycle, NotCompatible, NotInSubspace, InvalidExtension,
            InvalidAlgebra, InvalidRepresentation) as e:
        report = {"command": args.command, "status": "negative",
                  "error": type(e).__name__, "message": str(e)}
        code, summary = 1, [f"{type(e).__name__}: {e}"]
    except (ParseError, SpaceMismatch, DimensionCapExceeded, LevelCapExceeded,
            OddPairUnsupported) as e:
        report = {"command": args.command, "status": "error",
                  "error": type(e).__name__, "message": str(e)}
        code, summary = 2, [f"{type(e).__name__}: {e}"]
    except Super3LieError as e:
        report = {"command": args.command, "status": "error",
                  "error": type(e).__name__, "message": str(e)}
        code, summary = 2, [f"{type(e).__name__}: {e}"]

    payload = report_to_json(report)
    for line in summary:
        print(line)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    if args.figures:
        for path in _render_figures(args.command, report, args.figures):
            print(f"wrote {path}")
    return code


if __name__ == "__main__":
    raise SystemExit(main())

"""JSON file formats: algebras, representations, cochains, extensions, jobs.

Rationals travel as strings "p/q" (or "p"), never floats, so values
survive serialization exactly.  Bracket files state any orientation of
a triple once; parsing completes the super-skew orbit and rejects
redundant statements that contradict it.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Optional

from .algebra import ThreeLieSuperalgebra, skew_orbit
from .cohomology import Cochain, wedge_slots_of_arity
from .errors import LabelUnknown, ParseError, SkewInconsistent, SpaceMismatch
from .extension import ExtensionData, build_extension, coordinate_extension
from .graded import EVEN, GradedLinearMap, SuperSpace, wedge_pair_coords
from .linalg import Matrix
from .obstruction import DerivationPair
from .representation import Representation, adjoint_representation


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise ParseError(f"expected a rational, got boolean {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad rational literal {s!r}: {e}") from None
    raise ParseError(f"expected a rational as int or 'p/q' string, got {type(s).__name__}")


def format_rational(q: Fraction) -> str:
    return str(q)


def _require(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing field {key!r} in {where}")
    return obj[key]


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON in {path}: {e}") from None


def _resolve(obj, base_dir: Optional[str]):
    """Definition slots accept either an inline object or a path string."""
    if isinstance(obj, str):
        path = obj if os.path.isabs(obj) or base_dir is None \
            else os.path.join(base_dir, obj)
        return load_json(path)
    return obj


# -- superspaces and algebras -------------------------------------------------


def parse_superspace(obj, where: str = "superspace") -> SuperSpace:
    name = obj.get("name", where) if isinstance(obj, dict) else where
    basis_def = _require(obj, "basis", where)
    items = []
    for entry in basis_def:
        label = _require(entry, "label", f"{where}.basis")
        parity = _require(entry, "parity", f"{where}.basis")
        if parity not in (0, 1):
            raise ParseError(f"parity of {label!r} must be 0 or 1, got {parity!r}")
        items.append((label, parity))
    try:
        return SuperSpace.build(name, items)
    except ValueError as e:
        raise ParseError(str(e)) from None


def parse_algebra(obj, base_dir: Optional[str] = None) -> ThreeLieSuperalgebra:
    """An algebra file: basis plus stated bracket triples, skew-completed.

    Verification of the axioms is deliberately not run here; `verify`
    is a separate command.
    """
    obj = _resolve(obj, base_dir)
    space = parse_superspace(obj, "algebra")
    n = space.dim
    par = space.parities

    def index(label):
        try:
            return space.index(label)
        except KeyError:
            raise LabelUnknown(f"unknown basis label {label!r}") from None

    assigned: dict = {}
    for entry in obj.get("bracket", []):
        args = _require(entry, "args", "bracket entry")
        if len(args) != 3:
            raise ParseError(f"bracket args must have 3 labels, got {args!r}")
        i, j, k = (index(a) for a in args)
        value_map = _require(entry, "value", "bracket entry")
        value = [Fraction(0)] * n
        for label, q in value_map.items():
            value[index(label)] = parse_rational(q)
        value = tuple(value)
        for (a, b, c), sign in skew_orbit((i, j, k), par):
            sv = tuple(sign * x for x in value)
            prev = assigned.get((a, b, c))
            if prev is not None and prev != sv:
                raise SkewInconsistent(
                    f"triple ({space.labels[a]},{space.labels[b]},{space.labels[c]}) "
                    f"receives two incompatible values")
            assigned[(a, b, c)] = sv
    zero = space.zero()
    tensor = [[[assigned.get((i, j, k), zero) for k in range(n)]
               for j in range(n)] for i in range(n)]
    return ThreeLieSuperalgebra.from_tensor(space, tensor)


def serialize_superspace(space: SuperSpace) -> dict:
    return {"name": space.name,
            "basis": [{"label": lbl, "parity": p} for lbl, p in space.basis]}


def serialize_algebra(alg: ThreeLieSuperalgebra) -> dict:
    """Canonical form: one entry per nonzero sorted triple i <= j <= k."""
    out = serialize_superspace(alg.space)
    labels = alg.space.labels
    entries = []
    n = alg.dim
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                val = alg.structure[i][j][k]
                if any(x != 0 for x in val):
                    entries.append({
                        "args": [labels[i], labels[j], labels[k]],
                        "value": {labels[r]: format_rational(x)
                                  for r, x in enumerate(val) if x != 0}})
    out["bracket"] = entries
    return out


# -- linear maps ---------------------------------------------------------------


def parse_matrix(obj, rows: int, cols: int, where: str) -> Matrix:
    if not isinstance(obj, list) or len(obj) != rows \
            or any(not isinstance(r, list) or len(r) != cols for r in obj):
        raise ParseError(f"{where}: expected a {rows}x{cols} matrix of rationals")
    return Matrix([[parse_rational(x) for x in r] for r in obj])


def parse_linear_map(obj, source: SuperSpace, target: SuperSpace,
                     where: str = "map") -> GradedLinearMap:
    if obj == "identity":
        if source != target:
            raise ParseError(f"{where}: 'identity' needs equal source and target")
        return GradedLinearMap.identity(source)
    if obj == "zero":
        return GradedLinearMap.zero(source, target, EVEN)
    if isinstance(obj, dict) and obj.get("zero_of_degree") in (0, 1):
        return GradedLinearMap.zero(source, target, obj["zero_of_degree"])
    degree = _require(obj, "degree", where)
    if degree not in (0, 1):
        raise ParseError(f"{where}: degree must be 0 or 1")
    matrix = parse_matrix(_require(obj, "matrix", where), target.dim, source.dim, where)
    try:
        return GradedLinearMap(source, target, degree, matrix)
    except SpaceMismatch as e:
        raise ParseError(f"{where}: {e}") from None


def serialize_matrix(m: Matrix) -> list:
    return [[format_rational(x) for x in row] for row in m.entries]


def serialize_linear_map(glm: GradedLinearMap) -> dict:
    return {"degree": glm.degree, "matrix": serialize_matrix(glm.matrix)}


# -- representations ------------------------------------------------------------


def parse_representation(obj, base_dir: Optional[str] = None) -> Representation:
    obj = _resolve(obj, base_dir)
    if "adjoint_of" in obj:
        alg = parse_algebra(obj["adjoint_of"], base_dir)
        return adjoint_representation(alg)
    alg = parse_algebra(_require(obj, "algebra", "representation"), base_dir)
    module = parse_superspace(_require(obj, "module", "representation"), "module")
    m = module.dim
    wb = alg.wedge
    mats = [Matrix.zero(m, m) for _ in range(wb.dim)]
    stated = set()
    for entry in obj.get("phi", []):
        pair = _require(entry, "pair", "phi entry")
        if len(pair) != 2:
            raise ParseError(f"phi pair must have 2 labels, got {pair!r}")
        try:
            i, j = alg.space.index(pair[0]), alg.space.index(pair[1])
        except KeyError as e:
            raise LabelUnknown(f"unknown basis label {e.args[0]!r}") from None
        coords = wedge_pair_coords(wb, i, j)
        if not coords:
            raise ParseError(f"phi pair {pair!r} wedges to zero (even diagonal)")
        (w, sign), = coords
        if w in stated:
            raise ParseError(f"phi pair {pair!r} restates wedge basis element {wb.pairs[w]}")
        stated.add(w)
        mat = parse_matrix(_require(entry, "matrix", "phi entry"), m, m, "phi matrix")
        mats[w] = mat.scale(Fraction(1) / sign)
    return Representation(alg, module, tuple(mats))


def serialize_representation(rep: Representation) -> dict:
    labels = rep.algebra.space.labels
    wb = rep.wedge
    phi = []
    for w, (i, j) in enumerate(wb.pairs):
        if not rep.phi[w].is_zero():
            phi.append({"pair": [labels[i], labels[j]],
                        "matrix": serialize_matrix(rep.phi[w])})
    return {"algebra": serialize_algebra(rep.algebra),
            "module": serialize_superspace(rep.module_space),
            "phi": phi}


# -- cochains --------------------------------------------------------------------


def parse_cochain(obj, rep: Representation, base_dir: Optional[str] = None) -> Cochain:
    obj = _resolve(obj, base_dir)
    parity = _require(obj, "parity", "cochain")
    if parity not in (0, 1):
        raise ParseError("cochain parity must be 0 or 1")
    arity = _require(obj, "arity", "cochain")
    try:
        k = wedge_slots_of_arity(arity)
    except Exception:
        raise ParseError(f"cochain arity must be odd and >= 1, got {arity!r}") from None
    sp = rep.algebra.space
    vs = rep.module_space
    wb = rep.wedge

    def index(label, space, what):
        try:
            return space.index(label)
        except KeyError:
            raise LabelUnknown(f"unknown {what} label {label!r}") from None

    cells: dict = {}

    def put(cell, value):
        prev = cells.get(cell)
        if prev is not None and prev != value:
            raise ParseError(f"cochain cell {cell} receives two incompatible values")
        cells[cell] = value

    entries = obj.get("entries", [])
    for entry in entries:
        args = _require(entry, "args", "cochain entry")
        if len(args) != arity:
            raise ParseError(f"cochain entry needs {arity} labels, got {len(args)}")
        idxs = [index(a, sp, "algebra") for a in args]
        sign = Fraction(1)
        wedge_cells = []
        degenerate = False
        for t in range(k):
            i, j = idxs[2 * t], idxs[2 * t + 1]
            coords = wedge_pair_coords(wb, i, j)
            if not coords:
                degenerate = True
                break
            (w, s), = coords
            wedge_cells.append(w)
            sign *= s
        if degenerate:
            raise ParseError(f"cochain entry {args!r} has a vanishing wedge pair")
        value_map = _require(entry, "value", "cochain entry")
        value = [Fraction(0)] * vs.dim
        for label, q in value_map.items():
            value[index(label, vs, "module")] = parse_rational(q)
        cell = tuple(wedge_cells) + (idxs[-1],)
        put(cell, tuple(sign * x for x in value))

    if obj.get("skew_complete"):
        if arity != 3:
            raise ParseError("skew_complete is defined for arity-3 cochains only")
        completed: dict = {}
        par = sp.parities
        for (w, g), value in cells.items():
            a, b = wb.pairs[w]
            for (x, y, z), s in skew_orbit((a, b, g), par):
                coords = wedge_pair_coords(wb, x, y)
                if not coords:
                    if any(v != 0 for v in value):
                        raise SkewInconsistent(
                            "skew completion forces a nonzero value onto a vanishing pair")
                    continue
                (w2, s2), = coords
                sv = tuple(s * x / s2 for x in value)
                prev = completed.get((w2, z))
                if prev is not None and prev != sv:
                    raise SkewInconsistent(
                        f"skew completion of cochain cell conflicts at {(w2, z)}")
                completed[(w2, z)] = sv
        cells = completed

    try:
        return Cochain.from_cells(rep, parity, k, cells)
    except SpaceMismatch as e:
        raise ParseError(f"cochain: {e}") from None


def serialize_cochain(c: Cochain) -> dict:
    sp = c.rep.algebra.space
    vs = c.rep.module_space
    wb = c.rep.wedge
    entries = []
    for cell in c.cells():
        value = c.value(cell)
        if all(x == 0 for x in value):
            continue
        args = []
        for w in cell[:-1]:
            i, j = wb.pairs[w]
            args.extend([sp.labels[i], sp.labels[j]])
        args.append(sp.labels[cell[-1]])
        entries.append({"args": args,
                        "value": {vs.labels[r]: format_rational(x)
                                  for r, x in enumerate(value) if x != 0}})
    return {"parity": c.parity, "arity": c.arity, "entries": entries}


# -- derivation pairs --------------------------------------------------------------


def parse_pair(obj, module_space: SuperSpace, algebra_space: SuperSpace,
               base_dir: Optional[str] = None) -> DerivationPair:
    obj = _resolve(obj, base_dir)
    degree = _require(obj, "degree", "pair")
    if degree not in (0, 1):
        raise ParseError("pair degree must be 0 or 1")

    def member(key, space):
        entry = _require(obj, key, "pair")
        if entry == "identity":
            if degree != 0:
                raise ParseError("'identity' is an even map; pair degree must be 0")
            return GradedLinearMap.identity(space)
        if entry == "zero":
            return GradedLinearMap.zero(space, space, degree)
        return parse_linear_map({"degree": degree, "matrix": _require(entry, "matrix", key)}
                                if isinstance(entry, dict) and "degree" not in entry else entry,
                                space, space, key)

    d_p = member("d_p", module_space)
    d_q = member("d_q", algebra_space)
    if d_p.degree != degree or d_q.degree != degree:
        raise ParseError("pair members must carry the declared degree")
    return DerivationPair(d_p, d_q, degree)


# -- extensions ----------------------------------------------------------------------


def parse_extension(obj, base_dir: Optional[str] = None) -> ExtensionData:
    obj = _resolve(obj, base_dir)
    if "build" in obj:
        build_obj = obj["build"]
        rep = parse_representation(_require(build_obj, "representation", "extension.build"), base_dir)
        omega = parse_cochain(_require(build_obj, "omega", "extension.build"), rep, base_dir)
        return build_extension(rep, omega, check_cocycle=build_obj.get("check_cocycle", True))

    total = parse_algebra(_require(obj, "total", "extension"), base_dir)
    sub_labels = _require(obj, "sub_labels", "extension")
    try:
        sub_indices = tuple(total.space.index(lbl) for lbl in sub_labels)
    except KeyError as e:
        raise LabelUnknown(f"unknown basis label {e.args[0]!r}") from None
    if len(set(sub_indices)) != len(sub_indices):
        raise ParseError("sub_labels contains duplicates")
    ext = coordinate_extension(total, sub_indices)
    if "quotient" in obj:
        quotient = parse_algebra(obj["quotient"], base_dir)
        if quotient.space.dim != ext.quotient.dim:
            raise ParseError("explicit quotient has the wrong dimension")
        ext = ExtensionData(ext.total, ext.sub_indices, quotient,
                            GradedLinearMap(ext.total.space, quotient.space, EVEN,
                                            ext.proj.matrix),
                            ext.incl,
                            GradedLinearMap(quotient.space, ext.total.space, EVEN,
                                            ext.section.matrix))
    if "section" in obj and obj["section"] != "canonical":
        section = parse_linear_map(obj["section"], ext.quotient.space,
                                   ext.total.space, "section")
        ext = ext.with_section(section)
    return ext


# -- deterministic report emission -----------------------------------------------------


def report_to_json(report: dict) -> str:
    """Canonical JSON for byte-identical reports across runs."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize_vector(space: SuperSpace, v) -> dict:
    return {space.labels[i]: format_rational(x) for i, x in enumerate(v) if x != 0}


def serialize_violation(v, space: SuperSpace) -> dict:
    return {"kind": v.kind,
            "at": [space.labels[i] if i < space.dim else int(i) for i in v.indices],
            "lhs": [format_rational(x) for x in v.lhs],
            "rhs": [format_rational(x) for x in v.rhs]}

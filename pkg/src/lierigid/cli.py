"""Command-line front end.

Exit codes: 0 success, 1 a checked claim failed, 2 bad input,
3 an internal invariant was violated (for instance delta^2 != 0).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import catalog
from .cecoh import CEComplex, FamilyError, RepresentationError, cohomology_dims, family_closure_check
from .forms import FormError, defining_one_form, frobenius_check, kupka_classify
from .geom import (
    FieldLieAlgebra,
    GeometryError,
    PolyVectorField,
    QuadricModel,
    anchor_compatible,
    generic_orbit_dim,
    linear_fields_from_matrices,
    quadric_sampler,
    tangent_algebra,
    traceless_part,
)
from .liecore import (
    LieAlgebra,
    LieAlgebraError,
    Subalgebra,
    adjoint_module,
    quotient_module,
    sl,
    so_from_form,
    subalgebra_closure_check,
    trivial_module,
    validate,
)
from .poly import PolyParseError
from .qlinalg import QMatrix, as_fraction
from .report import Report, check, render

log = logging.getLogger("lierigid")

EXIT_OK, EXIT_CLAIM, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input documents
# ---------------------------------------------------------------------------

@dataclass
class Document:
    kind: str
    algebra: LieAlgebra | None = None
    fields: list[PolyVectorField] | None = None
    n: int | None = None
    quadric: QuadricModel | None = None
    parameters: tuple[str, ...] = ()
    subalgebra: Any = None


def _num(x, where: str) -> Fraction:
    try:
        return as_fraction(x if not isinstance(x, str) else Fraction(x))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: not an exact number: {x!r}") from exc


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{where}: expected an integer, got {x!r}")
    return x


def parse_document(doc: Any) -> Document:
    if not isinstance(doc, dict):
        raise InputError("top level must be a JSON object")
    kind = doc.get("kind")
    if kind == "structure":
        return _parse_structure(doc)
    if kind == "fields":
        return _parse_fields(doc)
    raise InputError(f"unknown document kind {kind!r}; expected 'structure' or 'fields'")


def _parse_structure(doc: dict) -> Document:
    dim = _int(doc.get("dim"), "dim")
    if dim < 1:
        raise InputError("dim must be positive")
    names = doc.get("names")
    if names is not None and (not isinstance(names, list) or len(names) != dim):
        raise InputError(f"names must be a list of {dim} labels")
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for n_entry, entry in enumerate(doc.get("brackets", [])):
        where = f"brackets[{n_entry}]"
        if not isinstance(entry, list) or len(entry) != 3 or not isinstance(entry[2], list):
            raise InputError(f"{where}: expected [i, j, [[k, coeff], ...]]")
        i, j = _int(entry[0], where), _int(entry[1], where)
        if not (0 <= i < dim and 0 <= j < dim):
            raise InputError(f"{where}: index out of range for dim {dim}")
        if (i, j) in table:
            raise InputError(f"{where}: duplicate bracket ({i}, {j})")
        vals: dict[int, Fraction] = {}
        for term in entry[2]:
            if not isinstance(term, list) or len(term) != 2:
                raise InputError(f"{where}: expected [k, coeff] pairs")
            k = _int(term[0], where)
            if not 0 <= k < dim:
                raise InputError(f"{where}: target index {k} out of range")
            vals[k] = vals.get(k, Fraction(0)) + _num(term[1], where)
        table[(i, j)] = vals
    L = LieAlgebra(dim, table, names=names)
    return Document("structure", algebra=L, subalgebra=doc.get("subalgebra"))


def _parse_fields(doc: dict) -> Document:
    amb = doc.get("ambient")
    if not isinstance(amb, dict):
        raise InputError("fields document needs an 'ambient' object")
    quadric = None
    if amb.get("type") == "projective":
        n = _int(amb.get("n"), "ambient.n")
        if n < 1:
            raise InputError("ambient.n must be positive")
    elif amb.get("type") == "quadric":
        B = amb.get("B")
        if not isinstance(B, list) or not B or any(not isinstance(r, list) or len(r) != len(B) for r in B):
            raise InputError("ambient.B must be a square matrix")
        try:
            quadric = QuadricModel(QMatrix([[_num(x, "ambient.B") for x in r] for r in B]))
        except GeometryError as exc:
            raise InputError(f"ambient.B: {exc}") from exc
        n = quadric.n
    else:
        raise InputError("ambient.type must be 'projective' or 'quadric'")
    params = tuple(doc.get("parameters") or ())
    if params not in ((), ("t",)):
        raise InputError("the only supported parameter list is [\"t\"]")
    raw = doc.get("fields")
    if not isinstance(raw, list) or not raw:
        raise InputError("'fields' must be a non-empty list")
    fields = []
    for idx, f in enumerate(raw):
        if not isinstance(f, dict) or not isinstance(f.get("components"), list):
            raise InputError(f"fields[{idx}]: expected {{name, components}}")
        comps = f["components"]
        if len(comps) != n + 1:
            raise InputError(f"fields[{idx}]: expected {n + 1} components on P^{n}, got {len(comps)}")
        name = str(f.get("name", f"X{idx + 1}"))
        try:
            fields.append(PolyVectorField.parse([str(c) for c in comps], has_param=bool(params), name=name))
        except PolyParseError as exc:
            raise InputError(f"fields[{idx}] ({name}): {exc}") from exc
    return Document("fields", fields=fields, n=n, quadric=quadric, parameters=params,
                    subalgebra=doc.get("subalgebra"))


def load_document(path: str) -> Document:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    return parse_document(doc)


def _subalgebra_arg(sel) -> Any:
    """--subalgebra accepts '0,2' (basis indices) or a JSON list of coefficient rows."""
    if sel is None:
        return None
    sel = sel.strip()
    if sel.startswith("["):
        try:
            return json.loads(sel)
        except json.JSONDecodeError as exc:
            raise InputError(f"--subalgebra: invalid JSON: {exc}") from exc
    try:
        return [int(x) for x in sel.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError("--subalgebra: expected indices like 0,1 or rows like [[1,0],[0,1]]") from exc


def _rows_from_selection(sel, dim: int, what: str) -> list[tuple[Fraction, ...]]:
    if not isinstance(sel, list) or not sel:
        raise InputError(f"{what}: expected a non-empty list of indices or rows")
    if all(isinstance(x, int) and not isinstance(x, bool) for x in sel):
        if any(not 0 <= x < dim for x in sel):
            raise InputError(f"{what}: index out of range for dimension {dim}")
        return [tuple(Fraction(int(k == i)) for k in range(dim)) for i in sel]
    rows = []
    for r in sel:
        if not isinstance(r, list) or len(r) != dim:
            raise InputError(f"{what}: each row needs {dim} coefficients")
        rows.append(tuple(_num(x, what) for x in r))
    return rows


# ---------------------------------------------------------------------------
# turning documents into (L, g)
# ---------------------------------------------------------------------------

def _specialized(doc: Document, t) -> list[PolyVectorField]:
    if not doc.parameters:
        return doc.fields
    if t is None:
        raise InputError("fields depend on t; pass --t VALUE")
    return [X.specialize(_num(t, "--t")) for X in doc.fields]


def _selected_fields(doc: Document, fields, sel) -> list[PolyVectorField]:
    if sel is None:
        return fields
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in sel):
        rows = _rows_from_selection(sel, len(fields), "subalgebra")
        out = []
        for r in rows:
            acc = None
            for c, X in zip(r, fields):
                if c:
                    acc = X.scale(c) if acc is None else acc + X.scale(c)
            if acc is None:
                raise InputError("subalgebra: zero row")
            out.append(acc)
        return out
    if any(not 0 <= i < len(fields) for i in sel):
        raise InputError("subalgebra: field index out of range")
    return [fields[i] for i in sel]


def _ambient_field_algebra(doc: Document) -> FieldLieAlgebra:
    if doc.quadric is not None:
        L = so_from_form(doc.quadric.B)
    else:
        L = sl(doc.n + 1)
    return linear_fields_from_matrices(list(L.matrices), L.names)


def _field_subalgebra(FL: FieldLieAlgebra, fields) -> Subalgebra:
    rows = []
    for X in fields:
        try:
            A = traceless_part(X.linear_matrix())
        except GeometryError as exc:
            raise InputError(f"field {X.name or X}: {exc}; Lie-side commands need linear fields") from exc
        c = FL._coords.coords(A.flat()) if FL._coords.contains(A.flat()) else None
        if c is None:
            raise InputError(f"field {X.name or X} is not a global vector field of the ambient")
        rows.append(c)
    try:
        return Subalgebra(FL.algebra, rows, names=[X.name for X in fields])
    except LieAlgebraError as exc:
        raise InputError(f"fields: {exc}") from exc


def _lie_pair(doc: Document, sel, t) -> tuple[Subalgebra, FieldLieAlgebra | None]:
    sel = sel if sel is not None else doc.subalgebra
    if doc.kind == "structure":
        if sel is None:
            raise InputError("structure documents need a subalgebra (document key or --subalgebra)")
        if not validate(doc.algebra).valid:
            raise InputError("structure constants do not define a Lie algebra; run validate")
        try:
            g = Subalgebra(doc.algebra, _rows_from_selection(sel, doc.algebra.dim, "subalgebra"))
        except LieAlgebraError as exc:
            raise InputError(f"subalgebra: {exc}") from exc
        return g, None
    fields = _selected_fields(doc, _specialized(doc, t), sel)
    FL = _ambient_field_algebra(doc)
    return _field_subalgebra(FL, fields), FL


def _require_closed(g: Subalgebra):
    res = subalgebra_closure_check(g)
    if not res.closed:
        i, j = res.pair
        names = g.names or [f"b{k}" for k in range(g.dim)]
        raise InputError(f"subalgebra is not closed: [{names[i]}, {names[j]}] leaves the span "
                         f"(bracket {[str(x) for x in res.bracket]})")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _claims_exit(rep: Report) -> int:
    return EXIT_CLAIM if rep.failed() else EXIT_OK


def cmd_validate(args) -> tuple[Report, int]:
    doc = load_document(args.file)
    rep = Report(f"validate {args.file}")
    if doc.kind == "structure":
        L = doc.algebra
        vr = validate(L)
        rep.values["dim"] = L.dim
        rep.values["antisymmetry_violations"] = [
            {"pair": [L.names[i], L.names[j]], "sum": list(s)} for i, j, s in vr.antisymmetry_violations]
        rep.values["jacobi_violations"] = [
            {"triple": [L.names[k] for k in trip], "residual": _combo(res, L.names)}
            for trip, res in vr.jacobi_violations]
        rep.add(check("antisymmetric", True, not vr.antisymmetry_violations, "trivial"))
        rep.add(check("jacobi", True, not vr.jacobi_violations, "trivial"))
        if doc.subalgebra is not None and vr.valid:
            g = Subalgebra(L, _rows_from_selection(doc.subalgebra, L.dim, "subalgebra"))
            rep.add(check("subalgebra_closed", True, subalgebra_closure_check(g).closed, "trivial"))
        return rep, _claims_exit(rep)
    fields = doc.fields
    degs = []
    for X in fields:
        try:
            degs.append(X.degree())
        except GeometryError:
            degs.append(None)
    rep.values["n"] = doc.n
    rep.values["degrees"] = {X.name: d for X, d in zip(fields, degs)}
    rep.add(check("homogeneous", True, None not in degs, "trivial"))
    try:
        fc = family_closure_check(fields)
        closed, witness = fc.closed, fc
    except FamilyError as exc:
        raise InputError(str(exc)) from exc
    if not closed:
        a, b = witness.pair
        rep.values["closure_witness"] = {"pair": [fields[a].name, fields[b].name], "bracket": str(witness.bracket)}
    rep.add(check("bracket_closed", True, closed, "trivial"))
    linear = all(d in (1, -1) for d in degs) and not doc.parameters
    if linear:
        FL = _ambient_field_algebra(doc)
        rep.add(check("anchor_compatible", True, anchor_compatible(FL), "trivial"))
        if doc.quadric is not None:
            inside = all(FL._coords.contains(traceless_part(X.linear_matrix()).flat()) for X in fields)
            rep.add(check("preserves_quadric", True, inside, "trivial"))
    return rep, _claims_exit(rep)


def _combo(vec, names) -> str:
    return catalog.combination(vec, names)


def _check_complex(L: LieAlgebra, M, top: int):
    cx = CEComplex(L, M, max_degree=max(2, top))
    bad = cx.defects()
    if bad:
        raise catalog.InternalInvariantError(f"delta^(k+1) delta^k != 0 for k in {bad}")


def cmd_rigidity(args) -> tuple[Report, int]:
    doc = load_document(args.file)
    g, _ = _lie_pair(doc, _subalgebra_arg(args.subalgebra), args.t)
    _require_closed(g)
    M = quotient_module(g)
    _check_complex(g.algebra, M, 2)
    z, b, h = cohomology_dims(g.algebra, M, 1)
    rep = Report(f"rigidity {args.file}", params={"t": _num(args.t, "--t")} if args.t is not None else {})
    rep.values.update({"dim_L": g.parent.dim, "dim_g": g.dim, "dim_module": M.dim,
                       "dim_Z1": z, "dim_B1": b, "dim_H1": h, "rigid": z == b,
                       "dim_invariants": len(M.invariants())})
    return rep, EXIT_OK


def cmd_cohomology(args) -> tuple[Report, int]:
    doc = load_document(args.file)
    if args.degree < 0:
        raise InputError("--degree must be non-negative")
    sel = _subalgebra_arg(args.subalgebra)
    if doc.kind == "structure" and sel is None and doc.subalgebra is None:
        L = doc.algebra
        if not validate(L).valid:
            raise InputError("structure constants do not define a Lie algebra; run validate")
        module = args.module or "adjoint"
        if module == "quotient":
            raise InputError("--module quotient needs a subalgebra")
        M = adjoint_module(L) if module == "adjoint" else trivial_module(L, 1)
        acting = L
    else:
        g, _ = _lie_pair(doc, sel, args.t)
        _require_closed(g)
        module = args.module or "quotient"
        acting = g.algebra
        M = {"quotient": lambda: quotient_module(g), "adjoint": lambda: adjoint_module(acting),
             "trivial": lambda: trivial_module(acting, 1)}[module]()
    _check_complex(acting, M, args.degree + 1)
    z, b, h = cohomology_dims(acting, M, args.degree)
    rep = Report(f"cohomology {args.file}", params={"degree": args.degree, "module": module})
    rep.values.update({"dim_algebra": acting.dim, "dim_module": M.dim,
                       f"dim_Z{args.degree}": z, f"dim_B{args.degree}": b, f"dim_H{args.degree}": h})
    return rep, EXIT_OK


def _fields_doc(args) -> Document:
    doc = load_document(args.file)
    if doc.kind != "fields":
        raise InputError(f"{args.command} needs a 'fields' document")
    return doc


def cmd_orbit_dim(args) -> tuple[Report, int]:
    doc = _fields_doc(args)
    fields = _selected_fields(doc, _specialized(doc, args.t), doc.subalgebra)
    sampler = quadric_sampler(doc.quadric) if doc.quadric is not None else None
    res = generic_orbit_dim(fields, args.samples, args.seed, sampler)
    rep = Report(f"orbit-dim {args.file}", seed=args.seed, samples=args.samples)
    rep.values["orbit_dim"] = res.dim
    rep.values["label"] = f"probabilistic: maximum rank over {args.samples} seeded points"
    rep.values["sample_log"] = [{"point": str(p), "rank": r} for p, r in res.samples]
    return rep, EXIT_OK


def cmd_maximality(args) -> tuple[Report, int]:
    doc = _fields_doc(args)
    g, FL = _lie_pair(doc, None, args.t)
    _require_closed(g)
    sampler = quadric_sampler(doc.quadric) if doc.quadric is not None else None
    res = tangent_algebra(FL, g.basis.rows, args.samples, args.seed, sampler)
    rep = Report(f"maximality {args.file}", seed=args.seed, samples=args.samples)
    rep.values.update({
        "dim_g": res.dim_g,
        "dim_tangent_algebra": res.subalgebra.dim,
        "maximal": res.maximal,
        "stabilized": res.stabilized,
        "tangent_algebra_closed": res.closed,
        "points_used": res.points_used,
        "dims_after_each_point": res.dims_after_each_point,
        "label": res.label,
    })
    if not res.maximal:
        rep.values["extra_fields"] = [
            str(FL.field_of(r)) for r in res.subalgebra.basis.rows if not g.contains(r)]
    return rep, EXIT_OK


def cmd_family_check(args) -> tuple[Report, int]:
    doc = _fields_doc(args)
    try:
        fc = family_closure_check(doc.fields, convention=args.convention)
    except FamilyError as exc:
        raise InputError(str(exc)) from exc
    names = [X.name for X in doc.fields]
    rep = Report(f"family-check {args.file}", params={"convention": args.convention})
    rep.values["parameters"] = list(doc.parameters)
    if fc.closed:
        rep.values["table"] = {f"[{names[a]},{names[b]}]": _combo(v, names) for (a, b), v in sorted(fc.table.items())}
    else:
        a, b = fc.pair
        rep.values["witness"] = {"pair": [names[a], names[b]], "bracket": str(fc.bracket)}
    rep.add(check("closed", True, fc.closed, "trivial"))
    return rep, _claims_exit(rep)


def _parse_points(sel: str, n: int) -> list[tuple[Fraction, ...]]:
    pts = []
    for chunk in sel.split(","):
        coords = chunk.strip().strip("[]").split(":")
        if len(coords) != n + 1:
            raise InputError(f"--kupka: point {chunk!r} needs {n + 1} coordinates separated by ':'")
        p = tuple(_num(c, "--kupka") for c in coords)
        if not any(p):
            raise InputError("--kupka: the zero vector is not a point")
        pts.append(p)
    return pts


def cmd_form(args) -> tuple[Report, int]:
    doc = _fields_doc(args)
    if doc.quadric is not None:
        raise InputError("form needs a projective ambient")
    fields = _selected_fields(doc, _specialized(doc, args.t), doc.subalgebra)
    try:
        df = defining_one_form(fields)
    except FormError as exc:
        raise InputError(str(exc)) from exc
    rep = Report(f"form {args.file}")
    rep.values["form"] = str(df.form)
    rep.values["content"] = str(df.content)
    try:
        rep.values["degree"] = df.degree
    except FormError:
        rep.values["degree"] = None
    if args.frobenius:
        fr = frobenius_check(df.form)
        rep.values["frobenius_residual"] = str(fr.residual)
        rep.values["plucker"] = fr.plucker
        rep.add(check("frobenius", True, fr.integrable, "trivial"))
    if args.kupka:
        pts = _parse_points(args.kupka, doc.n)
        labels = kupka_classify(df.form, pts)
        rep.values["points"] = [{"point": "[" + ":".join(str(x) for x in p) + "]", "type": lab.value}
                                for p, lab in zip(pts, labels)]
    return rep, _claims_exit(rep)


def _catalog_job(name: str, seed: int, samples: int, timing: bool, params: dict) -> dict:
    rep = catalog.run(name, seed=seed, samples=samples, timing=timing, **params)
    return rep.as_dict()


def cmd_catalog(args) -> tuple[Any, int]:
    if args.action == "list":
        rep = Report("catalog list")
        rep.values["entries"] = [{"name": nm, "description": catalog.DESCRIPTIONS[nm]} for nm in catalog.NAMES]
        return rep, EXIT_OK
    if args.all:
        if args.name or args.n is not None or args.t is not None:
            raise InputError("--all runs every entry with default parameters; drop the name and params")
        jobs = [(nm, args.seed, args.samples, args.timing, {}) for nm in catalog.NAMES]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                futs = [ex.submit(_catalog_job, *j) for j in jobs]
                docs = [f.result() for f in futs]
        else:
            docs = [_catalog_job(*j) for j in jobs]
        ok = all(d["summary"]["literature_ok"] for d in docs)
        return docs, EXIT_OK if ok else EXIT_CLAIM
    if not args.name:
        raise InputError("catalog run needs an entry name or --all")
    params = {"n": args.n, "t": args.t}
    try:
        entry = catalog.build(args.name, **params)
    except (catalog.CatalogError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    rep = catalog.run_entry(entry, args.seed, args.samples, args.timing)
    return rep, EXIT_OK if not rep.failed("literature") else EXIT_CLAIM


COMMANDS = {
    "validate": cmd_validate,
    "rigidity": cmd_rigidity,
    "cohomology": cmd_cohomology,
    "orbit-dim": cmd_orbit_dim,
    "maximality": cmd_maximality,
    "family-check": cmd_family_check,
    "form": cmd_form,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of the text report")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing (breaks byte determinism)")
    common.add_argument("--verbose", "-v", action="store_true")
    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--samples", type=int, default=25)
    sampling.add_argument("--seed", type=int, default=0)
    param = argparse.ArgumentParser(add_help=False)
    param.add_argument("--t", default=None, help="value of the parameter t for parameterised fields")

    p = argparse.ArgumentParser(prog="lierigid", description="Rigidity verdicts for Lie subalgebras of vector fields.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="structure-constant and schema audit")
    s.add_argument("file")
    s = sub.add_parser("rigidity", parents=[common, param], help="Z^1, B^1, H^1 of g with values in L/g")
    s.add_argument("file")
    s.add_argument("--subalgebra", help="indices like 0,1 or JSON rows like [[1,0],[0,1]]")
    s = sub.add_parser("cohomology", parents=[common, param], help="dimensions of Z^k, B^k, H^k")
    s.add_argument("file")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--module", choices=("adjoint", "trivial", "quotient"))
    s.add_argument("--subalgebra")
    s = sub.add_parser("orbit-dim", parents=[common, sampling, param], help="generic orbit dimension")
    s.add_argument("file")
    s = sub.add_parser("maximality", parents=[common, sampling, param], help="sampled tangent algebra")
    s.add_argument("file")
    s = sub.add_parser("family-check", parents=[common], help="bracket closure over Q(t)")
    s.add_argument("file")
    s.add_argument("--convention", choices=("action", "vector_field"), default="action")
    s = sub.add_parser("form", parents=[common, param], help="defining 1-form of a codimension-one foliation")
    s.add_argument("file")
    s.add_argument("--frobenius", action="store_true")
    s.add_argument("--kupka", help="points like 0:1:0,1:0:0")
    s = sub.add_parser("catalog", parents=[common, sampling], help="built-in worked examples")
    s.add_argument("action", choices=("list", "run"))
    s.add_argument("name", nargs="?")
    s.add_argument("--n", type=int)
    s.add_argument("--t")
    s.add_argument("--all", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if getattr(args, "samples", 1) < 1:
        print("error: --samples must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    start = time.perf_counter()
    try:
        rep, code = COMMANDS[args.command](args)
    except catalog.InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, PolyParseError, GeometryError, FormError, LieAlgebraError,
            RepresentationError, catalog.CatalogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if isinstance(rep, Report):
        if args.timing and rep.timing is None:
            rep.timing = {"seconds": time.perf_counter() - start}
        out = rep.as_dict()
    else:
        out = rep
    sys.stdout.write(render(out, args.json))
    return code


if __name__ == "__main__":
    sys.exit(main())

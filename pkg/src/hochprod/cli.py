"""Command-line driver.

Every command prints one report (JSON with sorted keys, or aligned text)
and exits with 0 on success, 1 when the input fails validation, 2 when a
search budget runs out and 3 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from urllib.parse import parse_qsl

from . import catalog as cat
from . import io as hio
from .algebra_core import (Algebra, AlgebraMorphism, BudgetExceeded, CharacterSearchUndecidable,
                           automorphisms_brute, characters, close_group, decompose_tower,
                           is_algebra_morphism, validate_algebra)
from .coalgebra_dual import (Coalgebra, convolution_algebra, dualize_algebra, supersolvable_chain,
                             validate_coalgebra)
from .coflag import (CoflagDatum, InvalidDatum, aut_group, build_coflag_algebra, classify_coflag,
                     gh2_coflag, hoc)
from .exact_linear import Field, FiniteFieldRequired
from .hochschild import (HochschildData, build_product, check_split, extract_system, gh2_enumerate,
                         validate_system)
from .poisson_ext import (DIRECT_PRODUCT, PoissonAlgebra, PoissonCoflagDatum, build_poisson_extension,
                          classify_poisson_ext, poisson_aut_group, poisson_autos_brute,
                          validate_poisson, validate_poisson_coflag)

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3
DEFAULT_BUDGET = int(os.environ.get("HOCHPROD_BUDGET", 10 ** 8))


class UsageError(Exception):
    pass


class ValidationFailed(Exception):
    def __init__(self, message, results=None):
        super().__init__(message)
        self.results = results or {}


# -- input resolution ------------------------------------------------------------------

def _coerce(v: str):
    try:
        return int(v)
    except ValueError:
        return v


def load_input(spec: str | None, field: Field | None, warnings: list, validate: bool = True):
    """A file path or ``catalog:name?key=value&...``."""
    if not spec:
        raise UsageError("missing input: pass --input (and --base/--datum where needed)")
    if spec.startswith("catalog:"):
        name, _, query = spec[len("catalog:"):].partition("?")
        params = {k: _coerce(v) for k, v in parse_qsl(query)}
        try:
            return cat.catalog(name, field or Field.prime(5), **params)
        except (ValueError, TypeError) as exc:
            raise UsageError(str(exc)) from None
    if not os.path.exists(spec):
        raise UsageError(f"no such file: {spec}")
    return hio.parse_entity_file(spec, warnings, validate=validate)


def _need(entity, kind, what="--input"):
    if not isinstance(entity, kind):
        raise UsageError(f"{what} must be a {kind.__name__}, got {type(entity).__name__}")
    return entity


def resolve_autos(A: Algebra, mode: str, budget: int, warnings):
    if mode == "brute":
        return automorphisms_brute(A, budget)
    if mode == "catalog":
        if not A.aut_generators:
            raise UsageError("--aut-mode catalog needs registered automorphism generators")
        return close_group([AlgebraMorphism(g, A, A) for g in A.aut_generators])
    if mode.startswith("file:"):
        path = mode[5:]
        if not os.path.exists(path):
            raise UsageError(f"no such file: {path}")
        with open(path) as fh:
            raw = json.load(fh)
        F = A.field
        maps = []
        for cols in raw:
            cols = tuple(tuple(hio.scalar_from_json(F, x, warnings) for x in c) for c in cols)
            if not is_algebra_morphism(cols, A, A) or not AlgebraMorphism(cols, A, A).is_bijective():
                raise ValidationFailed("automorphism file contains a non-automorphism")
            maps.append(AlgebraMorphism(cols, A, A))
        return close_group(maps)
    raise UsageError(f"unknown --aut-mode {mode!r}")


def _violations(vs):
    return [{"axiom": v.axiom, "witness": list(v.witness), "detail": v.detail} for v in vs]


def _cols(F, cols):
    return [[F.scalar_to_json(x) for x in c] for c in cols]


def _matrix_from_json(F, rows, warnings):
    return [[hio.scalar_from_json(F, x, warnings) for x in row] for row in rows]


def _load_map(path, F, warnings):
    if not path or not os.path.exists(path):
        raise UsageError("--map must name a JSON file with \"projection\" and \"section\" matrices")
    with open(path) as fh:
        obj = json.load(fh)
    try:
        return (_matrix_from_json(F, obj["projection"], warnings),
                _matrix_from_json(F, obj["section"], warnings))
    except KeyError as exc:
        raise UsageError(f"map file lacks {exc}") from None


# -- commands ------------------------------------------------------------------------

def cmd_validate(args, field, warnings):
    entity = load_input(args.input, field, warnings, validate=False)
    if isinstance(entity, PoissonAlgebra):
        vs, kind = validate_poisson(entity), "poisson"
    elif isinstance(entity, Algebra):
        vs, kind = validate_algebra(entity), "algebra"
    elif isinstance(entity, Coalgebra):
        vs, kind = validate_coalgebra(entity), "coalgebra"
    elif isinstance(entity, HochschildData):
        vs, kind = validate_system(entity), "hochschild-system"
    else:
        raise UsageError("validate takes an algebra, Poisson algebra, coalgebra or system")
    res = {"entity": kind, "valid": not vs, "violations": _violations(vs)}
    if vs:
        raise ValidationFailed(f"{kind} is invalid", res)
    return res


def cmd_characters(args, field, warnings):
    A = _need(load_input(args.input, field, warnings), Algebra)
    chars = characters(A)
    return {"algebra": A.name, "count": len(chars), "characters": _cols(A.field, chars)}


def cmd_aut(args, field, warnings):
    A = _need(load_input(args.input, field, warnings), Algebra)
    autos = resolve_autos(A, args.aut_mode, args.budget, warnings)
    out = {"algebra": A.name, "order": len(autos)}
    if len(autos) <= args.list_limit:
        out["automorphisms"] = [_cols(A.field, a.columns) for a in autos]
    else:
        out["omitted"] = f"{len(autos)} automorphisms not listed (raise --list-limit)"
    return out


def _datum_json(d, F):
    if d == DIRECT_PRODUCT:
        return DIRECT_PRODUCT
    return hio.datum_to_json(d, F)


def cmd_gh2(args, field, warnings):
    A = _need(load_input(args.input, field, warnings), Algebra)
    F = A.field
    rep = gh2_coflag(A)
    blocks = []
    for b in rep.blocks:
        entry = {"lambda": hio._vec(F, b.lam), "Lambda": hio._vec(F, b.Lam),
                 "dim_cocycles": b.dim_z, "dim_coboundaries": b.dim_b, "dim_cohomology": b.dim_h}
        if F.is_finite:
            entry["classes"] = b.class_count(F.p)
        blocks.append(entry)
    return {"algebra": A.name, "first_kind_blocks": blocks,
            "first_kind_classes": rep.first_kind_classes,
            "second_kind_classes": (F.p - 1) if F.is_finite else "k*",
            "lambda0": hio._vec(F, rep.lambda0), "total_classes": rep.total_classes,
            "notes": ["first-kind classes: one block per ordered pair of characters",
                      "second-kind classes: (lambda0, u) for u in k*"]}


def cmd_hoc(args, field, warnings):
    A = _need(load_input(args.input, field, warnings), Algebra)
    F = A.field
    autos = resolve_autos(A, args.aut_mode, args.budget, warnings) if characters(A) else None
    rep = hoc(A, autos)
    reps = rep.representatives()
    classes = []
    for o, B in zip(rep.orbits, reps):
        entry = {"datum": hio.datum_to_json(o.head, F), "orbit_size": o.size,
                 "witnesses": [w.as_json(F) for w in o.witnesses[:args.list_limit]],
                 "algebra": hio.algebra_to_json(B)}
        if len(o.witnesses) > args.list_limit:
            entry["omitted"] = f"{len(o.witnesses) - args.list_limit} witnesses not listed"
        classes.append(entry)
    classes.append({"datum": DIRECT_PRODUCT, "algebra": hio.algebra_to_json(reps[-1])})
    return {"algebra": A.name, "class_count": rep.class_count, "classes": classes,
            "automorphisms_used": rep.extras.get("automorphisms"),
            "notes": ["first-kind classes are orbits of cohomology representatives under k* x Aut(A)",
                      "the direct product A x k is never isomorphic to a first-kind extension"]}


def cmd_gh2_brute(args, field, warnings):
    A = _need(load_input(args.input, field, warnings), Algebra)
    rep = gh2_enumerate(A, args.vdim, budget=min(args.budget, 2 * 10 ** 6))
    strata = {_key_text(k): {"classes": v["classes"],
                             "bimodules": {_key_text(b): c for b, c in v["bimodules"].items()}}
              for k, v in rep.strata().items()}
    return {"algebra": A.name, "vdim": args.vdim, "valid_systems": rep.valid_count,
            "classes": rep.total, "strata": strata}


def _key_text(key) -> str:
    return json.dumps(key, default=str)


def _load_datum(args, warnings):
    if not args.datum:
        raise UsageError("--datum is required")
    return load_input(args.datum, None, warnings)


def cmd_product(args, field, warnings):
    if args.datum:
        A = _need(load_input(args.input, field, warnings), Algebra)
        d = _need(_load_datum(args, warnings), CoflagDatum, "--datum")
        E = build_coflag_algebra(A, d).total
    else:
        s = _need(load_input(args.input, field, warnings), HochschildData)
        E = build_product(s).total
    return {"algebra": hio.algebra_to_json(E), "valid": not validate_algebra(E)}


def cmd_extract(args, field, warnings):
    E = _need(load_input(args.input, field, warnings), Algebra)
    A = _need(load_input(args.base, field, warnings), Algebra, "--base")
    pi, s = _load_map(args.map, E.field, warnings)
    system, phi, kb = extract_system(E, A, pi, s)
    return {"system": hio.system_to_json(system), "phi": _cols(E.field, phi),
            "kernel_basis": _cols(E.field, kb)}


def cmd_split_check(args, field, warnings):
    E = _need(load_input(args.input, field, warnings), Algebra)
    A = _need(load_input(args.base, field, warnings), Algebra, "--base")
    pi, s = _load_map(args.map, E.field, warnings)
    system = check_split(E, A, pi, s)
    out = {"split": system is not None}
    if system is not None:
        out["system"] = hio.system_to_json(system)
    return out


def cmd_tower(args, field, warnings):
    A = _need(load_input(args.input, field, warnings), Algebra)
    T = decompose_tower(A, budget=args.budget)
    steps = [{"quotient_dim": q.algebra.dim, "ideal": _cols(A.field, q.ideal),
              "kernel_dim": s.vdim} for q, s, _ in T.steps]
    return {"algebra": A.name, "steps": steps, "base": hio.algebra_to_json(T.base)}


def cmd_classify(args, field, warnings):
    if args.dim is None:
        raise UsageError("classify needs --dim")
    F = field or Field.prime(5)
    found = classify_coflag(args.dim, F, budget=args.budget)
    return {"dim": args.dim, "field": F.to_json(), "class_count": len(found),
            "classes": [{"algebra": hio.algebra_to_json(c.algebra), "provenance": c.provenance}
                        for c in found]}


def cmd_dualize(args, field, warnings):
    A = _need(load_input(args.input, field, warnings), Algebra)
    return {"coalgebra": hio.coalgebra_to_json(dualize_algebra(A))}


def cmd_convolve(args, field, warnings):
    C = _need(load_input(args.input, field, warnings), Coalgebra)
    return {"algebra": hio.algebra_to_json(convolution_algebra(C))}


def cmd_supersolvable(args, field, warnings):
    C = _need(load_input(args.input, field, warnings), Coalgebra)
    res = supersolvable_chain(C)
    return {"supersolvable": res.supersolvable, "convolution_is_coflag": res.convolution_is_coflag,
            "chain": [_cols(C.field, sub) for sub in res.chain] if res.chain else None}


def cmd_poisson_validate(args, field, warnings):
    P = _need(load_input(args.input, field, warnings, validate=False), PoissonAlgebra)
    vs = validate_poisson(P)
    res = {"valid": not vs, "violations": _violations(vs), "perfect": P.is_perfect()}
    if vs:
        raise ValidationFailed("Poisson algebra is invalid", res)
    return res


def cmd_poisson_extend(args, field, warnings):
    P = _need(load_input(args.input, field, warnings), PoissonAlgebra)
    d = _need(_load_datum(args, warnings), PoissonCoflagDatum, "--datum")
    vs = validate_poisson_coflag(P, d)
    if vs:
        raise ValidationFailed("invalid Poisson co-flag datum", {"violations": _violations(vs)})
    return {"poisson": hio.poisson_to_json(build_poisson_extension(P, d).total)}


def _poisson_autos(P, args, warnings):
    if args.aut_mode == "brute":
        return poisson_autos_brute(P, args.budget)
    autos = resolve_autos(P.algebra, args.aut_mode, args.budget, warnings)
    from .poisson_ext import preserves_bracket
    return [a for a in autos if preserves_bracket(P, a)]


def cmd_poisson_classify(args, field, warnings):
    P = _need(load_input(args.input, field, warnings), PoissonAlgebra)
    F = P.field
    autos = _poisson_autos(P, args, warnings) if characters(P.algebra) and not P.is_perfect() else None
    res = classify_poisson_ext(P, autos, budget=args.budget)
    return {"poisson": P.name, "class_count": res.class_count, "shortcut": res.shortcut,
            "data_enumerated": res.data_count, "orbit_sizes": res.orbit_sizes,
            "classes": [_datum_json(d, F) for d in res.classes]}


def cmd_poisson_aut(args, field, warnings):
    P = _need(load_input(args.input, field, warnings), PoissonAlgebra)
    d = _need(_load_datum(args, warnings), PoissonCoflagDatum, "--datum")
    G = poisson_aut_group(P, d, _poisson_autos(P, args, warnings))
    return {"order": G.order, "checks": G.group.checks, "bracket_preserved": G.bracket_preserved}


def cmd_catalog(args, field, warnings):
    F = field or Field.prime(5)
    if not args.name:
        return {"algebras": list(cat.ALGEBRA_NAMES), "poisson": list(cat.POISSON_NAMES),
                "coalgebras": list(cat.COALGEBRA_NAMES)}
    name, _, query = args.name.partition("?")
    params = {k: _coerce(v) for k, v in parse_qsl(query)}
    try:
        ent = cat.catalog(name, F, **params)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None
    return {"entity": hio.entity_to_json(ent)}


COMMANDS = {
    "validate": cmd_validate, "characters": cmd_characters, "aut": cmd_aut, "gh2": cmd_gh2,
    "hoc": cmd_hoc, "gh2-brute": cmd_gh2_brute, "product": cmd_product, "extract": cmd_extract,
    "split-check": cmd_split_check, "tower": cmd_tower, "classify": cmd_classify,
    "dualize": cmd_dualize, "convolve": cmd_convolve, "supersolvable": cmd_supersolvable,
    "poisson-validate": cmd_poisson_validate, "poisson-extend": cmd_poisson_extend,
    "poisson-classify": cmd_poisson_classify, "poisson-aut": cmd_poisson_aut,
    "catalog": cmd_catalog,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hochprod", description="Extensions of algebras by one-dimensional kernels.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("name", nargs="?", help="catalog entry (catalog command only)")
    parser.add_argument("--input", help="JSON file or catalog:name?key=value")
    parser.add_argument("--datum", help="datum JSON file (product, poisson-extend, poisson-aut)")
    parser.add_argument("--base", help="base algebra (extract, split-check)")
    parser.add_argument("--map", help="JSON with projection and section matrices")
    parser.add_argument("--field", help="Q, Fp:<p> or F<p>")
    parser.add_argument("--dim", type=int)
    parser.add_argument("--vdim", type=int, default=1)
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    parser.add_argument("--aut-mode", default="brute", help="brute, catalog or file:PATH")
    parser.add_argument("--out", choices=("json", "text"), default="json")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--list-limit", type=int, default=50)
    return parser


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return pad + "{}"
        width = max(len(str(k)) for k in obj)
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{str(k):<{width}} :")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{str(k):<{width}} : {json.dumps(v, sort_keys=True)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj) or all(
                isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v) for v in obj):
            return "\n".join(pad + json.dumps(v) for v in obj)
        return "\n".join(f"{pad}- item {i}\n" + render_text(v, indent + 1) for i, v in enumerate(obj))
    return pad + json.dumps(obj)


def emit(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    return render_text(report) + "\n"


def run(argv=None) -> tuple[dict, int]:
    warnings: list = []
    report = {"command": None, "status": "ok", "results": None, "warnings": warnings}
    code = EXIT_OK
    try:
        args = build_parser().parse_args(argv)
        report["command"] = args.command
        report["seed"] = args.seed
        try:
            field = Field.parse(args.field) if args.field else None
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if field is not None:
            report["field"] = field.to_json()
        report["results"] = COMMANDS[args.command](args, field, warnings)
    except UsageError as exc:
        report["status"], report["error"], code = "usage-error", str(exc), EXIT_USAGE
    except ValidationFailed as exc:
        report["status"], report["error"], code = "invalid", str(exc), EXIT_INVALID
        report["results"] = exc.results
    except (hio.EntityInvalid, InvalidDatum) as exc:
        report["status"], report["error"], code = "invalid", str(exc), EXIT_INVALID
    except BudgetExceeded as exc:
        report["status"], report["error"], code = "budget-exhausted", str(exc), EXIT_BUDGET
    except (hio.ParseError, FiniteFieldRequired, CharacterSearchUndecidable, json.JSONDecodeError) as exc:
        report["status"], report["error"], code = "usage-error", str(exc), EXIT_USAGE
    except ValueError as exc:
        report["status"], report["error"], code = "invalid", str(exc), EXIT_INVALID
    return report, code


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    fmt = "text" if "--out" in argv and argv[argv.index("--out") + 1:][:1] == ["text"] else "json"
    report, code = run(argv)
    sys.stdout.write(emit(report, fmt))
    if report.get("error"):
        print(f"hochprod: {report['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

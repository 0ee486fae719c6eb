"""JSON formats for algebras, Poisson algebras, coalgebras and co-flag data.

Every entity carries ``"field": {"kind": "Fp", "p": 5}`` or ``{"kind": "Q"}``.
Tensors are sparse lists of ``[i, j, k, value]`` with 0-based indices; over Q
values are strings ``"a/b"``, over F_p integers ``0..p-1``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .algebra_core import Algebra, validate_algebra
from .coalgebra_dual import Coalgebra, validate_coalgebra
from .coflag import CoflagDatum
from .exact_linear import Field
from .hochschild import HochschildData, HochschildSystem, InvalidSystem
from .poisson_ext import PoissonAlgebra, PoissonCoflagDatum, validate_poisson


class ParseError(ValueError):
    pass


class EntityInvalid(ValueError):
    """Parsed fine but fails an algebraic axiom."""

    def __init__(self, kind: str, violations):
        self.violations = list(violations)
        first = self.violations[0]
        super().__init__(f"{kind} fails {first.axiom} at {first.witness}"
                         + (f" ({len(self.violations)} violations)" if len(self.violations) > 1 else ""))


def field_from_json(obj) -> Field:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError('"field" must be {"kind": "Q"} or {"kind": "Fp", "p": <prime>}')
    try:
        if obj["kind"] == "Q":
            return Field.rationals()
        if obj["kind"] == "Fp":
            return Field.prime(obj.get("p"))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    raise ParseError(f"unknown field kind {obj['kind']!r}")


def scalar_from_json(F: Field, x, warnings: list | None = None):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"scalar must be an integer or a string, got {x!r}")
    if isinstance(x, str):
        text = x.strip()
        try:
            q = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad scalar {x!r}") from None
        if "/" in text:
            num, den = (int(t) for t in text.split("/"))
            if (num, den) != (q.numerator, q.denominator) and warnings is not None:
                warnings.append(f"normalized non-reduced fraction {text} to {q}")
        x = q
    elif F.is_finite and not 0 <= x < F.p and warnings is not None:
        warnings.append(f"reduced {x} modulo {F.p}")
    try:
        return F(x)
    except ZeroDivisionError as exc:
        raise ParseError(str(exc)) from None


def _vector(F, data, n, what, warnings):
    if not isinstance(data, list) or len(data) != n:
        raise ParseError(f'"{what}" must be a list of {n} scalars')
    return tuple(scalar_from_json(F, x, warnings) for x in data)


def _sparse3(F, entries, n, what, warnings):
    T = [[[F.zero] * n for _ in range(n)] for _ in range(n)]
    for entry in entries:
        if not isinstance(entry, list) or len(entry) != 4:
            raise ParseError(f'"{what}" entries must be [i, j, k, value]')
        i, j, k, v = entry
        if not all(isinstance(t, int) and 0 <= t < n for t in (i, j, k)):
            raise ParseError(f'"{what}" index out of range in {entry}')
        T[i][j][k] = F(T[i][j][k] + scalar_from_json(F, v, warnings))
    return T


def _sparse2(F, entries, n, what, warnings):
    M = [[F.zero] * n for _ in range(n)]
    for entry in entries:
        if not isinstance(entry, list) or len(entry) != 3:
            raise ParseError(f'"{what}" entries must be [i, j, value]')
        i, j, v = entry
        if not all(isinstance(t, int) and 0 <= t < n for t in (i, j)):
            raise ParseError(f'"{what}" index out of range in {entry}')
        M[i][j] = F(M[i][j] + scalar_from_json(F, v, warnings))
    return M


def _emit3(F, T):
    n = len(T)
    return [[i, j, k, F.scalar_to_json(T[i][j][k])]
            for i in range(n) for j in range(n) for k in range(n) if T[i][j][k] != 0]


def _emit2(F, M):
    return [[i, j, F.scalar_to_json(M[i][j])] for i in range(len(M)) for j in range(len(M)) if M[i][j] != 0]


def _vec(F, v):
    return [F.scalar_to_json(x) for x in v]


# -- algebras ----------------------------------------------------------------------

def algebra_to_json(A: Algebra) -> dict:
    F = A.field
    out = {"type": "algebra", "field": F.to_json(), "dim": A.dim, "basis": list(A.basis),
           "unit": _vec(F, A.unit), "mult": _emit3(F, A.mult)}
    if A.name:
        out["name"] = A.name
    if A.known_characters is not None:
        out["characters"] = [_vec(F, c) for c in A.known_characters]
    if A.lambda0 is not None:
        out["lambda0"] = _vec(F, A.lambda0)
    if A.aut_generators:
        out["aut_generators"] = [[_vec(F, c) for c in g] for g in A.aut_generators]
    return out


def _dim(obj):
    n = obj.get("dim")
    if not isinstance(n, int) or n < 1:
        raise ParseError('"dim" must be a positive integer')
    return n


def algebra_from_json(obj: dict, warnings: list | None = None, validate: bool = True) -> Algebra:
    F = field_from_json(obj.get("field"))
    n = _dim(obj)
    basis = obj.get("basis") or [f"e{i}" for i in range(n)]
    if len(basis) != n:
        raise ParseError('"basis" length does not match "dim"')
    unit = _vector(F, obj.get("unit"), n, "unit", warnings)
    mult = _sparse3(F, obj.get("mult", []), n, "mult", warnings)
    kw = {}
    if "characters" in obj:
        kw["known_characters"] = [_vector(F, c, n, "characters", warnings) for c in obj["characters"]]
    if "lambda0" in obj:
        kw["lambda0"] = _vector(F, obj["lambda0"], n, "lambda0", warnings)
    if "aut_generators" in obj:
        kw["aut_generators"] = tuple(tuple(_vector(F, c, n, "aut_generators", warnings) for c in g)
                                     for g in obj["aut_generators"])
    A = Algebra(F, mult, unit, tuple(basis), name=obj.get("name", ""), **kw)
    if validate:
        bad = validate_algebra(A)
        if bad:
            raise EntityInvalid("algebra", bad)
    return A


def poisson_to_json(P: PoissonAlgebra) -> dict:
    out = algebra_to_json(P.algebra)
    out["type"] = "poisson"
    out["bracket"] = _emit3(P.field, P.bracket)
    return out


def poisson_from_json(obj: dict, warnings: list | None = None, validate: bool = True) -> PoissonAlgebra:
    A = algebra_from_json(obj, warnings, validate=False)
    P = PoissonAlgebra(A, _sparse3(A.field, obj.get("bracket", []), A.dim, "bracket", warnings))
    if validate:
        bad = validate_poisson(P)
        if bad:
            raise EntityInvalid("Poisson algebra", bad)
    return P


def coalgebra_to_json(C: Coalgebra) -> dict:
    F = C.field
    out = {"type": "coalgebra", "field": F.to_json(), "dim": C.dim, "basis": list(C.basis),
           "counit": _vec(F, C.counit), "comult": _emit3(F, C.comult)}
    if C.name:
        out["name"] = C.name
    return out


def coalgebra_from_json(obj: dict, warnings: list | None = None, validate: bool = True) -> Coalgebra:
    F = field_from_json(obj.get("field"))
    n = _dim(obj)
    counit = _vector(F, obj.get("counit"), n, "counit", warnings)
    comult = _sparse3(F, obj.get("comult", []), n, "comult", warnings)
    C = Coalgebra(F, comult, counit, tuple(obj.get("basis") or ()), obj.get("name", ""))
    if validate:
        bad = validate_coalgebra(C)
        if bad:
            raise EntityInvalid("coalgebra", bad)
    return C


# -- data --------------------------------------------------------------------------

def datum_to_json(d, F: Field) -> dict:
    if isinstance(d, PoissonCoflagDatum):
        return {"type": "poisson-datum", "field": F.to_json(), "dim": len(d.lam),
                "lambda": _vec(F, d.lam), "Lambda": _vec(F, d.Lam), "gamma": _vec(F, d.gamma),
                "theta": _emit2(F, d.theta), "f": _emit2(F, d.f)}
    if d.is_first:
        return {"type": "coflag-datum", "kind": "first", "field": F.to_json(), "dim": len(d.lam),
                "lambda": _vec(F, d.lam), "Lambda": _vec(F, d.Lam), "theta": _emit2(F, d.theta)}
    return {"type": "coflag-datum", "kind": "second", "field": F.to_json(), "dim": len(d.lam),
            "lambda": _vec(F, d.lam), "u": F.scalar_to_json(d.u)}


def datum_from_json(obj: dict, warnings: list | None = None):
    F = field_from_json(obj.get("field"))
    n = _dim(obj)
    lam = _vector(F, obj.get("lambda"), n, "lambda", warnings)
    if obj.get("type") == "poisson-datum":
        return PoissonCoflagDatum.make(F, lam, _vector(F, obj.get("Lambda"), n, "Lambda", warnings),
                                       _sparse2(F, obj.get("theta", []), n, "theta", warnings),
                                       _vector(F, obj.get("gamma"), n, "gamma", warnings),
                                       _sparse2(F, obj.get("f", []), n, "f", warnings))
    if obj.get("kind", "first") == "second":
        if "u" not in obj:
            raise ParseError('second-kind datum needs "u"')
        return CoflagDatum.second(F, lam, scalar_from_json(F, obj["u"], warnings))
    return CoflagDatum.first(F, lam, _vector(F, obj.get("Lambda"), n, "Lambda", warnings),
                             _sparse2(F, obj.get("theta", []), n, "theta", warnings))


def _sparse_shaped(F, entries, shape, what, warnings):
    a, b, m = shape
    T = [[[F.zero] * m for _ in range(b)] for _ in range(a)]
    for entry in entries:
        if not isinstance(entry, list) or len(entry) != 4:
            raise ParseError(f'"{what}" entries must be [i, j, k, value]')
        i, j, k, v = entry
        if not (isinstance(i, int) and isinstance(j, int) and isinstance(k, int)
                and 0 <= i < a and 0 <= j < b and 0 <= k < m):
            raise ParseError(f'"{what}" index out of range in {entry}')
        T[i][j][k] = F(T[i][j][k] + scalar_from_json(F, v, warnings))
    return T


def system_to_json(s: HochschildData) -> dict:
    F = s.field
    emit = lambda T: [[i, j, k, F.scalar_to_json(x)] for i, row in enumerate(T)
                      for j, v in enumerate(row) for k, x in enumerate(v) if x != 0]
    return {"type": "hochschild-system", "field": F.to_json(), "vdim": s.vdim,
            "algebra": algebra_to_json(s.algebra), "left": emit(s.act_left),
            "right": emit(s.act_right), "cocycle": emit(s.cocycle), "vmult": emit(s.vmult)}


def system_from_json(obj: dict, warnings: list | None = None, validate: bool = True):
    """``left[a][x] = a |> x``, ``right[x][a] = x <| a``, both as vectors in ``V``."""
    A = algebra_from_json(obj.get("algebra") or {}, warnings)
    F, n = A.field, A.dim
    m = obj.get("vdim")
    if not isinstance(m, int) or m < 0:
        raise ParseError('"vdim" must be a non-negative integer')
    parts = dict(act_left=_sparse_shaped(F, obj.get("left", []), (n, m, m), "left", warnings),
                 act_right=_sparse_shaped(F, obj.get("right", []), (m, n, m), "right", warnings),
                 cocycle=_sparse_shaped(F, obj.get("cocycle", []), (n, n, m), "cocycle", warnings),
                 vmult=_sparse_shaped(F, obj.get("vmult", []), (m, m, m), "vmult", warnings))
    if not validate:
        return HochschildData(A, m, **parts)
    try:
        return HochschildSystem(A, m, **parts)
    except InvalidSystem as exc:
        raise EntityInvalid("Hochschild system", exc.report) from None


# -- entity dispatch -------------------------------------------------------------------

def entity_kind(obj: dict) -> str:
    if "type" in obj:
        return obj["type"]
    if "comult" in obj:
        return "coalgebra"
    if "bracket" in obj:
        return "poisson"
    if "lambda" in obj:
        return "poisson-datum" if "gamma" in obj else "coflag-datum"
    return "algebra"


def parse_entity(obj, warnings: list | None = None, validate: bool = True):
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    kind = entity_kind(obj)
    if kind == "algebra":
        return algebra_from_json(obj, warnings, validate)
    if kind == "poisson":
        return poisson_from_json(obj, warnings, validate)
    if kind == "coalgebra":
        return coalgebra_from_json(obj, warnings, validate)
    if kind == "hochschild-system":
        return system_from_json(obj, warnings, validate)
    if kind in ("coflag-datum", "poisson-datum"):
        return datum_from_json(obj, warnings)
    raise ParseError(f"unknown entity type {kind!r}")


def parse_entity_text(text: str, warnings: list | None = None, validate: bool = True):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_entity(obj, warnings, validate)


def parse_entity_file(path, warnings: list | None = None, validate: bool = True):
    return parse_entity_text(Path(path).read_text(), warnings, validate)


def entity_to_json(entity) -> dict:
    if isinstance(entity, PoissonAlgebra):
        return poisson_to_json(entity)
    if isinstance(entity, Algebra):
        return algebra_to_json(entity)
    if isinstance(entity, Coalgebra):
        return coalgebra_to_json(entity)
    if isinstance(entity, HochschildData):
        return system_to_json(entity)
    if isinstance(entity, (CoflagDatum, PoissonCoflagDatum)):
        raise TypeError("data need their field: use datum_to_json(d, F)")
    raise TypeError(f"cannot serialize {type(entity).__name__}")


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"

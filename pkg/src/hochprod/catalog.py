"""Named algebras, Poisson algebras and coalgebras used throughout the package.

``catalog(name, field, **params)`` is the single entry point; the CLI exposes
the same names (``catalog:matrix?n=2``).
"""
from __future__ import annotations

from math import gcd

from .algebra_core import Algebra, direct_product
from .exact_linear import Field


def generic_lambda0(A: Algebra) -> tuple:
    """Unital functional dual to the last basis vector that occurs in the unit."""
    F = A.field
    j = max(i for i, u in enumerate(A.unit) if u != 0)
    out = [F.zero] * A.dim
    out[j] = F.inv(A.unit[j])
    return tuple(out)


def ground(F: Field) -> Algebra:
    return Algebra(F, [[[1]]], (1,), ("1",), name="k", known_characters=[(1,)])


def matrix_algebra(n: int, F: Field) -> Algebra:
    if n < 1:
        raise ValueError("matrix size must be positive")
    idx = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    pos = {ij: t for t, ij in enumerate(idx)}
    entries = [(pos[(i, j)], pos[(j2, l)], pos[(i, l)], 1)
               for (i, j) in idx for (j2, l) in idx if j == j2]
    unit = [1 if i == j else 0 for (i, j) in idx]
    lam0 = [1 if (i, j) == (n, n) else 0 for (i, j) in idx]
    known = [(1,)] if n == 1 else []
    return Algebra.from_entries(F, n * n, entries, unit, [f"e{i}{j}" for i, j in idx],
                                name=f"M_{n}", known_characters=known, lambda0=lam0)


def upper_triangular(n: int, F: Field) -> Algebra:
    """Upper triangular ``n x n`` matrices; characters are the diagonal projections."""
    if n < 1:
        raise ValueError("matrix size must be positive")
    idx = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    pos = {ij: t for t, ij in enumerate(idx)}
    entries = [(pos[(i, j)], pos[(j2, l)], pos[(i, l)], 1)
               for (i, j) in idx for (j2, l) in idx if j == j2]
    unit = [1 if i == j else 0 for (i, j) in idx]
    known = [[1 if (i, j) == (u, u) else 0 for (i, j) in idx] for u in range(1, n + 1)]
    lam0 = [1 if (i, j) == (n, n) else 0 for (i, j) in idx]
    return Algebra.from_entries(F, len(idx), entries, unit, [f"e{i}{j}" for i, j in idx],
                                name=f"T_{n}", known_characters=known, lambda0=lam0)


def roots_of_unity(n: int, F: Field) -> list:
    if F.is_finite:
        return [x for x in F.units() if pow(x, n, F.p) == 1]
    return [F(1)] if n % 2 else [F(-1), F(1)]


def cyclic_group_algebra(n: int, F: Field) -> Algebra:
    """``k[C_n]`` with basis ``1, d, ..., d^(n-1)``."""
    if n < 1:
        raise ValueError("group order must be positive")
    if F.is_finite and gcd(n, F.p) != 1:
        raise ValueError(f"k[C_{n}] needs n invertible in the field (gcd({n}, {F.p}) != 1)")
    entries = [(i, j, (i + j) % n, 1) for i in range(n) for j in range(n)]
    labels = ["1"] + (["d"] if n > 1 else []) + [f"d{i}" for i in range(2, n)]
    known = [[F(w) ** i if not F.is_finite else pow(w, i, F.p) for i in range(n)]
             for w in roots_of_unity(n, F)]
    lam0 = [1] + [0] * (n - 1)
    return Algebra.from_entries(F, n, entries, [1] + [0] * (n - 1), labels,
                                name=f"k[C_{n}]", known_characters=known, lambda0=lam0)


def dual_numbers(F: Field) -> Algebra:
    """``k[X]/(X^2)`` with basis ``1, x``."""
    return Algebra.from_products(F, ["1", "x"],
                                 {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1}},
                                 {"1": 1}, name="k[X]/(X^2)", known_characters=[(1, 0)],
                                 lambda0=(1, 0))


def _three(F, name, extra, known):
    prods = {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1},
             ("1", "y"): {"y": 1}, ("y", "1"): {"y": 1}}
    prods.update(extra)
    return Algebra.from_products(F, ["1", "x", "y"], prods, {"1": 1}, name=name,
                                 known_characters=known)


def coflag3(index: int, F: Field) -> Algebra:
    """The six presentations listed for three-dimensional co-flag algebras (1..6)."""
    if index == 1:
        A = Algebra.from_entries(F, 3, [(i, i, i, 1) for i in range(3)], (1, 1, 1),
                                 ("p1", "p2", "p3"), name="k^3",
                                 known_characters=[(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        return A
    if index == 2:
        return _three(F, "k[X,Y]/(X^2-1, Y^2, XY-Y)",
                      {("x", "x"): {"1": 1}, ("x", "y"): {"y": 1}, ("y", "x"): {"y": 1}},
                      [(1, 1, 0), (1, -1, 0)])
    if index == 3:
        return _three(F, "k<x,y | x^2=1, y^2=0, xy=-yx=y>",
                      {("x", "x"): {"1": 1}, ("x", "y"): {"y": 1}, ("y", "x"): {"y": -1}},
                      [(1, 1, 0), (1, -1, 0)])
    if index == 4:
        return _three(F, "k[X,Y]/(X^2, Y^2, XY)", {}, [(1, 0, 0)])
    if index == 5:
        return _three(F, "k[X,Y]/(X^2-Y, Y^2, XY)", {("x", "x"): {"y": 1}}, [(1, 0, 0)])
    if index == 6:
        return _three(F, "k[X,Y]/(X^2, Y^2-Y, XY)", {("y", "y"): {"y": 1}},
                      [(1, 0, 0), (1, 0, 1)])
    raise ValueError("coflag3 index must be in 1..6")


def t2_hoc_table(index: int, F: Field) -> Algebra:
    """The seven displayed four-dimensional algebras projecting onto ``T_2`` (as printed).

    Basis ``e11, e12, e22, f``; ``index`` counts tables left to right, top to bottom.
    """
    base = {("e11", "e11"): {"e11": 1}, ("e11", "e12"): {"e12": 1},
            ("e12", "e22"): {"e12": 1}, ("e22", "e22"): {"e22": 1}}
    tables = {
        1: {("e11", "f"): {"f": 1}, ("f", "e11"): {"f": 1}},
        2: {("e22", "f"): {"f": 1}, ("f", "e22"): {"f": 1}},
        3: {("e11", "e11"): {"e11": 1, "f": -1}, ("e11", "e22"): {"f": 1},
            ("e22", "e11"): {"f": -1}, ("e22", "e22"): {"e22": 1, "f": -1},
            ("e22", "f"): {"f": 1}, ("f", "e22"): {"f": 1}},
        4: {("e11", "f"): {"f": 1}, ("f", "e22"): {"f": 1}},
        5: {("e11", "e12"): {"e12": 1, "f": -1}, ("e11", "f"): {"f": 1},
            ("e12", "e11"): {"f": 1}, ("e12", "e22"): {"e12": 1, "f": -1},
            ("e22", "e12"): {"f": 1}, ("f", "e22"): {"f": 1}},
        6: {("e22", "f"): {"f": 1}, ("f", "e11"): {"f": 1}},
        7: {("e11", "e12"): {"e12": 1, "f": 1}, ("e22", "f"): {"f": 1}, ("f", "e11"): {"f": 1}},
    }
    if index not in tables:
        raise ValueError("T_2 table index must be in 1..7")
    prods = dict(base)
    prods.update(tables[index])
    return Algebra.from_products(F, ["e11", "e12", "e22", "f"], prods,
                                 {"e11": 1, "e22": 1}, name=f"T_2 table {index}")


ALGEBRA_NAMES = ("ground", "matrix", "upper-triangular", "cyclic-group", "dual-numbers",
                 "coflag3", "t2-table", "product")
POISSON_NAMES = ("heisenberg-poisson", "poisson-table")
COALGEBRA_NAMES = ("coalgebra-s3",)


def _product_of(spec: str, F: Field):
    parts = [p for p in spec.split("*") if p]
    if len(parts) < 2:
        raise ValueError("product needs at least two factors, e.g. of=matrix:n=2*ground")
    algebras = []
    for part in parts:
        name, _, rest = part.partition(":")
        params = dict(kv.split("=") for kv in rest.split(",") if kv)
        algebras.append(catalog(name, F, **{k: int(v) for k, v in params.items()}))
    out = algebras[0]
    for B in algebras[1:]:
        out = direct_product(out, B)
    return out


def catalog(name: str, field: Field, **params):
    """Look up a named object; raises ``ValueError`` for unknown names or bad parameters."""
    F = field
    if name == "ground":
        return ground(F)
    if name == "matrix":
        return matrix_algebra(int(params.get("n", 2)), F)
    if name == "upper-triangular":
        return upper_triangular(int(params.get("n", 2)), F)
    if name == "cyclic-group":
        return cyclic_group_algebra(int(params.get("n", 2)), F)
    if name == "dual-numbers":
        return dual_numbers(F)
    if name == "coflag3":
        return coflag3(int(params.get("index", 1)), F)
    if name == "t2-table":
        return t2_hoc_table(int(params.get("index", 1)), F)
    if name == "product":
        return _product_of(str(params.get("of", "")), F)
    if name in POISSON_NAMES:
        from . import poisson_ext
        if name == "heisenberg-poisson":
            return poisson_ext.heisenberg_poisson(F)
        return poisson_ext.example_table(str(params.get("which", "P1")), F,
                                         params.get("param", 0))
    if name in COALGEBRA_NAMES:
        from . import coalgebra_dual
        return coalgebra_dual.example_coalgebra(F)
    raise ValueError(f"unknown catalog name {name!r}")


def catalog_algebras(F: Field, max_dim: int | None = None) -> list[Algebra]:
    """Every parameter-free catalog algebra (plus small matrix/triangular/cyclic ones)."""
    out = [ground(F), dual_numbers(F), matrix_algebra(2, F), upper_triangular(2, F),
           upper_triangular(3, F)]
    for n in (2, 3, 4):
        if not F.is_finite or gcd(n, F.p) == 1:
            out.append(cyclic_group_algebra(n, F))
    out += [coflag3(i, F) for i in range(1, 7)]
    out.append(direct_product(matrix_algebra(2, F), ground(F)))
    out.append(direct_product(dual_numbers(F), ground(F)))
    if max_dim is not None:
        out = [A for A in out if A.dim <= max_dim]
    return out


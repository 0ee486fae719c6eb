"""Finite-dimensional unital associative algebras given by structure constants.

An :class:`Algebra` stores ``mult[i][j]``, the coordinate vector of
``e_i * e_j``, together with the coordinates of the unit.  Everything here is
exact: scalars live in a :class:`~hochprod.exact_linear.Field`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple, Sequence

from . import exact_linear as el
from . import kernels
from .exact_linear import Field, FiniteFieldRequired


class Violation(NamedTuple):
    """One failed axiom instance: the axiom name, the basis witness, a message."""

    axiom: str
    witness: tuple
    detail: str = ""


class BudgetExceeded(RuntimeError):
    """A brute-force search would exceed its configured budget."""


class CharacterSearchUndecidable(ValueError):
    def __init__(self, name: str = ""):
        label = f" for {name}" if name else ""
        super().__init__(f"character search undecidable here{label}: "
                         "over Q only registered closed-form characters are available")


def _freeze(rows):
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True, eq=False)
class Algebra:
    field: Field
    mult: tuple            # mult[i][j] -> coordinates of e_i e_j
    unit: tuple
    basis: tuple = ()
    name: str = ""
    known_characters: tuple | None = None
    lambda0: tuple | None = None
    aut_generators: tuple | None = None
    meta: dict = dc_field(default_factory=dict, compare=False)

    def __post_init__(self):
        F = self.field
        n = len(self.unit)
        if len(self.mult) != n or any(len(row) != n for row in self.mult):
            raise ValueError(f"structure tensor shape does not match dimension {n}")
        if any(len(v) != n for row in self.mult for v in row):
            raise ValueError("product vectors must have length dim")
        object.__setattr__(self, "mult", tuple(tuple(tuple(F(x) for x in v) for v in row)
                                               for row in self.mult))
        object.__setattr__(self, "unit", tuple(F(x) for x in self.unit))
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"e{i}" for i in range(n)))
        elif len(self.basis) != n:
            raise ValueError("basis label count does not match dimension")
        else:
            object.__setattr__(self, "basis", tuple(self.basis))
        if self.known_characters is not None:
            object.__setattr__(self, "known_characters",
                               tuple(sorted(tuple(F(x) for x in c) for c in self.known_characters)))
        if self.lambda0 is not None:
            object.__setattr__(self, "lambda0", tuple(F(x) for x in self.lambda0))

    @classmethod
    def from_entries(cls, field: Field, n: int, entries, unit, basis=(), **kw) -> Algebra:
        """Build from sparse ``(i, j, k, value)`` entries meaning ``c[i][j][k] = value``."""
        c = [[[0] * n for _ in range(n)] for _ in range(n)]
        for i, j, k, val in entries:
            c[i][j][k] = field(c[i][j][k] + field(val))
        return cls(field, c, tuple(unit), tuple(basis), **kw)

    @classmethod
    def from_products(cls, field: Field, basis, products: dict, unit, **kw) -> Algebra:
        """Build from ``{(label_i, label_j): {label_k: value}}``; missing products are zero."""
        index = {b: i for i, b in enumerate(basis)}
        entries = [(index[a], index[b], index[k], v)
                   for (a, b), out in products.items() for k, v in out.items()]
        if isinstance(unit, dict):
            unit = [unit.get(b, 0) for b in basis]
        return cls.from_entries(field, len(basis), entries, unit, basis, **kw)

    @property
    def dim(self) -> int:
        return len(self.unit)

    def e(self, i: int) -> tuple:
        return tuple(el.unit_vector(self.dim, i, self.field))

    def mul(self, x, y) -> tuple:
        F, n = self.field, self.dim
        out = [0] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.mult[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, v in enumerate(row[j]):
                    if v:
                        out[k] += c * v
        return tuple(F(z) for z in out)

    def entries(self):
        """Sparse ``(i, j, k, value)`` list of nonzero structure constants."""
        n = self.dim
        return [(i, j, k, self.mult[i][j][k]) for i in range(n) for j in range(n)
                for k in range(n) if self.mult[i][j][k] != 0]

    def flat(self) -> list:
        """Structure tensor flattened as ``c[(i*n + j)*n + k]`` (F_p residues)."""
        return [int(v) for row in self.mult for vec in row for v in vec]

    def same_table(self, other: Algebra) -> bool:
        return (self.field == other.field and self.mult == other.mult
                and self.unit == other.unit)

    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.mult[i][j] == self.mult[j][i] for i in range(n) for j in range(i))

    def renamed(self, name: str, **changes) -> Algebra:
        kw = dict(field=self.field, mult=self.mult, unit=self.unit, basis=self.basis,
                  name=name, known_characters=self.known_characters, lambda0=self.lambda0,
                  aut_generators=self.aut_generators, meta=dict(self.meta))
        kw.update(changes)
        return Algebra(**kw)

    def __repr__(self) -> str:
        return f"Algebra({self.name or '?'}, dim={self.dim}, over {self.field})"


def validate_algebra(A: Algebra) -> list[Violation]:
    """Every associativity quadruple ``(i, j, k, l)`` and unit failure of ``A``."""
    n = A.dim
    report = []
    prods = [[A.mult[i][j] for j in range(n)] for i in range(n)]
    for i, j, k in itertools.product(range(n), repeat=3):
        left = A.mul(prods[i][j], A.e(k))
        right = A.mul(A.e(i), prods[j][k])
        for l in range(n):
            if left[l] != right[l]:
                report.append(Violation("associativity", (i, j, k, l),
                                        f"((e{i}e{j})e{k})[{l}] = {left[l]} but "
                                        f"(e{i}(e{j}e{k}))[{l}] = {right[l]}"))
    for j in range(n):
        ej = A.e(j)
        if A.mul(A.unit, ej) != ej:
            report.append(Violation("unit-left", (j,), f"1 * e{j} != e{j}"))
        if A.mul(ej, A.unit) != ej:
            report.append(Violation("unit-right", (j,), f"e{j} * 1 != e{j}"))
    return report


def is_valid(A: Algebra) -> bool:
    return not validate_algebra(A)


# -- linear maps between algebras --------------------------------------------

@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    """A linear map given by the images of the domain basis (its columns)."""

    columns: tuple
    domain: Algebra
    codomain: Algebra

    def __post_init__(self):
        F = self.codomain.field
        object.__setattr__(self, "columns", tuple(tuple(F(x) for x in c) for c in self.columns))

    @property
    def matrix(self) -> list:
        return el.columns_to_matrix(self.columns)

    def __call__(self, v) -> tuple:
        F = self.codomain.field
        return tuple(el.lincomb(F, v, self.columns, self.codomain.dim))

    def compose(self, other: AlgebraMorphism) -> AlgebraMorphism:
        """``self o other``."""
        return AlgebraMorphism(tuple(self(c) for c in other.columns), other.domain, self.codomain)

    def inverse(self) -> AlgebraMorphism:
        inv = el.inverse(self.codomain.field, self.matrix)
        if inv is None:
            raise ValueError("map is not invertible")
        return AlgebraMorphism(tuple(tuple(c) for c in el.transpose(inv)), self.codomain, self.domain)

    def is_bijective(self) -> bool:
        return (self.domain.dim == self.codomain.dim
                and el.rank(self.codomain.field, self.matrix) == self.domain.dim)

    def key(self) -> tuple:
        return self.columns

    def __eq__(self, other):
        return isinstance(other, AlgebraMorphism) and self.columns == other.columns

    def __hash__(self):
        return hash(self.columns)


def identity_morphism(A: Algebra) -> AlgebraMorphism:
    return AlgebraMorphism(tuple(A.e(i) for i in range(A.dim)), A, A)


def morphism_violations(columns, A: Algebra, B: Algebra) -> list[Violation]:
    """Unit and multiplicativity failures of the linear map with these columns."""
    phi = AlgebraMorphism(columns, A, B)
    out = []
    if phi(A.unit) != B.unit:
        out.append(Violation("unit", (), "map does not send 1 to 1"))
    for i in range(A.dim):
        for j in range(A.dim):
            if phi(A.mult[i][j]) != B.mul(phi.columns[i], phi.columns[j]):
                out.append(Violation("multiplicative", (i, j), f"f(e{i}e{j}) != f(e{i})f(e{j})"))
    return out


def is_algebra_morphism(columns, A: Algebra, B: Algebra) -> bool:
    return not morphism_violations(columns, A, B)


# -- characters ----------------------------------------------------------------

def is_character(A: Algebra, chi) -> bool:
    F = A.field
    if el.dot(F, A.unit, chi) != 1:
        return False
    return all(el.dot(F, A.mult[i][j], chi) == F(chi[i] * chi[j])
               for i in range(A.dim) for j in range(A.dim))


def characters(A: Algebra) -> list[tuple]:
    """All unital multiplicative functionals ``A -> k``, in lexicographic order.

    Over F_p this is an exhaustive pruned search; over Q only registered
    closed forms are available.
    """
    F = A.field
    if F.is_finite:
        return [tuple(v) for v in kernels.multiplicative_vectors(A.flat(), [int(u) for u in A.unit],
                                                                 A.dim, F.p)]
    if A.known_characters is None:
        raise CharacterSearchUndecidable(A.name)
    return list(A.known_characters)


# -- automorphisms and isomorphisms ---------------------------------------------

def _search_order(A: Algebra) -> list[int]:
    """Unit support first, then greedily the index completing the most products."""
    n = A.dim
    order = [i for i in range(n) if A.unit[i] != 0]
    support = {(i, j): {k for k in range(n) if A.mult[i][j][k] != 0} | {i, j}
               for i in range(n) for j in range(n)}
    while len(order) < n:
        placed = set(order)
        best, best_score = None, -1
        for cand in range(n):
            if cand in placed:
                continue
            now = placed | {cand}
            score = sum(1 for s in support.values() if s <= now and cand in s)
            if score > best_score:
                best, best_score = cand, score
        order.append(best)
    return order


def _require_finite(A: Algebra, what: str):
    if not A.field.is_finite:
        raise FiniteFieldRequired(what)


def automorphisms_brute(A: Algebra, cap: int = 10 ** 8) -> list[AlgebraMorphism]:
    """The full automorphism group of ``A`` over F_p by pruned search."""
    _require_finite(A, "brute-force automorphism search")
    p, n = A.field.p, A.dim
    if p ** (n * n) > cap:
        raise BudgetExceeded(f"{p}^{n * n} candidate maps exceed the cap {cap}; "
                             "supply automorphism generators from the catalog or a file")
    flat, unit = A.flat(), [int(u) for u in A.unit]
    found = kernels.morphism_search(flat, unit, flat, unit, n, p, _search_order(A))
    return sorted((AlgebraMorphism(cols, A, A) for cols in found), key=lambda m: m.columns)


def verify_group(elements: Sequence[AlgebraMorphism]) -> bool:
    """Closure, identity and inverses of a finite set of automorphisms."""
    if not elements:
        return False
    keys = {g.columns for g in elements}
    A = elements[0].domain
    if identity_morphism(A).columns not in keys:
        return False
    for g in elements:
        if g.inverse().columns not in keys:
            return False
        for h in elements:
            if g.compose(h).columns not in keys:
                return False
    return True


def close_group(generators: Sequence[AlgebraMorphism], limit: int = 10 ** 6) -> list[AlgebraMorphism]:
    """The finite group generated by ``generators``."""
    A = generators[0].domain if generators else None
    if A is None:
        raise ValueError("need at least one generator")
    group = {identity_morphism(A).columns: identity_morphism(A)}
    frontier = list(group.values())
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                gh = g.compose(h)
                if gh.columns not in group:
                    group[gh.columns] = gh
                    nxt.append(gh)
                    if len(group) > limit:
                        raise BudgetExceeded("generated group exceeds limit")
        frontier = nxt
    return sorted(group.values(), key=lambda m: m.columns)


def fingerprint(A: Algebra) -> tuple:
    """Cheap isomorphism invariants: dim, commutator span, center, square, characters."""
    F, n = A.field, A.dim
    comm = [el.vsub(F, A.mult[i][j], A.mult[j][i]) for i in range(n) for j in range(n)]
    center_rows = []
    for j in range(n):
        for k in range(n):
            center_rows.append([F(A.mult[i][j][k] - A.mult[j][i][k]) for i in range(n)])
    square = [A.mult[i][j] for i in range(n) for j in range(n)]
    chars = len(characters(A)) if F.is_finite or A.known_characters is not None else None
    return (n, el.rank(F, comm), n - el.rank(F, center_rows), el.rank(F, square), chars)


def find_isomorphism(A: Algebra, B: Algebra) -> AlgebraMorphism | None:
    """Some algebra isomorphism ``A -> B`` over F_p, or ``None``."""
    _require_finite(A, "isomorphism search")
    if A.field != B.field or A.dim != B.dim:
        return None
    if fingerprint(A) != fingerprint(B):
        return None
    found = kernels.morphism_search(A.flat(), [int(u) for u in A.unit], B.flat(),
                                    [int(u) for u in B.unit], A.dim, A.field.p,
                                    _search_order(A), 1)
    if not found:
        return None
    phi = AlgebraMorphism(found[0], A, B)
    assert is_algebra_morphism(phi.columns, A, B) and phi.is_bijective()
    return phi


# -- constructions ---------------------------------------------------------------

def direct_product(A: Algebra, B: Algebra, name: str | None = None) -> Algebra:
    if A.field != B.field:
        raise ValueError("direct product needs a common base field")
    F, n, m = A.field, A.dim, B.dim
    entries = [(i, j, k, v) for i, j, k, v in A.entries()]
    entries += [(n + i, n + j, n + k, v) for i, j, k, v in B.entries()]
    known = None
    if A.known_characters is not None and B.known_characters is not None:
        known = [tuple(c) + (F.zero,) * m for c in A.known_characters]
        known += [(F.zero,) * n + tuple(c) for c in B.known_characters]
    basis = tuple(A.basis) + tuple(b if b not in A.basis else b + "'" for b in B.basis)
    return Algebra.from_entries(F, n + m, entries, tuple(A.unit) + tuple(B.unit), basis,
                                name=name or f"{A.name or 'A'} x {B.name or 'B'}",
                                known_characters=known)


def is_two_sided_ideal(A: Algebra, basis: Sequence[Sequence]) -> bool:
    F = A.field
    if not basis:
        return True
    R, piv = el.row_space(F, basis, A.dim)
    for v in R:
        for i in range(A.dim):
            for w in (A.mul(A.e(i), v), A.mul(v, A.e(i))):
                if not el.is_zero(el.reduce_mod(F, w, R, piv)):
                    return False
    return True


def proper_two_sided_ideals(A: Algebra, max_dim: int | None = None,
                            budget: int = 10 ** 6) -> list[list]:
    """All proper nonzero two-sided ideals up to ``max_dim``, as RREF bases."""
    _require_finite(A, "ideal search")
    n, p = A.dim, A.field.p
    top = n - 1 if max_dim is None else min(max_dim, n - 1)
    total = sum(el.count_subspaces(p, n, d) for d in range(1, top + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} subspaces exceed the ideal-search budget {budget}")
    out = []
    for d in range(1, top + 1):
        for basis in el.enumerate_subspaces(A.field, n, d):
            if is_two_sided_ideal(A, basis):
                out.append(basis)
    return out


@dataclass(frozen=True, eq=False)
class Quotient:
    algebra: Algebra
    ideal: list
    projection: list       # matrix dim_Q x dim_A
    section: list          # matrix dim_A x dim_Q, unital linear section


def quotient(A: Algebra, ideal_basis: Sequence[Sequence]) -> Quotient:
    """``A / I`` with its projection and a unital linear section."""
    F, n = A.field, A.dim
    R, piv = el.row_space(F, ideal_basis, n)
    if not is_two_sided_ideal(A, R):
        raise ValueError("not a two-sided ideal")
    free = [j for j in range(n) if j not in piv]
    if not free:
        raise ValueError("ideal is the whole algebra")

    def proj(v):
        w = el.reduce_mod(F, v, R, piv)
        return [w[j] for j in free]

    ubar = proj(A.unit)
    j0 = next(t for t, x in enumerate(ubar) if x != 0)
    lift = [F(x) for x in A.unit]
    for t, j in enumerate(free):
        lift[j] = F(lift[j] - ubar[t])
    sec_cols = []
    for t, j in enumerate(free):
        col = list(A.e(j))
        if t == j0:
            col = el.vadd(F, col, el.vscale(F, F.inv(ubar[j0]), lift))
        sec_cols.append(col)
    m = len(free)
    mult = [[tuple(proj(A.mul(sec_cols[a], sec_cols[b]))) for b in range(m)] for a in range(m)]
    Q = Algebra(F, mult, tuple(ubar), tuple(f"[{A.basis[j]}]" for j in free),
                name=f"{A.name or 'A'}/I")
    projection = el.transpose([proj(A.e(i)) for i in range(n)])
    return Quotient(Q, [list(r) for r in R], projection, el.columns_to_matrix(sec_cols))


@dataclass
class Tower:
    """Successive quotients ``A = A_0 -> A_1 -> ... -> base``, each with its system."""

    top: Algebra
    steps: list            # (Quotient, HochschildSystem, phi columns)
    base: Algebra

    def __len__(self):
        return len(self.steps)


def decompose_tower(A: Algebra, budget: int = 10 ** 6) -> Tower:
    """Peel ideals (smallest first, 1-dimensional preferred) until none is left."""
    from .hochschild import build_product, extract_system

    steps = []
    current = A
    while current.dim > 1:
        ideals = proper_two_sided_ideals(current, budget=budget)
        if not ideals:
            break
        ideal = min(ideals, key=len)
        q = quotient(current, ideal)
        system, phi, _ = extract_system(current, q.algebra, q.projection, q.section, q.ideal)
        rebuilt = build_product(system).total
        if not is_algebra_morphism(phi, rebuilt, current):
            raise AssertionError("tower step does not reconstruct the algebra")
        steps.append((q, system, phi))
        current = q.algebra
    return Tower(A, steps, current)

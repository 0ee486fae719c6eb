"""Finite-dimensional coalgebras and their convolution algebras.

``comult[i][j][l]`` is the coefficient of ``f_j (x) f_l`` in ``Delta(f_i)``.
The convolution algebra on the dual basis has ``mult[j][k][i] = comult[i][j][k]``
and unit ``counit``; a coalgebra is supersolvable when it has a chain of
subcoalgebras of every dimension, which happens exactly when the
convolution algebra is co-flag.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import exact_linear as el
from . import kernels
from .algebra_core import Algebra, CharacterSearchUndecidable, Violation
from .exact_linear import Field, FiniteFieldRequired


@dataclass(frozen=True, eq=False)
class Coalgebra:
    field: Field
    comult: tuple
    counit: tuple
    basis: tuple = ()
    name: str = ""

    def __post_init__(self):
        F = self.field
        n = len(self.counit)
        cm = tuple(tuple(tuple(F(x) for x in row) for row in block) for block in self.comult)
        if len(cm) != n or any(len(b) != n or any(len(r) != n for r in b) for b in cm):
            raise ValueError(f"comultiplication must be {n} x {n} x {n}")
        object.__setattr__(self, "comult", cm)
        object.__setattr__(self, "counit", tuple(F(x) for x in self.counit))
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"f{i + 1}" for i in range(n)))
        elif len(self.basis) != n:
            raise ValueError("basis labels do not match the dimension")

    @classmethod
    def from_terms(cls, F: Field, basis, terms: dict, counit: dict, name: str = "") -> Coalgebra:
        """``terms[b] = {(b1, b2): coeff}`` describes ``Delta(b)``."""
        pos = {b: i for i, b in enumerate(basis)}
        n = len(basis)
        cm = [[[0] * n for _ in range(n)] for _ in range(n)]
        for b, parts in terms.items():
            for (x, y), c in parts.items():
                cm[pos[b]][pos[x]][pos[y]] += c
        eps = [counit.get(b, 0) for b in basis]
        return cls(F, cm, eps, tuple(basis), name)

    @property
    def dim(self) -> int:
        return len(self.counit)

    def delta(self, v) -> list:
        """``Delta(v)`` as an ``n x n`` coefficient matrix."""
        F, n = self.field, self.dim
        out = [[F.zero] * n for _ in range(n)]
        for i, c in enumerate(v):
            if c:
                for j in range(n):
                    for l, d in enumerate(self.comult[i][j]):
                        if d:
                            out[j][l] = F(out[j][l] + c * d)
        return out

    def same_structure(self, other: Coalgebra) -> bool:
        return self.comult == other.comult and self.counit == other.counit


def validate_coalgebra(C: Coalgebra) -> list[Violation]:
    F, n, d = C.field, C.dim, C.comult
    out = []
    for i in range(n):
        for a, b, c in itertools.product(range(n), repeat=3):
            lhs = sum(d[i][j][c] * d[j][a][b] for j in range(n))
            rhs = sum(d[i][a][l] * d[l][b][c] for l in range(n))
            if F(lhs - rhs) != 0:
                out.append(Violation("coassociativity", (i, a, b, c)))
        for l in range(n):
            want = F.one if i == l else F.zero
            if F(sum(C.counit[j] * d[i][j][l] for j in range(n))) != want:
                out.append(Violation("counit-left", (i, l)))
            if F(sum(C.counit[j] * d[i][l][j] for j in range(n))) != want:
                out.append(Violation("counit-right", (i, l)))
    return out


def dualize_algebra(A: Algebra) -> Coalgebra:
    """The dual coalgebra ``A^*`` on the dual basis."""
    n = A.dim
    cm = [[[A.mult[j][l][i] for l in range(n)] for j in range(n)] for i in range(n)]
    return Coalgebra(A.field, cm, A.unit, tuple(f"{b}*" for b in A.basis),
                     name=f"({A.name or 'A'})^*")


def convolution_algebra(C: Coalgebra) -> Algebra:
    n = C.dim
    mult = [[[C.comult[i][j][k] for i in range(n)] for k in range(n)] for j in range(n)]
    return Algebra(C.field, mult, C.counit, tuple(f"{b}*" for b in C.basis),
                   name=f"({C.name or 'C'})^*")


def grouplikes(C: Coalgebra) -> list[tuple]:
    """All ``g`` with ``Delta(g) = g (x) g`` and ``counit(g) = 1`` (F_p search)."""
    F = C.field
    if not F.is_finite:
        raise CharacterSearchUndecidable(C.name or "coalgebra")
    T = convolution_algebra(C).flat()
    return [tuple(v) for v in kernels.multiplicative_vectors(T, list(C.counit), C.dim, F.p)]


def _tensor_square(F, basis, n):
    return [[F(a[j] * b[l]) for j in range(n) for l in range(n)] for a in basis for b in basis]


def is_subcoalgebra(C: Coalgebra, basis) -> bool:
    """Whether ``Delta(D)`` lies in ``D (x) D`` for ``D = span(basis)``."""
    F, n = C.field, C.dim
    basis = [list(b) for b in basis]
    if not basis:
        return True
    R, piv = el.row_space(F, _tensor_square(F, basis, n), n * n)
    for w in basis:
        flat = [x for row in C.delta(w) for x in row]
        if not el.is_zero(el.reduce_mod(F, flat, R, piv)):
            return False
    return True


def _balanced_key(F, rows):
    return tuple(F.balanced(x) for row in rows for x in row)


@dataclass
class SupersolvableResult:
    coalgebra: Coalgebra
    chain: list | None        # RREF bases of C_1 < C_2 < ... < C_n
    convolution_is_coflag: bool

    @property
    def supersolvable(self) -> bool:
        return self.chain is not None


def _extensions(C: Coalgebra, current):
    """Subcoalgebras of one more dimension containing ``span(current)``, tie-broken."""
    F, n = C.field, C.dim
    seen = {}
    R, piv = el.row_space(F, current, n) if current else ([], [])
    free = [j for j in range(n) if j not in piv]
    for coeffs in itertools.product(F.elements(), repeat=len(free)):
        nz = next((c for c in coeffs if c), None)
        if nz != 1:       # projective representatives, leading coefficient 1
            continue
        v = [F.zero] * n
        for j, c in zip(free, coeffs):
            v[j] = c
        cand, _ = el.row_space(F, list(R) + [v], n)
        key = tuple(map(tuple, cand))
        if key in seen:
            continue
        if is_subcoalgebra(C, cand):
            seen[key] = cand
    return sorted(seen.values(), key=lambda rows: _balanced_key(F, rows))


def _grouplike_lines(C: Coalgebra):
    F = C.field
    gs = sorted(grouplikes(C), key=lambda g: tuple(F.balanced(x) for x in g))
    return [el.row_space(F, [g], C.dim)[0] for g in gs]


def supersolvable_chain(C: Coalgebra) -> SupersolvableResult:
    """Find a full flag of subcoalgebras, and cross-check against the convolution algebra."""
    from .coflag import is_coflag
    F, n = C.field, C.dim
    if not F.is_finite:
        raise FiniteFieldRequired("searching subcoalgebra chains")
    bad = validate_coalgebra(C)
    if bad:
        raise ValueError(f"not a coalgebra: {bad[0].axiom}{bad[0].witness}")

    def extend(chain):
        if len(chain) == n:
            return chain
        options = _grouplike_lines(C) if not chain else _extensions(C, chain[-1])
        for nxt in options:
            found = extend(chain + [nxt])
            if found is not None:
                return found
        return None

    chain = extend([])
    coflag = is_coflag(convolution_algebra(C))
    if coflag != (chain is not None):
        raise AssertionError("subcoalgebra chain and co-flag test of the dual disagree")
    return SupersolvableResult(C, chain, coflag)


def example_coalgebra(F: Field) -> Coalgebra:
    """Three-dimensional supersolvable coalgebra whose dual is ``x^2 = 1, xy = -yx = y``."""
    terms = {
        "f1": {("f1", "f1"): 1, ("f2", "f2"): 1},
        "f2": {("f1", "f2"): 1, ("f2", "f1"): 1},
        "f3": {("f1", "f3"): 1, ("f3", "f1"): 1, ("f2", "f3"): 1, ("f3", "f2"): -1},
    }
    return Coalgebra.from_terms(F, ("f1", "f2", "f3"), terms, {"f1": 1}, name="C_3")


__all__ = ["Coalgebra", "validate_coalgebra", "dualize_algebra", "convolution_algebra",
           "grouplikes", "is_subcoalgebra", "supersolvable_chain", "SupersolvableResult",
           "example_coalgebra"]

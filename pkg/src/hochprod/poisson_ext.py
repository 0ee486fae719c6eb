"""Non-commutative Poisson algebras and their one-dimensional extensions.

A Poisson algebra here is an associative unital algebra with a Lie bracket
satisfying ``[pq, r] = [p, r] q + p [q, r]``; commutativity is not required.
A Poisson co-flag datum ``(lam, Lam, theta, gamma, f)`` extends a first-kind
algebra datum by a bracket on ``P x k``::

    {(p, x), (q, y)} = ([p, q], f(p, q) + gamma(p) y - gamma(q) x)
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import exact_linear as el
from .algebra_core import (Algebra, AlgebraMorphism, BudgetExceeded, Violation, automorphisms_brute,
                           characters, identity_morphism, is_algebra_morphism, validate_algebra)
from .catalog import ground, upper_triangular
from .coflag import (AutGroup, CoflagDatum, IsoWitness, _compose_functional, _pullback_theta,
                     _witness_for_psi, aut_group, build_coflag_algebra, cf_from_hs, h2_pair,
                     theta_from_vector, validate_coflag)
from .exact_linear import Field, FiniteFieldRequired


def _bil(F, T, u, v, m):
    """Bilinear tensor ``T[i][j]`` (vectors of length ``m``) applied to ``u, v``."""
    out = [F.zero] * m
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if b:
                c = a * b
                for k, t in enumerate(T[i][j]):
                    if t:
                        out[k] += c * t
    return tuple(F(x) for x in out)


@dataclass(frozen=True, eq=False)
class PoissonAlgebra:
    algebra: Algebra
    bracket: tuple       # bracket[i][j] = coordinates of [e_i, e_j]

    def __post_init__(self):
        A = self.algebra
        F, n = A.field, A.dim
        br = tuple(tuple(tuple(F(x) for x in v) for v in row) for row in self.bracket)
        if len(br) != n or any(len(r) != n or any(len(v) != n for v in r) for r in br):
            raise ValueError(f"bracket must be {n} x {n} x {n}")
        object.__setattr__(self, "bracket", br)

    @classmethod
    def from_brackets(cls, A: Algebra, brackets: dict) -> PoissonAlgebra:
        """``brackets[(a, b)] = {label: coeff}``; the antisymmetric partner is added."""
        F, n = A.field, A.dim
        pos = {b: i for i, b in enumerate(A.basis)}
        br = [[[F.zero] * n for _ in range(n)] for _ in range(n)]
        for (a, b), terms in brackets.items():
            for lab, c in terms.items():
                br[pos[a]][pos[b]][pos[lab]] = F(br[pos[a]][pos[b]][pos[lab]] + c)
                br[pos[b]][pos[a]][pos[lab]] = F(br[pos[b]][pos[a]][pos[lab]] - c)
        return cls(A, br)

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def name(self) -> str:
        return self.algebra.name

    def br(self, u, v) -> tuple:
        return _bil(self.field, self.bracket, u, v, self.dim)

    def bracket_span(self) -> list:
        F = self.field
        vecs = [v for row in self.bracket for v in row if not el.is_zero(v)]
        return el.row_space(F, vecs, self.dim)[0] if vecs else []

    def is_perfect(self) -> bool:
        return len(self.bracket_span()) == self.dim


def validate_poisson(P: PoissonAlgebra) -> list[Violation]:
    A, F, n = P.algebra, P.field, P.dim
    out = list(validate_algebra(A))
    e = [A.e(i) for i in range(n)]
    for i in range(n):
        if not el.is_zero(P.bracket[i][i]):
            out.append(Violation("antisymmetry", (i, i)))
        for j in range(i + 1, n):
            if el.vadd(F, P.bracket[i][j], P.bracket[j][i]) != [F.zero] * n:
                out.append(Violation("antisymmetry", (i, j)))
    for i, j, k in itertools.product(range(n), repeat=3):
        jac = el.vadd(F, el.vadd(F, P.br(e[i], P.bracket[j][k]), P.br(e[j], P.bracket[k][i])),
                      P.br(e[k], P.bracket[i][j]))
        if not el.is_zero(jac):
            out.append(Violation("jacobi", (i, j, k)))
        lhs = P.br(A.mult[i][j], e[k])
        rhs = el.vadd(F, A.mul(P.bracket[i][k], e[j]), A.mul(e[i], P.bracket[j][k]))
        if list(lhs) != list(rhs):
            out.append(Violation("leibniz", (i, j, k)))
    return out


def commutator_poissonize(A: Algebra, u=1, name: str = "") -> PoissonAlgebra:
    """``[a, b] = u (ab - ba)``."""
    F, n = A.field, A.dim
    u = F(u)
    br = [[tuple(F(u * (x - y)) for x, y in zip(A.mult[i][j], A.mult[j][i])) for j in range(n)]
          for i in range(n)]
    B = A.renamed(name) if name else A
    return PoissonAlgebra(B, br)


def abelian(A: Algebra) -> PoissonAlgebra:
    return commutator_poissonize(A, 0)


def heisenberg_poisson(F: Field) -> PoissonAlgebra:
    """Upper triangular 2x2 matrices with the commutator bracket."""
    return commutator_poissonize(upper_triangular(2, F), 1, name="H(3)")


def poisson_direct_product(P: PoissonAlgebra) -> PoissonAlgebra:
    """``P x k`` with ``{(p, x), (q, y)} = ([p, q], 0)``."""
    A, F, n = P.algebra, P.field, P.dim
    mult = [[tuple(A.mult[i][j]) + (F.zero,) for j in range(n)] + [(F.zero,) * (n + 1)]
            for i in range(n)]
    mult.append([(F.zero,) * (n + 1)] * n + [(F.zero,) * n + (F.one,)])
    B = Algebra(F, mult, tuple(A.unit) + (F.one,), tuple(A.basis) + ("f",),
                name=f"{A.name or 'P'} x k")
    zero = (F.zero,) * (n + 1)
    br = [[tuple(P.bracket[i][j]) + (F.zero,) for j in range(n)] + [zero] for i in range(n)]
    br.append([zero] * (n + 1))
    return PoissonAlgebra(B, br)


def is_poisson_morphism(columns, P: PoissonAlgebra, Q: PoissonAlgebra) -> bool:
    if not is_algebra_morphism(columns, P.algebra, Q.algebra):
        return False
    phi = AlgebraMorphism(tuple(columns), P.algebra, Q.algebra)
    for i in range(P.dim):
        for j in range(P.dim):
            if phi(P.bracket[i][j]) != Q.br(columns[i], columns[j]):
                return False
    return True


# -- co-flag data ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PoissonCoflagDatum:
    lam: tuple
    Lam: tuple
    theta: tuple
    gamma: tuple
    f: tuple

    @classmethod
    def make(cls, F: Field, lam, Lam, theta, gamma, f) -> PoissonCoflagDatum:
        mat = lambda M: tuple(tuple(F(x) for x in row) for row in M)
        return cls(tuple(F(x) for x in lam), tuple(F(x) for x in Lam), mat(theta),
                   tuple(F(x) for x in gamma), mat(f))

    @property
    def algebra_datum(self) -> CoflagDatum:
        return CoflagDatum("first", self.lam, self.Lam, self.theta)

    def key(self) -> tuple:
        flat = lambda M: tuple(x for row in M for x in row)
        return self.lam + self.Lam + flat(self.theta) + self.gamma + flat(self.f)

    def __eq__(self, other):
        return isinstance(other, PoissonCoflagDatum) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"PoissonCoflagDatum(lam={self.lam}, Lam={self.Lam}, theta={self.theta}, "
                f"gamma={self.gamma}, f={self.f})")


def _form(F, M, u, v):
    return F(sum(u[i] * v[j] * M[i][j] for i in range(len(u)) if u[i]
                 for j in range(len(v)) if v[j]))


def validate_poisson_coflag(P: PoissonAlgebra, d: PoissonCoflagDatum) -> list[Violation]:
    A, F, n = P.algebra, P.field, P.dim
    if len(d.gamma) != n or len(d.f) != n or any(len(r) != n for r in d.f):
        raise ValueError("gamma/f have the wrong shape")
    out = [v._replace(axiom=f"CF1:{v.axiom}") for v in validate_coflag(A, d.algebra_datum)]
    if out:
        return out
    e = [A.e(i) for i in range(n)]
    lam, Lam, gam, th, f = d.lam, d.Lam, d.gamma, d.theta, d.f
    for i in range(n):
        for j in range(n):
            b = P.bracket[i][j]
            if el.dot(F, lam, b) or el.dot(F, Lam, b) or el.dot(F, gam, b):
                out.append(Violation("CF2", (i, j), "functional does not kill the bracket"))
        if f[i][i] != 0:
            out.append(Violation("CF2", (i,), "f(p, p) != 0"))
        for j in range(i + 1, n):
            if F(f[i][j] + f[j][i]) != 0:
                out.append(Violation("CF2", (i, j), "f not alternating"))
    for i, j, k in itertools.product(range(n), repeat=3):
        br = P.bracket
        cf3 = (_form(F, f, e[i], br[j][k]) + _form(F, f, e[j], br[k][i]) + _form(F, f, e[k], br[i][j])
               + gam[i] * f[j][k] + gam[j] * f[k][i] + gam[k] * f[i][j])
        if F(cf3) != 0:
            out.append(Violation("CF3", (i, j, k)))
        lhs = _form(F, f, A.mult[i][j], e[k]) - Lam[j] * f[i][k] - lam[i] * f[j][k]
        rhs = gam[k] * th[i][j] + _form(F, th, br[i][k], e[j]) + _form(F, th, e[i], br[j][k])
        if F(lhs - rhs) != 0:
            out.append(Violation("CF4", (i, j, k)))
    for i in range(n):
        for j in range(n):
            if F(el.dot(F, gam, A.mult[i][j]) - gam[i] * Lam[j] - lam[i] * gam[j]) != 0:
                out.append(Violation("CF5", (i, j)))
    return out


class InvalidPoissonDatum(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PoissonExtension:
    total: PoissonAlgebra
    base: PoissonAlgebra
    datum: PoissonCoflagDatum

    @property
    def projection(self) -> tuple:
        n, F = self.base.dim, self.base.field
        return tuple(self.base.algebra.e(i) for i in range(n)) + ((F.zero,) * n,)


def build_poisson_extension(P: PoissonAlgebra, d: PoissonCoflagDatum, name: str = "") -> PoissonExtension:
    bad = validate_poisson_coflag(P, d)
    if bad:
        raise InvalidPoissonDatum("invalid Poisson co-flag datum: "
                                  + "; ".join(f"{v.axiom}{v.witness}" for v in bad[:4]))
    F, n = P.field, P.dim
    alg = build_coflag_algebra(P.algebra, d.algebra_datum).total
    alg = alg.renamed(name or f"{P.name or 'P'}[ext]")
    zero = (F.zero,) * n
    br = [[tuple(P.bracket[i][j]) + (d.f[i][j],) for j in range(n)] + [zero + (d.gamma[i],)]
          for i in range(n)]
    br.append([zero + (F(-d.gamma[j]),) for j in range(n)] + [zero + (F.zero,)])
    Q = PoissonAlgebra(alg, br)
    bad = validate_poisson(Q)
    if bad:
        raise AssertionError(f"extension is not Poisson: {bad[0]}")
    ext = PoissonExtension(Q, P, d)
    if not is_poisson_morphism(ext.projection, Q, P):
        raise AssertionError("projection is not a Poisson morphism")
    return ext


def extract_poisson_datum(Q: PoissonAlgebra, P: PoissonAlgebra, pi, s, kernel_vector) -> PoissonCoflagDatum:
    """Read ``(lam, Lam, theta, gamma, f)`` off a Poisson surjection ``pi`` with unital section ``s``."""
    from .hochschild import extract_system
    F, n = P.field, P.dim
    system, _, kb = extract_system(Q.algebra, P.algebra, pi, s, [list(kernel_vector)])
    cd = cf_from_hs(system)
    if not cd.is_first:
        raise ValueError("kernel is not of null square; the extension is a direct product")
    cols = [list(c) for c in el.transpose(s)]

    def on_kernel(w):
        c = el.coordinates(F, w, [list(kernel_vector)])
        if c is None:
            raise ValueError("bracket correction leaves the kernel")
        return c[0]

    gamma = tuple(on_kernel(Q.br(cols[i], kernel_vector)) for i in range(n))
    f = []
    for i in range(n):
        row = []
        for j in range(n):
            lifted = el.mat_vec(F, s, P.bracket[i][j])
            row.append(on_kernel(el.vsub(F, Q.br(cols[i], cols[j]), lifted)))
        f.append(row)
    return PoissonCoflagDatum.make(F, cd.lam, cd.Lam, cd.theta, gamma, f)


# -- second kind ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PoissonTrivializer:
    columns: tuple
    source: PoissonAlgebra
    target: PoissonAlgebra


def second_kind_poisson(P: PoissonAlgebra, lam, u) -> PoissonAlgebra:
    """``P^(lam, u)``: second-kind algebra with bracket ``([p, q], -u^-1 lam([p, q]))``."""
    F, n = P.field, P.dim
    u = F(u)
    if u == 0:
        raise ValueError("u must be nonzero")
    lam = tuple(F(x) for x in lam)
    cd = CoflagDatum.second(F, lam, u)
    bad = validate_coflag(P.algebra, cd)
    if bad:
        raise ValueError(f"lam must be unital: {bad[0].axiom}")
    alg = build_coflag_algebra(P.algebra, cd).total
    ui = F.inv(u)
    zero = (F.zero,) * (n + 1)
    br = [[tuple(P.bracket[i][j]) + (F(-ui * el.dot(F, lam, P.bracket[i][j])),) for j in range(n)]
          + [zero] for i in range(n)]
    br.append([zero] * (n + 1))
    return PoissonAlgebra(alg, br)


def poisson_trivializer_second_kind(P: PoissonAlgebra, lam, u) -> PoissonTrivializer:
    """Verified Poisson isomorphism ``(p, x) -> (p, lam(p) + u x)`` onto ``P x k``."""
    F, n = P.field, P.dim
    src = second_kind_poisson(P, lam, u)
    bad = validate_poisson(src)
    if bad:
        raise ValueError(f"second-kind Poisson extension invalid: {bad[0]}")
    tgt = poisson_direct_product(P)
    u = F(u)
    cols = tuple(tuple(P.algebra.e(i)) + (F(lam[i]),) for i in range(n)) + ((F.zero,) * n + (u,),)
    if not is_poisson_morphism(cols, src, tgt):
        raise AssertionError("trivializer is not a Poisson morphism")
    phi = AlgebraMorphism(cols, src.algebra, tgt.algebra)
    if not phi.is_bijective():
        raise AssertionError("trivializer is not bijective")
    for i in range(n + 1):
        for j in range(n + 1):
            if phi(src.bracket[i][j])[n] != 0:
                raise AssertionError("bracket image has a kernel component")
    return PoissonTrivializer(cols, src, tgt)


# -- automorphisms and isomorphisms ----------------------------------------------------------

def preserves_bracket(P: PoissonAlgebra, psi: AlgebraMorphism) -> bool:
    return all(psi(P.bracket[i][j]) == P.br(psi.columns[i], psi.columns[j])
               for i in range(P.dim) for j in range(P.dim))


def poisson_autos_brute(P: PoissonAlgebra, cap: int = 10 ** 8) -> list[AlgebraMorphism]:
    return [psi for psi in automorphisms_brute(P.algebra, cap) if preserves_bracket(P, psi)]


DIRECT_PRODUCT = "direct-product"


def _bracket_rows(P, d, d2):
    """Rows of ``f s0 - gamma(p) r(q) + gamma(q) r(p) + r([p, q]) = f'(psi p, psi q)``."""
    F, n = P.field, P.dim

    def extra(psi):
        pulled = _pullback_theta(P.algebra, d2.f, psi)
        rows, rhs = [], []
        for i in range(n):
            for j in range(n):
                row = [F.zero] * (n + 1)
                row[0] = d.f[i][j]
                row[1 + j] = F(row[1 + j] - d.gamma[i])
                row[1 + i] = F(row[1 + i] + d.gamma[j])
                for k, c in enumerate(P.bracket[i][j]):
                    if c:
                        row[1 + k] = F(row[1 + k] + c)
                rows.append(row)
                rhs.append(pulled[i * n + j])
        return rows, rhs
    return extra


def verify_poisson_witness(P, d, d2, w: IsoWitness) -> bool:
    Q1 = build_poisson_extension(P, d).total
    Q2 = build_poisson_extension(P, d2).total
    cols = w.phi_columns(P.algebra)
    return (w.s0 != 0 and is_poisson_morphism(cols, Q1, Q2)
            and AlgebraMorphism(cols, Q1.algebra, Q2.algebra).is_bijective())


def find_poisson_iso(P: PoissonAlgebra, d, d2, autos) -> IsoWitness | None:
    """A Poisson isomorphism ``P_d -> P_d2`` as ``(s0, psi, r)``, or ``None``.

    ``autos`` must be the Poisson automorphisms of ``P``.  ``DIRECT_PRODUCT``
    stands for ``P x k``, which is never isomorphic to a first-kind extension.
    """
    if not autos:
        raise ValueError("automorphism list must contain at least the identity")
    F, A = P.field, P.algebra
    if d == DIRECT_PRODUCT or d2 == DIRECT_PRODUCT:
        if d == d2:
            return IsoWitness(F.one, identity_morphism(A), (F.zero,) * A.dim)
        return None
    if d == d2:
        return IsoWitness(F.one, identity_morphism(A), (F.zero,) * A.dim)
    a, a2 = d.algebra_datum, d2.algebra_datum
    extra = _bracket_rows(P, d, d2)
    for psi in autos:
        if (_compose_functional(F, d2.lam, psi) != d.lam or _compose_functional(F, d2.Lam, psi) != d.Lam
                or _compose_functional(F, d2.gamma, psi) != d.gamma):
            continue
        w = _witness_for_psi(A, a, a2, psi, extra)
        if w is not None:
            if not verify_poisson_witness(P, d, d2, w):
                raise AssertionError("linear solve produced a non-isomorphism")
            return w
    return None


# -- classification ---------------------------------------------------------------------

def _gamma_space(P, lam, Lam):
    """Affine description (particular, kernel) of gammas satisfying CF2/CF5 (linear, homogeneous)."""
    A, F, n = P.algebra, P.field, P.dim
    rows = []
    for i in range(n):
        for j in range(n):
            rows.append(list(P.bracket[i][j]))
            row = list(A.mult[i][j])
            row[j] = F(row[j] - lam[i])
            row[i] = F(row[i] - Lam[j])
            rows.append(row)
    return el.kernel(F, rows, n)


def _f_system(P, lam, Lam, theta, gamma):
    """Linear rows/rhs for ``f`` (flat, n*n unknowns) given the rest of the datum."""
    A, F, n = P.algebra, P.field, P.dim
    br = P.bracket
    rows, rhs = [], []
    for i in range(n):
        r = [F.zero] * (n * n)
        r[i * n + i] = F.one
        rows.append(r)
        rhs.append(F.zero)
        for j in range(i + 1, n):
            r = [F.zero] * (n * n)
            r[i * n + j] = F.one
            r[j * n + i] = F.one
            rows.append(r)
            rhs.append(F.zero)
    for i, j, k in itertools.product(range(n), repeat=3):
        r = [0] * (n * n)
        for t, c in enumerate(br[j][k]):
            r[i * n + t] += c
        for t, c in enumerate(br[k][i]):
            r[j * n + t] += c
        for t, c in enumerate(br[i][j]):
            r[k * n + t] += c
        r[j * n + k] += gamma[i]
        r[k * n + i] += gamma[j]
        r[i * n + j] += gamma[k]
        rows.append([F(x) for x in r])
        rhs.append(F.zero)
        r = [0] * (n * n)
        for t, c in enumerate(A.mult[i][j]):
            r[t * n + k] += c
        r[i * n + k] -= Lam[j]
        r[j * n + k] -= lam[i]
        rows.append([F(x) for x in r])
        val = gamma[k] * theta[i][j] + _form(F, theta, br[i][k], A.e(j)) + _form(F, theta, A.e(i), br[j][k])
        rhs.append(F(val))
    return rows, rhs


def enumerate_poisson_data(P: PoissonAlgebra, budget: int = 10 ** 6) -> list[PoissonCoflagDatum]:
    """Every datum with ``theta`` a cohomology representative (F_p only)."""
    A, F, n = P.algebra, P.field, P.dim
    if not F.is_finite:
        raise FiniteFieldRequired("enumerating Poisson co-flag data")
    killers = [c for c in characters(A)
               if all(el.dot(F, c, P.bracket[i][j]) == 0 for i in range(n) for j in range(n))]
    out = []
    for lam in killers:
        for Lam in killers:
            block = h2_pair(A, lam, Lam)
            gk = _gamma_space(P, lam, Lam)
            gammas = list(el.span_vectors(F, gk, n)) if gk else [[F.zero] * n]
            for tv in block.representatives:
                theta = theta_from_vector(tv, n)
                for gamma in gammas:
                    rows, rhs = _f_system(P, lam, Lam, theta, gamma)
                    sol = el.solve_affine(F, rows, rhs, n * n)
                    if sol is None:
                        continue
                    x, kern = sol
                    if F.p ** len(kern) + len(out) > budget:
                        raise BudgetExceeded("Poisson datum space exceeds the budget")
                    for fv in el.span_vectors(F, kern, n * n) if kern else [[F.zero] * (n * n)]:
                        fvec = el.vadd(F, x, fv)
                        out.append(PoissonCoflagDatum.make(F, lam, Lam, theta, gamma,
                                                           theta_from_vector(fvec, n)))
    return out


@dataclass
class PoissonClassification:
    poisson: PoissonAlgebra
    classes: list          # PoissonCoflagDatum heads, DIRECT_PRODUCT last
    orbit_sizes: list
    shortcut: str | None   # reason when the single-class shortcut applied
    data_count: int

    @property
    def class_count(self) -> int:
        return len(self.classes)


def classify_poisson_ext(P: PoissonAlgebra, autos=None, budget: int = 10 ** 6) -> PoissonClassification:
    A, F = P.algebra, P.field
    if not F.is_finite:
        raise FiniteFieldRequired("Poisson classification")
    chars = characters(A)
    if not chars:
        return PoissonClassification(P, [DIRECT_PRODUCT], [1], "no algebra map to k", 0)
    if P.is_perfect():
        return PoissonClassification(P, [DIRECT_PRODUCT], [1], "perfect as a Lie algebra", 0)
    data = enumerate_poisson_data(P, budget)
    if autos is None:
        autos = poisson_autos_brute(P) if data else [identity_morphism(A)]
    heads, sizes = [], []
    for d in sorted(data, key=lambda d: d.key()):
        for idx, h in enumerate(heads):
            if find_poisson_iso(P, d, h, autos) is not None:
                sizes[idx] += 1
                break
        else:
            heads.append(d)
            sizes.append(1)
    return PoissonClassification(P, heads + [DIRECT_PRODUCT], sizes + [1], None, len(data))


@dataclass
class PoissonAutGroup:
    group: AutGroup
    bracket_preserved: bool

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def elements(self):
        return self.group.elements


def poisson_aut_group(P: PoissonAlgebra, d: PoissonCoflagDatum, autos=None) -> PoissonAutGroup:
    F, n = P.field, P.dim
    if autos is None:
        autos = poisson_autos_brute(P)
    autos = [psi for psi in autos if _compose_functional(F, d.gamma, psi) == d.gamma]

    def extra(psi, s0):
        pulled = _pullback_theta(P.algebra, d.f, psi)
        rows, rhs = [], []
        for i in range(n):
            for j in range(n):
                row = [F.zero] * n
                row[j] = F(row[j] - d.gamma[i])
                row[i] = F(row[i] + d.gamma[j])
                for k, c in enumerate(P.bracket[i][j]):
                    if c:
                        row[k] = F(row[k] + c)
                rows.append(row)
                rhs.append(F(pulled[i * n + j] - s0 * d.f[i][j]))
        return rows, rhs

    G = aut_group(P.algebra, d.algebra_datum, autos, extra=extra)
    Q = build_poisson_extension(P, d).total
    ok = all(is_poisson_morphism(IsoWitness(g.s0, g.psi, g.r).phi_columns(P.algebra), Q, Q)
             for g in G.elements)
    return PoissonAutGroup(G, ok)


# -- the worked tables ------------------------------------------------------------------------

_T2_PRODUCTS = {("e11", "e11"): {"e11": 1}, ("e11", "e12"): {"e12": 1},
                ("e12", "e22"): {"e12": 1}, ("e22", "e22"): {"e22": 1}}
_H3_BRACKETS = {("e11", "e12"): {"e12": 1}, ("e12", "e22"): {"e12": 1}}


def example_table(which: str, F: Field, param=0) -> PoissonAlgebra:
    """The four-dimensional Poisson algebras over ``H(3)`` exactly as tabulated.

    ``which`` is one of P1, P2, P3, P4 (parameter omega), P5 (parameter tau), HxK.
    """
    which = which.upper()
    if which == "HXK":
        return poisson_direct_product(heisenberg_poisson(F))
    t = F(param)
    extra_prod = {
        "P1": {("e11", "f"): {"f": 1}, ("f", "e11"): {"f": 1}},
        "P2": {("e22", "f"): {"f": 1}, ("f", "e22"): {"f": 1}},
        "P3": {("e11", "e12"): {"e12": 1, "f": -1}, ("e12", "e11"): {"f": 1},
               ("e12", "e22"): {"e12": 1, "f": -1}, ("e22", "e12"): {"f": 1},
               ("e11", "f"): {"f": 1}, ("f", "e22"): {"f": 1}},
        "P4": {("e11", "f"): {"f": 1}, ("f", "e22"): {"f": 1}},
        "P5": {("e22", "f"): {"f": 1}, ("f", "e11"): {"f": 1}},
    }
    extra_br = {
        "P1": {}, "P2": {},
        "P3": {("e11", "f"): {"f": 1}, ("e22", "f"): {"f": -1}},
        "P4": {("e11", "f"): {"f": t}, ("e22", "f"): {"f": -t}},
        "P5": {("e11", "f"): {"f": t}, ("e22", "f"): {"f": -t}},
    }
    if which not in extra_prod:
        raise ValueError("which must be one of P1..P5 or HxK")
    prods = dict(_T2_PRODUCTS)
    prods.update(extra_prod[which])
    label = which + (f"^{param}" if which in ("P4", "P5") else "")
    A = Algebra.from_products(F, ["e11", "e12", "e22", "f"], prods, {"e11": 1, "e22": 1}, name=label)
    return PoissonAlgebra.from_brackets(A, {**_H3_BRACKETS, **extra_br[which]})


def example_datum(which: str, F: Field, param=0) -> PoissonCoflagDatum:
    """Datum over ``H(3)`` whose extension should reproduce ``example_table(which)``."""
    which = which.upper()
    z3 = [[0] * 3 for _ in range(3)]
    c1, c2 = (1, 0, 0), (0, 0, 1)
    t = F(param)
    if which == "P1":
        return PoissonCoflagDatum.make(F, c1, c1, z3, (0, 0, 0), z3)
    if which == "P2":
        return PoissonCoflagDatum.make(F, c2, c2, z3, (0, 0, 0), z3)
    if which == "P3":
        theta = [[0, -1, 0], [1, 0, -1], [0, 1, 0]]
        return PoissonCoflagDatum.make(F, c1, c2, theta, (1, 0, -1), z3)
    if which == "P4":
        return PoissonCoflagDatum.make(F, c1, c2, z3, (t, 0, -t), z3)
    if which == "P5":
        return PoissonCoflagDatum.make(F, c2, c1, z3, (t, 0, -t), z3)
    raise ValueError("which must be one of P1..P5")


__all__ = ["PoissonAlgebra", "validate_poisson", "commutator_poissonize", "heisenberg_poisson",
           "poisson_direct_product", "PoissonCoflagDatum", "validate_poisson_coflag",
           "build_poisson_extension", "extract_poisson_datum", "poisson_trivializer_second_kind",
           "poisson_autos_brute", "find_poisson_iso", "classify_poisson_ext", "poisson_aut_group",
           "example_table", "example_datum", "DIRECT_PRODUCT", "is_poisson_morphism"]

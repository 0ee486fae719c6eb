"""Extensions of an algebra by a one-dimensional kernel.

A first-kind datum ``(lam, Lam, theta)`` consists of two characters and a
normalized ``(lam, Lam)``-cocycle; it defines the algebra on ``A x k``::

    (a, x)(b, y) = (ab, theta(a, b) + lam(a) y + Lam(b) x)

A second-kind datum ``(lam, u)`` uses a unital functional and a nonzero
scalar; its algebra is always isomorphic to ``A x k``.  This module computes
the cohomology blocks, the isomorphism classes (``hoc``), automorphism
groups, towers and the low-dimensional classification.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from . import exact_linear as el
from .algebra_core import (Algebra, AlgebraMorphism, BudgetExceeded, Violation, automorphisms_brute,
                           characters, close_group, direct_product, find_isomorphism,
                           identity_morphism, is_algebra_morphism, is_character,
                           proper_two_sided_ideals, quotient)
from .catalog import generic_lambda0, ground
from .exact_linear import Field, FiniteFieldRequired
from .hochschild import ExtensionAlgebra, HochschildData, HochschildSystem, build_product


@dataclass(frozen=True, eq=False)
class CoflagDatum:
    kind: str                  # "first" or "second"
    lam: tuple
    Lam: tuple | None = None
    theta: tuple | None = None  # theta[i][j]
    u: object = None

    @classmethod
    def first(cls, F: Field, lam, Lam, theta) -> CoflagDatum:
        return cls("first", tuple(F(x) for x in lam), tuple(F(x) for x in Lam),
                   tuple(tuple(F(x) for x in row) for row in theta))

    @classmethod
    def second(cls, F: Field, lam, u) -> CoflagDatum:
        return cls("second", tuple(F(x) for x in lam), u=F(u))

    @property
    def is_first(self) -> bool:
        return self.kind == "first"

    def theta_vector(self) -> tuple:
        return tuple(x for row in self.theta for x in row)

    def key(self) -> tuple:
        if self.is_first:
            return (0,) + self.lam + self.Lam + self.theta_vector()
        return (1,) + self.lam + (self.u,)

    def __eq__(self, other):
        return isinstance(other, CoflagDatum) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.is_first:
            return f"CoflagDatum(first, lam={self.lam}, Lam={self.Lam}, theta={self.theta})"
        return f"CoflagDatum(second, lam={self.lam}, u={self.u})"


def theta_from_vector(v, n) -> tuple:
    return tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n))


def _bilinear(F, theta, a, b):
    return F(sum(a[i] * b[j] * theta[i][j] for i in range(len(a)) if a[i]
                 for j in range(len(b)) if b[j]))


def second_kind_theta(A: Algebra, lam, u) -> tuple:
    """``theta(a, b) = u^-1 (lam(a) lam(b) - lam(ab))``."""
    F, n = A.field, A.dim
    ui = F.inv(u)
    return tuple(tuple(F(ui * (lam[i] * lam[j] - el.dot(F, lam, A.mult[i][j])))
                       for j in range(n)) for i in range(n))


def validate_coflag(A: Algebra, d: CoflagDatum) -> list[Violation]:
    F, n = A.field, A.dim
    if len(d.lam) != n:
        raise ValueError("lam has the wrong length")
    out = []
    if d.kind == "second":
        if el.dot(F, d.lam, A.unit) != 1:
            out.append(Violation("unital", (), "lam(1) != 1"))
        if d.u is None or F(d.u) == 0:
            out.append(Violation("u-nonzero", (), "second-kind datum needs u != 0"))
        return out
    if d.kind != "first":
        raise ValueError(f"unknown datum kind {d.kind!r}")
    if len(d.Lam) != n or len(d.theta) != n or any(len(r) != n for r in d.theta):
        raise ValueError("Lam/theta have the wrong shape")
    for name, chi in (("lam", d.lam), ("Lam", d.Lam)):
        if not is_character(A, chi):
            out.append(Violation("character", (name,), f"{name} is not an algebra map"))
    th = d.theta
    for i in range(n):
        ei = A.e(i)
        if _bilinear(F, th, ei, A.unit) != 0 or _bilinear(F, th, A.unit, ei) != 0:
            out.append(Violation("normalized", (i,), "theta(a,1) or theta(1,a) nonzero"))
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = _bilinear(F, th, A.e(i), A.mult[j][k]) - _bilinear(F, th, A.mult[i][j], A.e(k))
        rhs = th[i][j] * d.Lam[k] - th[j][k] * d.lam[i]
        if F(lhs - rhs) != 0:
            out.append(Violation("cocycle", (i, j, k)))
    return out


class InvalidDatum(ValueError):
    pass


def _require_valid(A, d, index=None):
    bad = validate_coflag(A, d)
    if bad:
        where = f" at step {index}" if index is not None else ""
        raise InvalidDatum(f"invalid co-flag datum{where}: "
                           + "; ".join(f"{v.axiom}{v.witness}" for v in bad[:4]))


# -- Hochschild correspondence ----------------------------------------------------

def hs_from_cf(A: Algebra, d: CoflagDatum) -> HochschildSystem:
    F, n = A.field, A.dim
    if d.is_first:
        Lam, theta, u = d.Lam, d.theta, F.zero
    else:
        Lam, theta, u = d.lam, second_kind_theta(A, d.lam, d.u), F(d.u)
    left = [[(d.lam[a],)] for a in range(n)]
    right = [[(Lam[a],) for a in range(n)]]
    coc = [[(theta[a][b],) for b in range(n)] for a in range(n)]
    return HochschildSystem(A, 1, left, right, coc, [[(u,)]])


def cf_from_hs(s: HochschildData) -> CoflagDatum:
    if s.vdim != 1:
        raise ValueError("co-flag data need a one-dimensional kernel")
    A, F, n = s.algebra, s.field, s.algebra.dim
    u = s.vmult[0][0][0]
    lam = tuple(s.act_left[a][0][0] for a in range(n))
    Lam = tuple(s.act_right[0][a][0] for a in range(n))
    theta = tuple(tuple(s.cocycle[a][b][0] for b in range(n)) for a in range(n))
    if u == 0:
        d = CoflagDatum.first(F, lam, Lam, theta)
        assert not validate_coflag(A, d), "u = 0 system must give a first-kind datum"
        return d
    assert Lam == lam, "u != 0 forces equal left and right functionals"
    assert theta == second_kind_theta(A, lam, u), "cocycle must be implemented by (lam, u)"
    return CoflagDatum.second(F, lam, u)


def coflag_table(A: Algebra, d: CoflagDatum):
    """Structure constants of the extension, written directly from the datum."""
    F, n = A.field, A.dim
    if d.is_first:
        Lam, theta, u = d.Lam, d.theta, F.zero
    else:
        Lam, theta, u = d.lam, second_kind_theta(A, d.lam, d.u), F(d.u)
    mult = [[None] * (n + 1) for _ in range(n + 1)]
    zero = (F.zero,) * n
    for i in range(n):
        for j in range(n):
            mult[i][j] = tuple(A.mult[i][j]) + (theta[i][j],)
        mult[i][n] = zero + (d.lam[i],)
        mult[n][i] = zero + (Lam[i],)
    mult[n][n] = zero + (u,)
    return mult


def build_coflag_algebra(A: Algebra, d: CoflagDatum, name: str = "") -> ExtensionAlgebra:
    _require_valid(A, d)
    mult = coflag_table(A, d)
    total = Algebra(A.field, mult, tuple(A.unit) + (A.field.zero,), tuple(A.basis) + ("f",),
                    name=name or f"{A.name or 'A'}[{d.kind}]")
    via_product = build_product(hs_from_cf(A, d)).total
    if not via_product.same_table(total):
        raise AssertionError("direct formula disagrees with the Hochschild product")
    return ExtensionAlgebra(total, A, 1, hs_from_cf(A, d))


@dataclass(frozen=True, eq=False)
class Trivializer:
    columns: tuple            # phi(a, x) = (a, lam(a) + u x)
    inverse_columns: tuple    # phi^-1(a, x) = (a, u^-1 (x - lam(a)))
    source: Algebra
    target: Algebra
    stabilizes_kernel: bool


def trivializer_second_kind(A: Algebra, d: CoflagDatum) -> Trivializer:
    """Verified isomorphism from the second-kind extension onto ``A x k``."""
    if d.is_first:
        raise ValueError("trivializer needs a second-kind datum")
    _require_valid(A, d)
    F, n = A.field, A.dim
    u = F(d.u)
    src = build_coflag_algebra(A, d).total
    tgt = direct_product(A, ground(F), name=f"{A.name or 'A'} x k")
    cols = [tuple(A.e(i)) + (d.lam[i],) for i in range(n)] + [(F.zero,) * n + (u,)]
    ui = F.inv(u)
    inv = [tuple(A.e(i)) + (F(-ui * d.lam[i]),) for i in range(n)] + [(F.zero,) * n + (ui,)]
    if not is_algebra_morphism(cols, src, tgt):
        raise AssertionError("(a, x) -> (a, lam(a) + u x) is not an algebra map")
    if not is_algebra_morphism(inv, tgt, src):
        raise AssertionError("inverse formula is not an algebra map")
    comp = AlgebraMorphism(tuple(inv), tgt, src).compose(AlgebraMorphism(tuple(cols), src, tgt))
    if comp.columns != tuple(src.e(i) for i in range(n + 1)):
        raise AssertionError("inverse formula does not invert")
    return Trivializer(tuple(cols), tuple(inv), src, tgt, stabilizes_kernel=(u == 1))


# -- cohomology blocks -----------------------------------------------------------------

def cocycle_equations(A: Algebra, lam, Lam) -> list:
    """Rows of the linear system cutting out normalized ``(lam, Lam)``-cocycles."""
    F, n = A.field, A.dim
    rows = []
    for i in range(n):
        r1 = [F.zero] * (n * n)
        r2 = [F.zero] * (n * n)
        for j in range(n):
            r1[i * n + j] = A.unit[j]
            r2[j * n + i] = A.unit[j]
        rows += [r1, r2]
    for i, j, k in itertools.product(range(n), repeat=3):
        row = [0] * (n * n)
        for t, c in enumerate(A.mult[j][k]):        # theta(e_i, e_j e_k)
            if c:
                row[i * n + t] += c
        for t, c in enumerate(A.mult[i][j]):        # - theta(e_i e_j, e_k)
            if c:
                row[t * n + k] -= c
        row[i * n + j] -= Lam[k]
        row[j * n + k] += lam[i]
        rows.append([F(x) for x in row])
    return rows


def coboundary(A: Algebra, lam, Lam, t) -> tuple:
    """``(a, b) -> -t(ab) + lam(a) t(b) + Lam(b) t(a)`` as a flat n*n vector."""
    F, n = A.field, A.dim
    return tuple(F(-el.dot(F, A.mult[i][j], t) + lam[i] * t[j] + Lam[j] * t[i])
                 for i in range(n) for j in range(n))


@dataclass
class H2Block:
    lam: tuple
    Lam: tuple
    z_basis: list
    b_basis: list
    dim_z: int
    dim_b: int
    representatives: list | None   # flat theta vectors (F_p only)

    @property
    def dim_h(self) -> int:
        return self.dim_z - self.dim_b

    def class_count(self, p: int) -> int:
        return p ** self.dim_h


def h2_pair(A: Algebra, lam, Lam) -> H2Block:
    F, n = A.field, A.dim
    lam = tuple(F(x) for x in lam)
    Lam = tuple(F(x) for x in Lam)
    if not is_character(A, lam) or not is_character(A, Lam):
        raise ValueError("h2_pair needs two characters")
    z_basis = el.kernel(F, cocycle_equations(A, lam, Lam), n * n)
    dim_z = len(z_basis)
    t_space = el.kernel(F, [list(A.unit)], n)
    images = [coboundary(A, lam, Lam, t) for t in t_space]
    B, _ = el.row_space(F, images, n * n)
    for v in B:
        assert el.in_span(F, v, z_basis) if z_basis else el.is_zero(v), "coboundary outside Z^2"
    reps = el.coset_representatives(z_basis, B, F) if F.is_finite else None
    if reps is not None and not z_basis:
        reps = [[F.zero] * (n * n)]
    return H2Block(lam, Lam, z_basis, [list(b) for b in B], dim_z, len(B), reps)


@dataclass
class GH2Report:
    algebra: Algebra
    blocks: list
    lambda0: tuple
    units: list | None

    @property
    def first_kind_classes(self) -> int | None:
        if not self.algebra.field.is_finite:
            return None
        return sum(b.class_count(self.algebra.field.p) for b in self.blocks)

    @property
    def total_classes(self) -> int | None:
        if not self.algebra.field.is_finite:
            return None
        return self.first_kind_classes + self.algebra.field.p - 1


def lambda0_of(A: Algebra) -> tuple:
    return A.lambda0 if A.lambda0 is not None else generic_lambda0(A)


def gh2_coflag(A: Algebra) -> GH2Report:
    chars = characters(A)
    blocks = [h2_pair(A, lam, Lam) for lam in chars for Lam in chars]
    units = A.field.units() if A.field.is_finite else None
    return GH2Report(A, blocks, lambda0_of(A), units)


def first_kind_representatives(report: GH2Report) -> list[CoflagDatum]:
    F, n = report.algebra.field, report.algebra.dim
    if not F.is_finite:
        raise FiniteFieldRequired("listing cohomology class representatives")
    return [CoflagDatum.first(F, b.lam, b.Lam, theta_from_vector(v, n))
            for b in report.blocks for v in b.representatives]


# -- isomorphisms between first-kind extensions -----------------------------------------------

@dataclass(frozen=True, eq=False)
class IsoWitness:
    s0: object
    psi: AlgebraMorphism
    r: tuple

    def phi_columns(self, A: Algebra) -> tuple:
        """``phi(a, x) = (psi(a), r(a) + x s0)`` on ``A x k``."""
        F, n = A.field, A.dim
        cols = [tuple(self.psi.columns[i]) + (self.r[i],) for i in range(n)]
        cols.append((F.zero,) * n + (F(self.s0),))
        return tuple(cols)

    def inverse(self, A: Algebra) -> IsoWitness:
        F = A.field
        psi_inv = self.psi.inverse()
        s_inv = F.inv(self.s0)
        r = tuple(F(-s_inv * el.dot(F, self.r, psi_inv.columns[i])) for i in range(A.dim))
        return IsoWitness(s_inv, psi_inv, r)

    def as_json(self, F: Field) -> dict:
        return {"s0": F.scalar_to_json(self.s0),
                "psi": [[F.scalar_to_json(x) for x in c] for c in self.psi.columns],
                "r": [F.scalar_to_json(x) for x in self.r]}


def _compose_functional(F, chi, psi: AlgebraMorphism) -> tuple:
    return tuple(el.dot(F, chi, c) for c in psi.columns)


def _pullback_theta(A, theta, psi: AlgebraMorphism) -> tuple:
    """Flat vector of ``theta(psi(e_i), psi(e_j))``."""
    F, n = A.field, A.dim
    return tuple(_bilinear(F, theta, psi.columns[i], psi.columns[j])
                 for i in range(n) for j in range(n))


def _witness_for_psi(A, d, d2, psi, extra=None):
    """Solve ``theta s0 = theta'(psi, psi) + lam r + Lam r - r(ab)`` for ``(s0, r)``, s0 != 0."""
    F, n = A.field, A.dim
    rows, rhs = [], []
    pulled = _pullback_theta(A, d2.theta, psi)
    for i in range(n):
        for j in range(n):
            row = [F.zero] * (n + 1)
            row[0] = d.theta[i][j]
            row[1 + j] = F(row[1 + j] - d.lam[i])
            row[1 + i] = F(row[1 + i] - d.Lam[j])
            for k, c in enumerate(A.mult[i][j]):
                if c:
                    row[1 + k] = F(row[1 + k] + c)
            rows.append(row)
            rhs.append(pulled[i * n + j])
    if extra is not None:
        more_rows, more_rhs = extra(psi)
        rows += more_rows
        rhs += more_rhs
    sol = el.solve_affine(F, rows, rhs, n + 1)
    if sol is None:
        return None
    x, kern = sol
    if x[0] == 0:
        k = next((v for v in kern if v[0] != 0), None)
        if k is None:
            return None
        x = el.vadd(F, x, el.vscale(F, F.inv(k[0]), k))
    return IsoWitness(x[0], psi, tuple(x[1:]))


def verify_witness(A: Algebra, d: CoflagDatum, d2: CoflagDatum, w: IsoWitness) -> bool:
    E1 = build_coflag_algebra(A, d).total
    E2 = build_coflag_algebra(A, d2).total
    cols = w.phi_columns(A)
    return (w.s0 != 0 and is_algebra_morphism(cols, E1, E2)
            and AlgebraMorphism(cols, E1, E2).is_bijective())


def find_iso_first_kind(A: Algebra, d: CoflagDatum, d2: CoflagDatum, autos) -> IsoWitness | None:
    """An isomorphism ``A_d -> A_d2`` of the form ``(psi(a), r(a) + x s0)``, or ``None``.

    Exhaustive over ``autos``; each candidate ``psi`` costs one linear solve.
    """
    if not autos:
        raise ValueError("automorphism list must contain at least the identity")
    if not d.is_first or not d2.is_first:
        raise ValueError("find_iso_first_kind compares first-kind data")
    F = A.field
    if d == d2:
        return IsoWitness(F.one, identity_morphism(A), (F.zero,) * A.dim)
    for psi in autos:
        if _compose_functional(F, d2.lam, psi) != d.lam or _compose_functional(F, d2.Lam, psi) != d.Lam:
            continue
        w = _witness_for_psi(A, d, d2, psi)
        if w is not None:
            if not verify_witness(A, d, d2, w):
                raise AssertionError("linear solve produced a non-isomorphism")
            return w
    return None


def resolve_autos(A: Algebra, autos=None, cap: int = 10 ** 8) -> list:
    if autos is not None:
        return list(autos)
    if A.field.is_finite:
        return automorphisms_brute(A, cap)
    if A.aut_generators:
        gens = [AlgebraMorphism(c, A, A) for c in A.aut_generators]
        return close_group(gens)
    raise FiniteFieldRequired("automorphisms without registered generators")


# -- HOC ------------------------------------------------------------------------------

@dataclass
class Orbit:
    head: CoflagDatum
    members: list
    witnesses: list           # witness from each member to the head

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class HOCReport:
    algebra: Algebra
    orbits: list
    gh2: GH2Report
    extras: dict = dc_field(default_factory=dict)

    @property
    def class_count(self) -> int:
        return len(self.orbits) + 1      # plus the direct product A x k

    def representatives(self) -> list:
        """Extension algebras: first-kind orbit heads, then ``A x k``."""
        A = self.algebra
        out = [build_coflag_algebra(A, o.head, name=f"{A.name or 'A'}_{i + 1}").total
               for i, o in enumerate(self.orbits)]
        out.append(direct_product(A, ground(A.field), name=f"{A.name or 'A'} x k"))
        return out


def _normal_form(A, blocks_by_key, lam, Lam, theta_vec):
    F = A.field
    R, piv = blocks_by_key[(lam, Lam)]
    return (lam, Lam, tuple(el.reduce_mod(F, theta_vec, R, piv)))


def hoc(A: Algebra, autos=None, with_witnesses: bool = True) -> HOCReport:
    """Isomorphism classes of all one-dimensional-kernel extensions of ``A``."""
    F, n = A.field, A.dim
    if not F.is_finite:
        raise FiniteFieldRequired("HOC enumeration")
    report = gh2_coflag(A)
    reps = first_kind_representatives(report)
    autos = resolve_autos(A, autos) if reps else [identity_morphism(A)]
    blocks_by_key = {}
    for b in report.blocks:
        blocks_by_key[(b.lam, b.Lam)] = el.row_space(F, b.b_basis, n * n) if b.b_basis else ([], [])
    index = {}
    for i, d in enumerate(reps):
        index[_normal_form(A, blocks_by_key, d.lam, d.Lam, d.theta_vector())] = i
    parent = list(range(len(reps)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, d in enumerate(reps):
        for psi in autos:
            lam = _compose_functional(F, d.lam, psi)
            Lam = _compose_functional(F, d.Lam, psi)
            pulled = _pullback_theta(A, d.theta, psi)
            for s0 in F.units():
                v = el.vscale(F, F.inv(s0), pulled)
                j = index[_normal_form(A, blocks_by_key, lam, Lam, v)]
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups = {}
    for i in range(len(reps)):
        groups.setdefault(find(i), []).append(i)
    orbits = []
    for members in groups.values():
        ds = sorted((reps[i] for i in members), key=lambda d: d.key())
        head = ds[0]
        wits = []
        if with_witnesses:
            for d in ds:
                w = find_iso_first_kind(A, d, head, autos)
                if w is None:
                    raise AssertionError("orbit member without isomorphism witness")
                wits.append(w)
        orbits.append(Orbit(head, ds, wits))
    orbits.sort(key=lambda o: o.head.key())
    return HOCReport(A, orbits, report, {"automorphisms": len(autos)})


# -- automorphism groups -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroupElement:
    s0: object
    psi: AlgebraMorphism
    r: tuple

    def key(self) -> tuple:
        return (self.s0, self.psi.columns, self.r)


def group_multiply(F, g: GroupElement, h: GroupElement) -> GroupElement:
    """``(s0, psi, r)(s0', psi', r') = (s0 s0', psi psi', r o psi' + s0 r')``."""
    r = tuple(F(el.dot(F, g.r, h.psi.columns[i]) + g.s0 * h.r[i]) for i in range(len(g.r)))
    return GroupElement(F(g.s0 * h.s0), g.psi.compose(h.psi), r)


def group_inverse(F, g: GroupElement) -> GroupElement:
    psi_inv = g.psi.inverse()
    s_inv = F.inv(g.s0)
    r = tuple(F(-s_inv * el.dot(F, g.r, psi_inv.columns[i])) for i in range(len(g.r)))
    return GroupElement(s_inv, psi_inv, r)


def semidirect_embed(F, g: GroupElement) -> tuple:
    """``(s0, psi, r) -> (s0^-1 r, (s0, psi))``."""
    s_inv = F.inv(g.s0)
    return (tuple(F(s_inv * x) for x in g.r), g.s0, g.psi.columns)


def semidirect_multiply(F, x, y) -> tuple:
    """Product in ``A^* x| (k^* x Aut A)`` with ``(s0, psi)`` acting by ``a -> s0^-1 a o psi``."""
    a, s, psi = x
    b, t, chi = y
    chi_m = [list(c) for c in chi]
    t_inv = F.inv(t)
    moved = tuple(F(t_inv * el.dot(F, a, chi_m[i])) for i in range(len(a)))
    psi_chi = tuple(tuple(el.lincomb(F, c, psi, len(psi))) for c in chi)
    return (tuple(F(u + v) for u, v in zip(moved, b)), F(s * t), psi_chi)


@dataclass
class AutGroup:
    algebra: Algebra
    datum: CoflagDatum
    elements: list
    checks: dict

    @property
    def order(self) -> int:
        return len(self.elements)


def aut_group(A: Algebra, d: CoflagDatum, autos=None, extra=None, verify: bool = True,
              budget: int = 10 ** 6) -> AutGroup:
    """All ``(s0, psi, r)`` giving automorphisms of ``A_d``, with the group law checked."""
    F, n = A.field, A.dim
    if not F.is_finite:
        raise FiniteFieldRequired("materializing the automorphism group")
    if not d.is_first:
        raise ValueError("aut_group takes a first-kind datum")
    autos = resolve_autos(A, autos)
    elements = []
    for psi in autos:
        if _compose_functional(F, d.lam, psi) != d.lam or _compose_functional(F, d.Lam, psi) != d.Lam:
            continue
        for s0 in F.units():
            # fix s0: solve for r alone
            rows, rhs = [], []
            pulled = _pullback_theta(A, d.theta, psi)
            for i in range(n):
                for j in range(n):
                    row = [F.zero] * n
                    row[j] = F(row[j] - d.lam[i])
                    row[i] = F(row[i] - d.Lam[j])
                    for k, c in enumerate(A.mult[i][j]):
                        if c:
                            row[k] = F(row[k] + c)
                    rows.append(row)
                    rhs.append(F(pulled[i * n + j] - s0 * d.theta[i][j]))
            if extra is not None:
                more_rows, more_rhs = extra(psi, s0)
                rows += more_rows
                rhs += more_rhs
            sol = el.solve_affine(F, rows, rhs, n)
            if sol is None:
                continue
            x, kern = sol
            if F.p ** len(kern) * max(1, len(elements)) > budget * 10:
                raise BudgetExceeded("automorphism group too large to materialize")
            for coeffs in itertools.product(F.elements(), repeat=len(kern)):
                r = el.vadd(F, x, el.lincomb(F, coeffs, kern, n)) if kern else x
                elements.append(GroupElement(s0, psi, tuple(r)))
    elements.sort(key=lambda g: g.key())
    checks = verify_aut_group(A, d, elements) if verify else {}
    return AutGroup(A, d, elements, checks)


def verify_aut_group(A: Algebra, d: CoflagDatum, elements) -> dict:
    F, n = A.field, A.dim
    E = build_coflag_algebra(A, d).total
    keys = {g.key(): g for g in elements}
    ident = GroupElement(F.one, identity_morphism(A), (F.zero,) * n)
    phi = {}
    for g in elements:
        cols = IsoWitness(g.s0, g.psi, g.r).phi_columns(A)
        phi[g.key()] = AlgebraMorphism(cols, E, E)
    checks = {
        "automorphisms": all(is_algebra_morphism(m.columns, E, E) and m.is_bijective()
                             for m in phi.values()),
        "identity": ident.key() in keys,
        "inverses": all(group_inverse(F, g).key() in keys for g in elements),
    }
    closure = law = embed_mult = True
    embedded = {}
    for g in elements:
        embedded[g.key()] = semidirect_embed(F, g)
    for g in elements:
        for h in elements:
            gh = group_multiply(F, g, h)
            if gh.key() not in keys:
                closure = False
                continue
            if phi[g.key()].compose(phi[h.key()]).columns != phi[gh.key()].columns:
                law = False
            if semidirect_multiply(F, embedded[g.key()], embedded[h.key()]) != embedded[gh.key()]:
                embed_mult = False
    checks["closure"] = closure
    checks["composition_law"] = law
    checks["embedding_multiplicative"] = embed_mult
    checks["embedding_injective"] = len(set(embedded.values())) == len(elements)
    checks["inverse_formula"] = all(
        group_multiply(F, g, group_inverse(F, g)).key() == ident.key() for g in elements)
    return checks


# -- towers and classification --------------------------------------------------------------

@dataclass
class CoflagTower:
    algebras: list       # A_0 = A, A_1, ..., A_k
    projections: list    # matrices A_i -> A_{i-1}

    @property
    def top(self) -> Algebra:
        return self.algebras[-1]


def coflag_tower(A: Algebra, data) -> CoflagTower:
    algebras, projections = [A], []
    current = A
    for i, d in enumerate(data):
        _require_valid(current, d, index=i)
        ext = build_coflag_algebra(current, d, name=f"{A.name or 'A'}+{i + 1}")
        proj = ext.projection
        if not is_algebra_morphism(proj.columns, ext.total, current):
            raise AssertionError("projection is not an algebra map")
        if el.rank(current.field, proj.matrix) != current.dim:
            raise AssertionError("projection is not surjective")
        projections.append(proj.matrix)
        current = ext.total
        algebras.append(current)
    return CoflagTower(algebras, projections)


def coflag_chain(A: Algebra):
    """A chain of one-dimensional ideals peeling ``A`` down to ``k``, or ``None``."""
    if A.dim == 1:
        return []
    for ideal in proper_two_sided_ideals(A, max_dim=1):
        q = quotient(A, ideal)
        rest = coflag_chain(q.algebra)
        if rest is not None:
            return [(ideal, q)] + rest
    return None


def is_coflag(A: Algebra) -> bool:
    return coflag_chain(A) is not None


@dataclass
class ClassifiedAlgebra:
    algebra: Algebra
    provenance: list       # human-readable construction steps from k


def classify_coflag(n: int, F: Field, budget: int = 10 ** 8, progress=None) -> list[ClassifiedAlgebra]:
    """Isomorphism classes of co-flag algebras of dimension ``n`` over F_p."""
    if not F.is_finite:
        raise FiniteFieldRequired("co-flag classification")
    if n < 1:
        raise ValueError("dimension must be positive")
    if F.p == 2 and n >= 3:
        raise ValueError("classification is only supported in characteristic != 2 for n >= 3")
    level = [ClassifiedAlgebra(ground(F), ["k"])]
    for dim in range(2, n + 1):
        pool = []
        for parent in level:
            A = parent.algebra
            try:
                rep = hoc(A, resolve_autos(A, cap=budget), with_witnesses=False)
            except BudgetExceeded as exc:
                raise BudgetExceeded(f"classification stopped at dimension {dim}: {exc}") from exc
            for i, orbit in enumerate(rep.orbits):
                B = build_coflag_algebra(A, orbit.head, name=f"{A.name}>first{i + 1}").total
                pool.append(ClassifiedAlgebra(B, parent.provenance + [f"first-kind {orbit.head!r}"]))
            B = direct_product(A, ground(F), name=f"{A.name} x k")
            pool.append(ClassifiedAlgebra(B, parent.provenance + ["direct product with k"]))
        level = []
        for cand in pool:
            if any(find_isomorphism(cand.algebra, kept.algebra) is not None for kept in level):
                continue
            level.append(cand)
        for i, c in enumerate(level):
            c.algebra = c.algebra.renamed(f"C{dim}.{i + 1}")
        if progress:
            progress(dim, len(level))
    return level


def match_to_presentations(found: list, targets: list) -> list:
    """For each target algebra, the index of an isomorphic found algebra and the witness."""
    out = []
    for T in targets:
        hit = None
        for i, c in enumerate(found):
            B = c.algebra if isinstance(c, ClassifiedAlgebra) else c
            phi = find_isomorphism(T, B)
            if phi is not None:
                hit = (i, phi)
                break
        out.append(hit)
    return out


def rebuild_from_datum(A: Algebra, d: CoflagDatum) -> Algebra:
    return build_coflag_algebra(A, d).total


def datum_from_algebra_section(E: Algebra, A: Algebra, pi, s) -> CoflagDatum:
    from .hochschild import extract_system
    system, _, _ = extract_system(E, A, pi, s)
    return cf_from_hs(system)


__all__ = [
    "CoflagDatum", "validate_coflag", "build_coflag_algebra", "hs_from_cf", "cf_from_hs",
    "trivializer_second_kind", "h2_pair", "gh2_coflag", "find_iso_first_kind", "hoc",
    "aut_group", "coflag_tower", "coflag_chain", "is_coflag", "classify_coflag",
    "IsoWitness", "H2Block", "GH2Report", "HOCReport", "AutGroup",
]

"""Hochschild systems ``(left action, right action, cocycle, V-multiplication)``.

A system over an algebra ``A`` and a vector space ``V = k^m`` turns ``A x V``
into an algebra via::

    (a, x)(b, y) = (ab, theta(a, b) + a |> y + x <| b + x . y)

All four maps are stored as nested tuples of V-coordinate vectors indexed by
basis elements: ``act_left[a][x]``, ``act_right[x][a]``, ``cocycle[a][b]``,
``vmult[x][y]``.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass

from . import exact_linear as el
from .algebra_core import (Algebra, AlgebraMorphism, BudgetExceeded, Violation,
                           is_algebra_morphism, morphism_violations)
from .exact_linear import FiniteFieldRequired


def _tensor(F, shape, data):
    """Normalize a nested list of V-vectors of the given outer shape."""
    a, b, m = shape
    if len(data) != a or any(len(row) != b for row in data) or \
            any(len(v) != m for row in data for v in row):
        raise ValueError(f"tensor shape mismatch, expected {a}x{b}x{m}")
    return tuple(tuple(tuple(F(x) for x in v) for v in row) for row in data)


def zero_tensor(a: int, b: int, m: int, F):
    return tuple(tuple(tuple(F.zero for _ in range(m)) for _ in range(b)) for _ in range(a))


@dataclass(frozen=True, eq=False)
class HochschildData:
    algebra: Algebra
    vdim: int
    act_left: tuple
    act_right: tuple
    cocycle: tuple
    vmult: tuple

    def __post_init__(self):
        F, n, m = self.algebra.field, self.algebra.dim, self.vdim
        object.__setattr__(self, "act_left", _tensor(F, (n, m, m), self.act_left))
        object.__setattr__(self, "act_right", _tensor(F, (m, n, m), self.act_right))
        object.__setattr__(self, "cocycle", _tensor(F, (n, n, m), self.cocycle))
        object.__setattr__(self, "vmult", _tensor(F, (m, m, m), self.vmult))

    @property
    def field(self):
        return self.algebra.field

    # bilinear extensions -----------------------------------------------------
    def _bil(self, T, u, v):
        F, m = self.field, self.vdim
        out = [0] * m
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                c = ui * vj
                for t, w in enumerate(T[i][j]):
                    if w:
                        out[t] += c * w
        return tuple(F(z) for z in out)

    def left(self, a, x):
        return self._bil(self.act_left, a, x)

    def right(self, x, a):
        return self._bil(self.act_right, x, a)

    def theta(self, a, b):
        return self._bil(self.cocycle, a, b)

    def vprod(self, x, y):
        return self._bil(self.vmult, x, y)

    def key(self) -> tuple:
        """Flat tuple of every coordinate, in a fixed order (used for canonical choices)."""
        return tuple(int(x) if self.field.is_finite else x
                     for T in (self.vmult, self.act_left, self.act_right, self.cocycle)
                     for row in T for v in row for x in v)

    def vmult_key(self) -> tuple:
        return tuple(x for row in self.vmult for v in row for x in v)

    def bimodule_key(self) -> tuple:
        return tuple(x for T in (self.act_left, self.act_right) for row in T for v in row for x in v)

    def with_(self, **changes) -> HochschildData:
        kw = dict(algebra=self.algebra, vdim=self.vdim, act_left=self.act_left,
                  act_right=self.act_right, cocycle=self.cocycle, vmult=self.vmult)
        kw.update(changes)
        return type(self)(**kw) if type(self) is HochschildData else HochschildData(**kw)


class InvalidSystem(ValueError):
    def __init__(self, report):
        self.report = report
        head = "; ".join(f"{v.axiom}{v.witness}" for v in report[:5])
        super().__init__(f"not a Hochschild system: {head}")


class HochschildSystem(HochschildData):
    """Hochschild data satisfying all axioms; construction validates."""

    def __post_init__(self):
        super().__post_init__()
        report = validate_system(self)
        if report:
            raise InvalidSystem(report)

    @classmethod
    def from_data(cls, d: HochschildData) -> HochschildSystem:
        return cls(d.algebra, d.vdim, d.act_left, d.act_right, d.cocycle, d.vmult)


def validate_system(d: HochschildData) -> list[Violation]:
    """Check the nine axioms H0..H8 on basis elements, naming each failing triple."""
    A, F, n, m = d.algebra, d.field, d.algebra.dim, d.vdim
    ea = [A.e(i) for i in range(n)]
    ev = [tuple(el.unit_vector(m, t, F)) for t in range(m)]
    one = A.unit
    out = []

    def fail(axiom, witness, detail=""):
        out.append(Violation(axiom, witness, detail))

    for i in range(n):
        if not el.is_zero(d.theta(ea[i], one)) or not el.is_zero(d.theta(one, ea[i])):
            fail("H0", (i,), "cocycle not normalized")
    for x in range(m):
        if d.right(ev[x], one) != ev[x]:
            fail("H0", ("v", x), "x <| 1 != x")
        if d.left(one, ev[x]) != ev[x]:
            fail("H0", ("v", x), "1 |> x != x")
    for x, y in itertools.product(range(m), repeat=2):
        xy = d.vprod(ev[x], ev[y])
        for i in range(n):
            a = ea[i]
            if d.right(xy, a) != d.vprod(ev[x], d.right(ev[y], a)):
                fail("H1", (x, y, i))
            if d.vprod(d.right(ev[x], a), ev[y]) != d.vprod(ev[x], d.left(a, ev[y])):
                fail("H2", (x, i, y))
            if d.left(a, xy) != d.vprod(d.left(a, ev[x]), ev[y]):
                fail("H3", (i, x, y))
    for i, j in itertools.product(range(n), repeat=2):
        a, b = ea[i], ea[j]
        ab = A.mult[i][j]
        for x in range(m):
            if d.right(d.left(a, ev[x]), b) != d.left(a, d.right(ev[x], b)):
                fail("H4", (i, x, j))
            lhs = d.left(ab, ev[x])
            rhs = el.vsub(F, d.left(a, d.left(b, ev[x])), d.vprod(d.theta(a, b), ev[x]))
            if lhs != tuple(rhs):
                fail("H6", (i, j, x))
            lhs = d.right(ev[x], ab)
            rhs = el.vsub(F, d.right(d.right(ev[x], a), b), d.vprod(ev[x], d.theta(a, b)))
            if lhs != tuple(rhs):
                fail("H7", (x, i, j))
        for k in range(n):
            c = ea[k]
            lhs = el.vsub(F, d.theta(a, A.mult[j][k]), d.theta(ab, c))
            rhs = el.vsub(F, d.right(d.theta(a, b), c), d.left(a, d.theta(b, c)))
            if lhs != rhs:
                fail("H5", (i, j, k))
    for x, y, z in itertools.product(range(m), repeat=3):
        if d.vprod(d.vprod(ev[x], ev[y]), ev[z]) != d.vprod(ev[x], d.vprod(ev[y], ev[z])):
            fail("H8", (x, y, z))
    return out


# -- products ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ExtensionAlgebra:
    """``A * V`` with its projection onto ``A`` and the inclusion of ``V``."""

    total: Algebra
    base: Algebra
    vdim: int
    source: HochschildData

    @property
    def projection(self) -> AlgebraMorphism:
        n, F = self.base.dim, self.base.field
        cols = [self.base.e(i) for i in range(n)]
        cols += [tuple(el.zeros(n, F))] * self.vdim
        return AlgebraMorphism(tuple(cols), self.total, self.base)

    @property
    def injection(self) -> list:
        """Columns of ``x -> (0, x)``."""
        n = self.base.dim
        return [self.total.e(n + t) for t in range(self.vdim)]

    def kernel_basis(self) -> list:
        return self.injection


def product_table(d: HochschildData):
    """Structure constants of ``A * V`` with basis ``(e_1..e_n, v_1..v_m)``."""
    A, F, n, m = d.algebra, d.field, d.algebra.dim, d.vdim
    N = n + m
    zero_a = (F.zero,) * n
    mult = [[None] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            mult[i][j] = A.mult[i][j] + d.cocycle[i][j]
        for y in range(m):
            mult[i][n + y] = zero_a + d.act_left[i][y]
            mult[n + y][i] = zero_a + d.act_right[y][i]
    for x in range(m):
        for y in range(m):
            mult[n + x][n + y] = zero_a + d.vmult[x][y]
    return mult, tuple(A.unit) + (F.zero,) * m


def build_product(s: HochschildData, name: str = "", check: bool = True) -> ExtensionAlgebra:
    if check:
        report = validate_system(s)
        if report:
            raise InvalidSystem(report)
    A = s.algebra
    mult, unit = product_table(s)
    labels = tuple(A.basis) + (("f",) if s.vdim == 1 else tuple(f"v{t}" for t in range(s.vdim)))
    total = Algebra(A.field, mult, unit, labels, name=name or f"{A.name or 'A'}*k^{s.vdim}")
    return ExtensionAlgebra(total, A, s.vdim, s)


# -- extraction -----------------------------------------------------------------------

def extract_system(E: Algebra, A: Algebra, pi, s, kernel_basis=None):
    """Recover a system from a surjection ``pi: E -> A`` and a unital linear section ``s``.

    ``pi`` is a ``dim A x dim E`` matrix, ``s`` a ``dim E x dim A`` matrix.
    Returns ``(system, phi_columns, kernel_basis)`` where ``phi(a, x) = s(a) + x``
    is a verified algebra isomorphism from the rebuilt product onto ``E``.
    """
    F, n, N = E.field, A.dim, E.dim
    pi_cols = [tuple(c) for c in el.transpose(pi)] if pi else [()] * N
    if len(pi_cols) != N or any(len(c) != n for c in pi_cols):
        raise ValueError("projection has the wrong shape")
    bad = morphism_violations(pi_cols, E, A)
    if bad:
        raise ValueError(f"projection is not an algebra map: {bad[0].axiom}{bad[0].witness}")
    s_cols = [tuple(F(x) for x in c) for c in el.transpose(s)]
    if len(s_cols) != n:
        raise ValueError("section has the wrong shape")
    pi_map = AlgebraMorphism(tuple(pi_cols), E, A)
    for i, col in enumerate(s_cols):
        if pi_map(col) != A.e(i):
            raise ValueError("section is not a right inverse of the projection")
    if tuple(el.lincomb(F, A.unit, s_cols, N)) != E.unit:
        raise ValueError("section is not unital")
    if kernel_basis is None:
        kernel_basis = el.kernel(F, pi, N)
    kernel_basis = [tuple(F(x) for x in v) for v in kernel_basis]
    m = len(kernel_basis)
    if m != N - n or any(not el.is_zero(pi_map(v)) for v in kernel_basis):
        raise ValueError("kernel basis does not span the kernel of the projection")

    # coordinates with respect to s(e_1..e_n), k_1..k_m
    basis_cols = list(s_cols) + list(kernel_basis)
    inv = el.inverse(F, el.columns_to_matrix(basis_cols))
    if inv is None:
        raise ValueError("section image and kernel do not span E")

    def vpart(w):
        c = el.mat_vec(F, inv, w)
        if not el.is_zero(c[:n]):
            raise AssertionError("element expected in the kernel")
        return tuple(c[n:])

    left = [[vpart(E.mul(s_cols[a], kernel_basis[x])) for x in range(m)] for a in range(n)]
    right = [[vpart(E.mul(kernel_basis[x], s_cols[a])) for a in range(n)] for x in range(m)]
    theta = [[vpart(el.vsub(F, E.mul(s_cols[a], s_cols[b]),
                            el.lincomb(F, A.mult[a][b], s_cols, N)))
              for b in range(n)] for a in range(n)]
    vm = [[vpart(E.mul(kernel_basis[x], kernel_basis[y])) for y in range(m)] for x in range(m)]
    system = HochschildSystem(A, m, left, right, theta, vm)
    phi = tuple(basis_cols)
    rebuilt = build_product(system, check=False).total
    if not is_algebra_morphism(phi, rebuilt, E):
        raise AssertionError("s(a) + x is not an algebra isomorphism")
    return system, phi, kernel_basis


# -- cohomologous systems ----------------------------------------------------------------

def gauge_transform(d: HochschildData, r) -> HochschildData:
    """The unique system ``s`` for which ``psi_r : A *_s V -> A *_d V`` is an algebra map.

    ``psi_r(a, x) = (a, r(a) + x)``; ``r`` must vanish on the unit.
    """
    A, F, n, m = d.algebra, d.field, d.algebra.dim, d.vdim
    r = [tuple(F(x) for x in v) for v in r]
    ev = [tuple(el.unit_vector(m, t, F)) for t in range(m)]
    right = [[tuple(el.vadd(F, d.act_right[x][a], d.vprod(ev[x], r[a]))) for a in range(n)]
             for x in range(m)]
    left = [[tuple(el.vadd(F, d.act_left[a][x], d.vprod(r[a], ev[x]))) for x in range(m)]
            for a in range(n)]

    def r_of(vec):
        return tuple(el.lincomb(F, vec, r, m))

    theta = []
    for a in range(n):
        row = []
        for b in range(n):
            val = el.vadd(F, d.cocycle[a][b], d.left(A.e(a), r[b]))
            val = el.vadd(F, val, d.right(r[a], A.e(b)))
            val = el.vadd(F, val, d.vprod(r[a], r[b]))
            row.append(tuple(el.vsub(F, val, r_of(A.mult[a][b]))))
        theta.append(row)
    return HochschildData(A, m, left, right, theta, d.vmult)


def psi_columns(d: HochschildData, r) -> tuple:
    """Columns of ``psi_r(a, x) = (a, r(a) + x)`` on ``A x V``."""
    A, F, n, m = d.algebra, d.field, d.algebra.dim, d.vdim
    cols = [tuple(A.e(a)) + tuple(F(x) for x in r[a]) for a in range(n)]
    cols += [(F.zero,) * n + tuple(el.unit_vector(m, t, F)) for t in range(m)]
    return tuple(cols)


def _cohomology_equations(s, t):
    """Linear equations ``M r = b`` from r(1)=0, CH2, CH3 and the linear part of CH4.

    Unknown ``r[a][u]`` sits at index ``a*m + u``.  Returns ``(M, b, quadratic)``
    where ``quadratic`` is true when CH4 has a nonvanishing ``r(a) . r(b)`` term
    (its rows are then left out).
    """
    A, F, n, m = s.algebra, s.field, s.algebra.dim, s.vdim
    nv = n * m
    M, b = [], []
    for u in range(m):
        M.append([F(A.unit[a]) if w == u else F.zero for a in range(n) for w in range(m)])
        b.append(F.zero)
    # CH2: x<|a - x<|'a = sum_u r[a][u] t.vmult[x][u]
    for x in range(m):
        for a in range(n):
            for out in range(m):
                row = [F.zero] * nv
                for u in range(m):
                    row[a * m + u] = t.vmult[x][u][out]
                M.append(row)
                b.append(F(s.act_right[x][a][out] - t.act_right[x][a][out]))
    # CH3: a|>x - a|>'x = sum_u r[a][u] t.vmult[u][x]
    for a in range(n):
        for x in range(m):
            for out in range(m):
                row = [F.zero] * nv
                for u in range(m):
                    row[a * m + u] = t.vmult[u][x][out]
                M.append(row)
                b.append(F(s.act_left[a][x][out] - t.act_left[a][x][out]))
    quadratic = any(v != 0 for row in t.vmult for vec in row for v in vec)
    if not quadratic:
        # CH4: theta - theta' = -r(ab) + a|>'r(b) + r(a)<|'b
        for a in range(n):
            for c in range(n):
                for out in range(m):
                    row = [0] * nv
                    for k, coef in enumerate(A.mult[a][c]):
                        if coef:
                            row[k * m + out] -= coef
                    for u in range(m):
                        row[c * m + u] += t.act_left[a][u][out]
                        row[a * m + u] += t.act_right[u][c][out]
                    M.append([F(z) for z in row])
                    b.append(F(s.cocycle[a][c][out] - t.cocycle[a][c][out]))
    return M, b, quadratic


def _reshape(vec, n, m):
    return tuple(tuple(vec[a * m:(a + 1) * m]) for a in range(n))


def is_cohomologous(s: HochschildData, t: HochschildData, budget: int = 10 ** 6):
    """A map ``r: A -> V`` with ``psi_r: A *_s V -> A *_t V`` an isomorphism, or ``None``."""
    if s.algebra is not t.algebra and not s.algebra.same_table(t.algebra):
        raise ValueError("systems live over different algebras")
    if s.vdim != t.vdim:
        raise ValueError("systems have different V dimensions")
    if s.vmult != t.vmult:
        return None
    F, n, m = s.field, s.algebra.dim, s.vdim
    if m == 0:
        return ()
    M, b, quadratic = _cohomology_equations(s, t)
    sol = el.solve_affine(F, M, b, n * m)
    if sol is None:
        return None
    particular, kern = sol
    if not quadratic:
        r = _reshape(particular, n, m)
    else:
        if kern and not F.is_finite:
            raise FiniteFieldRequired("cohomology search with a nonzero V-multiplication over Q")
        if F.is_finite and F.p ** len(kern) > budget:
            raise BudgetExceeded(f"{F.p}^{len(kern)} gauge candidates exceed budget {budget}")
        r = None
        coeff_iter = itertools.product(F.elements(), repeat=len(kern)) if kern else [()]
        for coeffs in coeff_iter:
            cand = el.vadd(F, particular, el.lincomb(F, coeffs, kern, n * m)) if kern else particular
            rr = _reshape(cand, n, m)
            if gauge_transform(t, rr).cocycle == s.cocycle:
                r = rr
                break
        if r is None:
            return None
    _verify_gauge(s, t, r)
    return r


def _verify_gauge(s, t, r):
    E_s = build_product(s, check=False).total
    E_t = build_product(t, check=False).total
    fwd = psi_columns(s, r)
    back = psi_columns(s, [tuple(-x for x in v) for v in r])
    if not is_algebra_morphism(fwd, E_s, E_t):
        raise AssertionError("psi_r is not an algebra map")
    comp = AlgebraMorphism(back, E_t, E_s).compose(AlgebraMorphism(fwd, E_s, E_t))
    if comp.columns != tuple(E_s.e(i) for i in range(E_s.dim)):
        raise AssertionError("psi_{-r} is not the inverse of psi_r")


# -- split epimorphisms ------------------------------------------------------------------

def check_split(B: Algebra, A: Algebra, pi, s):
    """The semidirect system if ``s`` is a unital algebra section of ``pi``, else ``None``."""
    F = B.field
    s_cols = [tuple(F(x) for x in c) for c in el.transpose(s)]
    if not is_algebra_morphism(s_cols, A, B):
        return None
    pi_cols = [tuple(c) for c in el.transpose(pi)]
    pi_map = AlgebraMorphism(tuple(pi_cols), B, A)
    if any(pi_map(c) != A.e(i) for i, c in enumerate(s_cols)):
        return None
    system, phi, _ = extract_system(B, A, pi, s)
    if not all(el.is_zero(v) for row in system.cocycle for v in row):
        raise AssertionError("algebra section produced a nonzero cocycle")
    return system


# -- brute-force GH^2 ---------------------------------------------------------------------

@dataclass
class GH2BruteReport:
    algebra: Algebra
    vdim: int
    valid_count: int
    classes: list          # list of dicts: representative, size, vmult, bimodule

    @property
    def total(self) -> int:
        return len(self.classes)

    def strata(self) -> dict:
        """Class counts per V-multiplication (and per bimodule inside ``vmult = 0``)."""
        out = defaultdict(lambda: {"classes": 0, "bimodules": defaultdict(int)})
        for c in self.classes:
            st = out[c["vmult"]]
            st["classes"] += 1
            if all(x == 0 for x in c["vmult"]):
                st["bimodules"][c["bimodule"]] += 1
        return {k: {"classes": v["classes"], "bimodules": dict(v["bimodules"])}
                for k, v in out.items()}


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        a, b = self.find(i), self.find(j)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def all_hochschild_data(A: Algebra, m: int):
    """Every Hochschild data tensor over F_p (naive product enumeration)."""
    F, n = A.field, A.dim
    shapes = [(n, m, m), (m, n, m), (n, n, m), (m, m, m)]
    sizes = [a * b * c for a, b, c in shapes]
    for values in itertools.product(F.elements(), repeat=sum(sizes)):
        parts, pos = [], 0
        for (a, b, c), size in zip(shapes, sizes):
            chunk = values[pos:pos + size]
            pos += size
            parts.append([[chunk[(i * b + j) * c:(i * b + j + 1) * c] for j in range(b)]
                          for i in range(a)])
        yield HochschildData(A, m, *parts)


def gh2_enumerate(A: Algebra, vdim: int, budget: int = 2 * 10 ** 6) -> GH2BruteReport:
    """Classify every Hochschild system of ``A`` by ``k^vdim`` up to cohomology.

    Deliberately naive: enumerate all data, keep the valid ones, then merge
    with :func:`is_cohomologous`.  Meant as an oracle for tiny cases.
    """
    F = A.field
    if not F.is_finite:
        raise FiniteFieldRequired("enumerating Hochschild data")
    n, m = A.dim, vdim
    if m == 0:
        d = HochschildSystem(A, 0, [[] for _ in range(n)], [],
                             [[() for _ in range(n)] for _ in range(n)], [])
        return GH2BruteReport(A, 0, 1, [{"representative": d, "size": 1, "vmult": (),
                                         "bimodule": ()}])
    count = F.p ** (n * m * m * 2 + n * n * m + m ** 3)
    if count > budget:
        raise BudgetExceeded(f"{count} Hochschild data exceed the budget {budget}")
    valid = [d for d in all_hochschild_data(A, m) if not validate_system(d)]
    by_vmult = defaultdict(list)
    for idx, d in enumerate(valid):
        by_vmult[d.vmult_key()].append(idx)
    uf = _UnionFind(len(valid))
    for members in by_vmult.values():
        reps = []
        for idx in members:
            for j in reps:
                if is_cohomologous(valid[idx], valid[j]) is not None:
                    uf.union(idx, j)
                    break
            else:
                reps.append(idx)
    groups = defaultdict(list)
    for idx in range(len(valid)):
        groups[uf.find(idx)].append(idx)
    classes = []
    for members in groups.values():
        rep = min((valid[i] for i in members), key=lambda d: d.key())
        classes.append({"representative": HochschildSystem.from_data(rep), "size": len(members),
                        "vmult": rep.vmult_key(), "bimodule": rep.bimodule_key()})
    classes.sort(key=lambda c: c["representative"].key())
    return GH2BruteReport(A, vdim, len(valid), classes)

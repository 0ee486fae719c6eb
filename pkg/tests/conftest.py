import random

import pytest

from hochprod import exact_linear as el
from hochprod.algebra_core import characters, direct_product
from hochprod.catalog import (coflag3, cyclic_group_algebra, dual_numbers, ground,
                              upper_triangular)
from hochprod.coflag import h2_pair
from hochprod.exact_linear import Field
from hochprod.hochschild import HochschildData, build_product, extract_system, validate_system

F2, F3, F5, F7 = (Field.prime(p) for p in (2, 3, 5, 7))
QQ = Field.rationals()


@pytest.fixture
def f5():
    return F5


@pytest.fixture
def qq():
    return QQ


def small_bases(F, max_dim=3):
    out = [ground(F), dual_numbers(F), cyclic_group_algebra(2, F),
           direct_product(ground(F), ground(F), name="k x k")]
    if max_dim >= 3:
        out += [upper_triangular(2, F), coflag3(1, F), coflag3(3, F)]
    return out


def _diagonal_system(rng, A, m):
    """vmult = 0, V a sum of one-dimensional bimodules with random cocycles."""
    F, n = A.field, A.dim
    chars = characters(A)
    pairs = [(rng.choice(chars), rng.choice(chars)) for _ in range(m)]
    left = [[[F.zero] * m for _ in range(m)] for _ in range(n)]
    right = [[[F.zero] * m for _ in range(n)] for _ in range(m)]
    theta = [[[F.zero] * m for _ in range(n)] for _ in range(n)]
    for t, (lam, Lam) in enumerate(pairs):
        for a in range(n):
            left[a][t][t] = lam[a]
            right[t][a][t] = Lam[a]
        z = h2_pair(A, lam, Lam).z_basis
        if z:
            vec = el.lincomb(F, [rng.randrange(F.p) for _ in z], z, n * n)
            for a in range(n):
                for b in range(n):
                    theta[a][b][t] = vec[a * n + b]
    zero_v = [[[F.zero] * m for _ in range(m)] for _ in range(m)]
    return HochschildData(A, m, left, right, theta, zero_v)


def _product_system(rng, A, B):
    """The system extracted from ``A x B`` with the canonical section."""
    F, n, m = A.field, A.dim, B.dim
    E = direct_product(A, B)
    pi = [[F.one if j == i else F.zero for j in range(n + m)] for i in range(n)]
    j = next(i for i, u in enumerate(A.unit) if u)
    s_cols = [list(A.e(i)) + ([F(F.inv(A.unit[j]) * x) for x in B.unit] if i == j else [F.zero] * m)
              for i in range(n)]
    s = el.columns_to_matrix(s_cols)
    return extract_system(E, A, pi, s)[0]


def _random_unital_section(rng, A, m):
    F, n = A.field, A.dim
    r = [[rng.randrange(F.p) for _ in range(m)] for _ in range(n)]
    j = next(i for i, u in enumerate(A.unit) if u)
    # force sum_i unit_i r_i = 0 so that s(1) = (1, 0)
    acc = [F(sum(A.unit[i] * r[i][t] for i in range(n) if i != j)) for t in range(m)]
    r[j] = [F(-x * F.inv(A.unit[j])) for x in acc]
    cols = [list(A.e(i)) + [F(x) for x in r[i]] for i in range(n)]
    return el.columns_to_matrix(cols)


def _random_gl(rng, F, m):
    while True:
        g = [[rng.randrange(F.p) for _ in range(m)] for _ in range(m)]
        if el.rank(F, g) == m:
            return g


def random_system(rng: random.Random, F=F5, general: bool | None = None):
    """A random valid Hochschild system.

    ``general`` picks a base with nonzero V-multiplication (dim A <= 2);
    otherwise vmult = 0 with dim A <= 3 and V of dimension 1 or 2.  The
    structure is then moved by a random section and a random kernel basis.
    """
    if general is None:
        general = rng.random() < 0.3
    if general:
        A = rng.choice(small_bases(F, 2))
        B = rng.choice([ground(F), dual_numbers(F), direct_product(ground(F), ground(F))])
        d = _product_system(rng, A, B)
    else:
        A = rng.choice(small_bases(F, 3))
        d = _diagonal_system(rng, A, rng.choice((1, 2)))
    n, m = A.dim, d.vdim
    E = build_product(d).total
    pi = [[F.one if j == i else F.zero for j in range(n + m)] for i in range(n)]
    s = _random_unital_section(rng, A, m)
    g = _random_gl(rng, F, m)
    kb = [[F.zero] * n + [g[t][c] for t in range(m)] for c in range(m)]
    system = extract_system(E, A, pi, s, kb)[0]
    assert not validate_system(system)
    return system


def canonical_maps(A, m):
    F, n = A.field, A.dim
    pi = [[F.one if j == i else F.zero for j in range(n + m)] for i in range(n)]
    s = el.columns_to_matrix([list(A.e(i)) + [F.zero] * m for i in range(n)])
    return pi, s

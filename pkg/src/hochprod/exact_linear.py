"""Exact scalars over Q and F_p, and the dense linear algebra built on them.

Scalars are plain Python objects: :class:`fractions.Fraction` over Q and
``int`` residues in ``0..p-1`` over F_p.  A :class:`Field` normalizes any
integer/fraction/string into its canonical form, so equality of scalars is
ordinary ``==``.  Matrices are lists of rows; vectors are tuples or lists.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Vector = Sequence
Matrix = list


class FiniteFieldRequired(ValueError):
    """Raised when an enumeration only makes sense over a finite field."""

    def __init__(self, what: str = "this operation"):
        super().__init__(f"finite field required for {what}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Either the rationals (``kind="Q"``) or a prime field (``kind="Fp"``)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("the rationals carry no modulus")
        elif self.kind == "Fp":
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise ValueError(f"modulus not prime: {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> Field:
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> Field:
        return cls("Fp", p)

    @classmethod
    def parse(cls, text: str) -> Field:
        """Parse ``"Q"``, ``"Fp:5"`` or ``"F5"``."""
        t = text.strip()
        if t.upper() in ("Q", "QQ"):
            return cls.rationals()
        if t.lower().startswith("fp:"):
            return cls.prime(int(t[3:]))
        if t[:1] in "Ff" and t[1:].isdigit():
            return cls.prime(int(t[1:]))
        raise ValueError(f"cannot parse field {text!r}")

    @property
    def is_finite(self) -> bool:
        return self.kind == "Fp"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "Fp" else 0

    @property
    def size(self) -> int | None:
        return self.p

    def __str__(self) -> str:
        return "Q" if self.kind == "Q" else f"F_{self.p}"

    def __call__(self, x):
        if self.kind == "Q":
            if isinstance(x, str):
                return Fraction(x.strip())
            return Fraction(x)
        p = self.p
        if isinstance(x, int):
            return x % p
        if isinstance(x, str):
            x = Fraction(x.strip())
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"{x} has no image in F_{p}")
        return x.numerator * pow(x.denominator, -1, p) % p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Q":
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def div(self, a, b):
        return self(a * self.inv(b))

    def elements(self) -> list:
        if not self.is_finite:
            raise FiniteFieldRequired("enumerating field elements")
        return list(range(self.p))

    def units(self) -> list:
        return self.elements()[1:]

    def balanced(self, x) -> int:
        """Symmetric representative in ``(-p/2, p/2]`` (F_p only)."""
        x = int(x) % self.p
        return x - self.p if x > self.p // 2 else x

    def to_json(self) -> dict:
        return {"kind": "Q"} if self.kind == "Q" else {"kind": "Fp", "p": self.p}

    def scalar_to_json(self, x):
        if self.kind == "Fp":
            return int(x)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- vectors and matrices ---------------------------------------------------

def zeros(n: int, F: Field) -> list:
    return [F.zero] * n


def unit_vector(n: int, i: int, F: Field) -> list:
    v = [F.zero] * n
    v[i] = F.one
    return v


def identity(n: int, F: Field) -> Matrix:
    return [unit_vector(n, i, F) for i in range(n)]


def is_zero(v: Iterable) -> bool:
    return all(x == 0 for x in v)


def vadd(F: Field, u, v) -> list:
    return [F(a + b) for a, b in zip(u, v)]


def vsub(F: Field, u, v) -> list:
    return [F(a - b) for a, b in zip(u, v)]


def vscale(F: Field, c, v) -> list:
    return [F(c * a) for a in v]


def dot(F: Field, u, v):
    return F(sum(a * b for a, b in zip(u, v)))


def lincomb(F: Field, coeffs, vectors, n: int | None = None) -> list:
    if n is None:
        n = len(vectors[0]) if vectors else 0
    out = [0] * n
    for c, v in zip(coeffs, vectors):
        if c == 0:
            continue
        for i, a in enumerate(v):
            if a:
                out[i] += c * a
    return [F(x) for x in out]


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def mat_vec(F: Field, M: Matrix, v) -> list:
    return [F(sum(a * b for a, b in zip(row, v) if a and b)) for row in M]


def mat_mul(F: Field, M: Matrix, N: Matrix) -> Matrix:
    Nt = transpose(N)
    return [[F(sum(a * b for a, b in zip(row, col))) for col in Nt] for row in M]


def columns_to_matrix(cols: Sequence[Sequence]) -> Matrix:
    """Matrix whose j-th column is ``cols[j]``."""
    return transpose([list(c) for c in cols])


# -- elimination ------------------------------------------------------------

def rref(F: Field, M: Matrix, ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form of ``M`` (nonzero rows only) and its pivot columns."""
    R = [[F(x) for x in row] for row in M]
    if ncols is None:
        ncols = len(R[0]) if R else 0
    pivots: list[int] = []
    r = 0
    nrows = len(R)
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if R[i][c] != 0), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F(x * inv) for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [F(a - f * b) for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return R[:r], pivots


def rank(F: Field, M: Matrix) -> int:
    return len(rref(F, M)[1]) if M else 0


def _kernel_from_rref(F: Field, R: Matrix, pivots: list[int], ncols: int) -> list[list]:
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for row, pc in zip(R, pivots):
            v[pc] = F(-row[free])
        basis.append(v)
    return basis


def rank_kernel(F: Field, M: Matrix, ncols: int | None = None) -> tuple[int, list[list]]:
    """Rank of ``M`` and its canonical kernel basis.

    The kernel basis has one vector per free column ``j``: it carries a 1 in
    column ``j``, zeros in every other free column, and whatever the pivot
    columns require.  This basis depends only on the kernel itself, so two
    matrices with the same null space return identical bases.
    """
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return 0, [unit_vector(ncols, j, F) for j in range(ncols)]
    R, pivots = rref(F, M, ncols)
    return len(pivots), _kernel_from_rref(F, R, pivots, ncols)


def kernel(F: Field, M: Matrix, ncols: int | None = None) -> list[list]:
    return rank_kernel(F, M, ncols)[1]


def solve_affine(F: Field, M: Matrix, b, ncols: int | None = None):
    """Solve ``M x = b``.

    Returns ``None`` when ``b`` is outside the image, otherwise
    ``(particular, kernel_basis)`` where the particular solution has all free
    variables set to zero.
    """
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if len(b) != len(M):
        raise ValueError("right-hand side length must equal the number of rows")
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    if not aug:
        return [F.zero] * ncols, [unit_vector(ncols, j, F) for j in range(ncols)]
    R, pivots = rref(F, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [F.zero] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    kern = _kernel_from_rref(F, [row[:ncols] for row in R], pivots, ncols)
    return x, kern


def inverse(F: Field, M: Matrix) -> Matrix | None:
    n = len(M)
    aug = [list(row) + unit_vector(n, i, F) for i, row in enumerate(M)]
    R, pivots = rref(F, aug, 2 * n)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in R]


# -- subspaces --------------------------------------------------------------

def row_space(F: Field, vectors: Sequence[Sequence], n: int | None = None) -> tuple[Matrix, list[int]]:
    """Canonical (RREF) basis of the span of ``vectors``."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return [], []
    return rref(F, vectors, n if n is not None else len(vectors[0]))


def reduce_mod(F: Field, v, sub_rref: Matrix, pivots: list[int]) -> list:
    """Normal form of ``v`` modulo a subspace given by its RREF basis.

    The result vanishes on every pivot column; over F_p with residues ordered
    ``0 < 1 < ... < p-1`` it is the lexicographically least coset member.
    """
    w = [F(x) for x in v]
    for row, pc in zip(sub_rref, pivots):
        c = w[pc]
        if c != 0:
            w = [F(a - c * b) for a, b in zip(w, row)]
    return w


def in_span(F: Field, v, vectors: Sequence[Sequence]) -> bool:
    if not vectors:
        return is_zero(v)
    R, piv = row_space(F, vectors, len(v))
    return is_zero(reduce_mod(F, v, R, piv))


def coordinates(F: Field, v, basis: Sequence[Sequence]):
    """Coordinates of ``v`` in a linearly independent family, or ``None``."""
    if not basis:
        return [] if is_zero(v) else None
    sol = solve_affine(F, columns_to_matrix(basis), list(v), len(basis))
    return None if sol is None else sol[0]


def span_vectors(F: Field, basis: Sequence[Sequence], n: int) -> Iterator[list]:
    """Every vector of ``span(basis)`` over a finite field."""
    if not F.is_finite:
        raise FiniteFieldRequired("enumerating a span")
    for coeffs in itertools.product(F.elements(), repeat=len(basis)):
        yield lincomb(F, coeffs, basis, n)


def coset_representatives(ambient_basis: Sequence[Sequence], sub_basis: Sequence[Sequence],
                          field: Field) -> list[list]:
    """One normal-form representative for each coset of ``sub`` in ``ambient``.

    Returns ``p**(dim ambient - dim sub)`` vectors, sorted lexicographically.
    """
    F = field
    if not F.is_finite:
        raise FiniteFieldRequired("coset enumeration (the quotient is infinite over Q)")
    ambient = [list(v) for v in ambient_basis]
    n = len(ambient[0]) if ambient else (len(sub_basis[0]) if sub_basis else 0)
    A, apiv = row_space(F, ambient, n)
    S, spiv = row_space(F, sub_basis, n)
    for v in S:
        if not is_zero(reduce_mod(F, v, A, apiv)):
            raise ValueError("subspace is not contained in the ambient space")
    complement = []
    cur, cpiv = S, spiv
    for v in A:
        if not is_zero(reduce_mod(F, v, cur, cpiv)):
            complement.append(v)
            cur, cpiv = row_space(F, cur + [v], n)
    reps = {tuple(reduce_mod(F, w, S, spiv)) for w in span_vectors(F, complement, n)}
    return [list(r) for r in sorted(reps)]


def enumerate_subspaces(F: Field, n: int, d: int) -> Iterator[Matrix]:
    """All ``d``-dimensional subspaces of ``F^n`` as RREF bases (F_p only)."""
    if not F.is_finite:
        raise FiniteFieldRequired("subspace enumeration")
    if d == 0:
        yield []
        return
    elems = F.elements()
    for pivots in itertools.combinations(range(n), d):
        free_slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n)
                      if c not in pivots]
        for values in itertools.product(elems, repeat=len(free_slots)):
            rows = [[F.zero] * n for _ in range(d)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = F.one
            for (r, c), x in zip(free_slots, values):
                rows[r][c] = x
            yield rows


def count_subspaces(p: int, n: int, d: int) -> int:
    num = den = 1
    for i in range(d):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den

"""Pure-Python F_p search kernels (reference implementation and fallback).

Both kernels take structure tensors flattened row-major: ``T[(j*n + k)*n + i]``.
Scalars are ints already reduced mod ``p``.
"""
from __future__ import annotations

import itertools

BACKEND = "python"


def _checkable_levels(T, n, order):
    """Bucket each (j, k) constraint by the search level at which it becomes decidable."""
    pos = [0] * n
    for level, var in enumerate(order):
        pos[var] = level
    buckets = [[] for _ in range(n)]
    for j in range(n):
        for k in range(n):
            base = (j * n + k) * n
            terms = [(i, T[base + i]) for i in range(n) if T[base + i]]
            level = max([pos[j], pos[k]] + [pos[i] for i, _ in terms])
            buckets[level].append((j, k, terms))
    return buckets


def multiplicative_vectors(T, unit, n, p, limit=0):
    """All ``v`` in F_p^n with ``sum_i T[j,k,i] v_i = v_j v_k`` and ``unit . v = 1``.

    Characters of an algebra (``T = c``) and group-likes of a coalgebra
    (``T[j,k,i] = d[i,j,k]``) are both solutions of this system.  Results come
    out in lexicographic order.
    """
    order = list(range(n))
    buckets = _checkable_levels(T, n, order)
    support = [i for i in range(n) if unit[i] % p]
    if not support:
        return []
    solved = support[-1]
    inv_lead = pow(unit[solved], -1, p)
    v = [0] * n
    out = []

    def consistent(level):
        for j, k, terms in buckets[level]:
            if sum(t * v[i] for i, t in terms) % p != v[j] * v[k] % p:
                return False
        return True

    def rec(level):
        if limit and len(out) >= limit:
            return
        if level == n:
            out.append(tuple(v))
            return
        if level == solved:
            rest = sum(unit[i] * v[i] for i in support[:-1])
            v[level] = (1 - rest) * inv_lead % p
            if consistent(level):
                rec(level + 1)
            return
        for x in range(p):
            v[level] = x
            if consistent(level):
                rec(level + 1)
        v[level] = 0

    rec(0)
    return out


def _mul_vectors(entries, x, y, n, p):
    out = [0] * n
    for a, b, k, c in entries:
        xa = x[a]
        if xa:
            yb = y[b]
            if yb:
                out[k] += xa * yb * c
    return [z % p for z in out]


def morphism_search(cA, uA, cB, uB, n, p, order=None, limit=0):
    """Unital multiplicative bijections ``A -> B`` between n-dim algebras over F_p.

    Returns a list of maps, each a tuple of column images ``psi(e_i)``.
    ``order`` is the basis order in which images are assigned; ``limit``
    stops after that many solutions (0 = all).
    """
    if order is None:
        order = list(range(n))
    buckets = _checkable_levels(cA, n, order)
    entriesB = [(a, b, k, cB[(a * n + b) * n + k])
                for a in range(n) for b in range(n) for k in range(n)
                if cB[(a * n + b) * n + k]]
    support = [i for i in order if uA[i] % p]
    solved = support[-1]
    solved_level = order.index(solved)
    inv_lead = pow(uA[solved], -1, p)
    images = [None] * n
    candidates = [list(t) for t in itertools.product(range(p), repeat=n)][1:]
    out = []
    echelon = []  # list of (pivot, row) with row[pivot] == 1

    def reduce(vec):
        w = list(vec)
        for piv, row in echelon:
            c = w[piv]
            if c:
                w = [(a - c * b) % p for a, b in zip(w, row)]
        return w

    def consistent(level):
        for j, k, terms in buckets[level]:
            lhs = _mul_vectors(entriesB, images[j], images[k], n, p)
            rhs = [0] * n
            for i, t in terms:
                img = images[i]
                for r in range(n):
                    rhs[r] += t * img[r]
            if any((a - b) % p for a, b in zip(lhs, rhs)):
                return False
        return True

    def place(level, vec):
        w = reduce(vec)
        piv = next((i for i, a in enumerate(w) if a), None)
        if piv is None:
            return False
        inv = pow(w[piv], -1, p)
        echelon.append((piv, [a * inv % p for a in w]))
        images[order[level]] = vec
        if consistent(level):
            rec(level + 1)
        echelon.pop()
        images[order[level]] = None
        return True

    def rec(level):
        if limit and len(out) >= limit:
            return
        if level == n:
            out.append(tuple(tuple(images[i]) for i in range(n)))
            return
        if level == solved_level:
            vec = [uB[r] % p for r in range(n)]
            for i in support[:-1]:
                for r in range(n):
                    vec[r] -= uA[i] * images[i][r]
            vec = [a * inv_lead % p for a in vec]
            place(level, vec)
            return
        for vec in candidates:
            place(level, vec)
            if limit and len(out) >= limit:
                return

    rec(0)
    return out

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled F_p search kernels; same contracts as ``_kernels_py``."""
from libc.stdlib cimport malloc, calloc, free

BACKEND = "cython"


cdef inline long modp(long a, long p) nogil:
    a %= p
    return a + p if a < 0 else a


cdef long inv_mod(long a, long p):
    return pow(int(a), -1, int(p))


cdef class _Constraints:
    # Flattened (j, k, terms) buckets indexed by level.
    cdef int n
    cdef int *level_start   # n+1 offsets into cons arrays
    cdef int *cj
    cdef int *ck
    cdef int *term_start    # ncons+1 offsets into term arrays
    cdef int *ti
    cdef long *tc

    def __cinit__(self, T, int n, order):
        cdef int j, k, i, lev, c = 0, t = 0
        self.n = n
        pos = [0] * n
        for lev, var in enumerate(order):
            pos[var] = lev
        buckets = [[] for _ in range(n)]
        nterms = 0
        for j in range(n):
            for k in range(n):
                base = (j * n + k) * n
                terms = [(i, T[base + i]) for i in range(n) if T[base + i]]
                lev = max([pos[j], pos[k]] + [pos[i] for i, _ in terms])
                buckets[lev].append((j, k, terms))
                nterms += len(terms)
        ncons = n * n
        self.level_start = <int *> malloc((n + 1) * sizeof(int))
        self.cj = <int *> malloc(ncons * sizeof(int))
        self.ck = <int *> malloc(ncons * sizeof(int))
        self.term_start = <int *> malloc((ncons + 1) * sizeof(int))
        self.ti = <int *> malloc((nterms + 1) * sizeof(int))
        self.tc = <long *> malloc((nterms + 1) * sizeof(long))
        for lev in range(n):
            self.level_start[lev] = c
            for j, k, terms in buckets[lev]:
                self.cj[c] = j
                self.ck[c] = k
                self.term_start[c] = t
                for i, coef in terms:
                    self.ti[t] = i
                    self.tc[t] = coef
                    t += 1
                c += 1
        self.level_start[n] = c
        self.term_start[c] = t

    def __dealloc__(self):
        free(self.level_start)
        free(self.cj)
        free(self.ck)
        free(self.term_start)
        free(self.ti)
        free(self.tc)


def multiplicative_vectors(T, unit, int n, long p, int limit=0):
    cdef _Constraints cons = _Constraints(T, n, list(range(n)))
    cdef long *v = <long *> calloc(n, sizeof(long))
    cdef long *u = <long *> calloc(n, sizeof(long))
    cdef int *stack = <int *> calloc(n + 1, sizeof(int))
    cdef int level, c, t, solved = -1, i
    cdef long s, inv_lead = 0
    cdef bint ok
    out = []
    try:
        for i in range(n):
            u[i] = modp(unit[i], p)
            if u[i]:
                solved = i
        if solved < 0:
            return out
        inv_lead = inv_mod(u[solved], p)
        level = 0
        stack[0] = -1
        while level >= 0:
            if level == n:
                out.append(tuple(v[i] for i in range(n)))
                if limit and len(out) >= limit:
                    break
                level -= 1
                continue
            # advance the value at this level
            if level == solved:
                if stack[level] >= 0:
                    level -= 1
                    continue
                s = 0
                for i in range(solved):
                    s += u[i] * v[i]
                v[level] = modp((1 - s) * inv_lead, p)
                stack[level] = 0
            else:
                stack[level] += 1
                if stack[level] >= p:
                    v[level] = 0
                    level -= 1
                    continue
                v[level] = stack[level]
            ok = True
            for c in range(cons.level_start[level], cons.level_start[level + 1]):
                s = 0
                for t in range(cons.term_start[c], cons.term_start[c + 1]):
                    s += cons.tc[t] * v[cons.ti[t]]
                if modp(s - v[cons.cj[c]] * v[cons.ck[c]], p) != 0:
                    ok = False
                    break
            if ok:
                level += 1
                stack[level] = -1
        return out
    finally:
        free(v)
        free(u)
        free(stack)


def morphism_search(cA, uA, cB, uB, int n, long p, order=None, int limit=0):
    if order is None:
        order = list(range(n))
    cdef _Constraints cons = _Constraints(cA, n, order)
    cdef long *B = <long *> calloc(n * n * n, sizeof(long))
    cdef long *img = <long *> calloc(n * n, sizeof(long))      # img[var*n + r]
    cdef long *ech = <long *> calloc((n + 1) * n, sizeof(long))  # echelon rows per level
    cdef int *piv = <int *> calloc(n + 1, sizeof(int))
    cdef long *counter = <long *> calloc(n + 1, sizeof(long))
    cdef int *ordr = <int *> calloc(n, sizeof(int))
    cdef long *uAv = <long *> calloc(n, sizeof(long))
    cdef long *uBv = <long *> calloc(n, sizeof(long))
    cdef long *w = <long *> calloc(n, sizeof(long))
    cdef long *lhs = <long *> calloc(n, sizeof(long))
    cdef long *rhs = <long *> calloc(n, sizeof(long))
    cdef int level, var, r, a, b, k, c, t, q, solved = -1, solved_level = -1, pv
    cdef long x, y, s, coef, inv_lead, total
    cdef bint ok
    out = []
    try:
        for a in range(n * n * n):
            B[a] = modp(cB[a], p)
        for r in range(n):
            uAv[r] = modp(uA[r], p)
            uBv[r] = modp(uB[r], p)
        for level in range(n):
            ordr[level] = order[level]
            if uAv[ordr[level]]:
                solved = ordr[level]
                solved_level = level
        inv_lead = inv_mod(uAv[solved], p)
        total = 1
        for r in range(n):
            total *= p
        level = 0
        counter[0] = 0
        while level >= 0:
            if level == n:
                out.append(tuple(tuple(img[var * n + r] for r in range(n)) for var in range(n)))
                if limit and len(out) >= limit:
                    break
                level -= 1
                continue
            var = ordr[level]
            # produce the next candidate image for `var`
            if level == solved_level:
                if counter[level] > 0:
                    level -= 1
                    continue
                counter[level] = 1
                for r in range(n):
                    s = uBv[r]
                    for q in range(level):
                        a = ordr[q]
                        if uAv[a]:
                            s -= uAv[a] * img[a * n + r]
                    img[var * n + r] = modp(s * inv_lead, p)
            else:
                counter[level] += 1
                if counter[level] >= total:
                    level -= 1
                    continue
                x = counter[level]
                for r in range(n - 1, -1, -1):
                    img[var * n + r] = x % p
                    x //= p
            # independence: reduce against echelon rows of earlier levels
            for r in range(n):
                w[r] = img[var * n + r]
            for q in range(level):
                pv = piv[q]
                x = w[pv]
                if x:
                    for r in range(n):
                        w[r] = modp(w[r] - x * ech[q * n + r], p)
            pv = -1
            for r in range(n):
                if w[r]:
                    pv = r
                    break
            if pv < 0:
                continue
            x = inv_mod(w[pv], p)
            piv[level] = pv
            for r in range(n):
                ech[level * n + r] = modp(w[r] * x, p)
            # multiplicativity constraints decidable at this level
            ok = True
            for c in range(cons.level_start[level], cons.level_start[level + 1]):
                a = cons.cj[c]
                b = cons.ck[c]
                for r in range(n):
                    lhs[r] = 0
                    rhs[r] = 0
                for q in range(n):
                    x = img[a * n + q]
                    if x == 0:
                        continue
                    for r in range(n):
                        y = img[b * n + r]
                        if y == 0:
                            continue
                        for k in range(n):
                            coef = B[(q * n + r) * n + k]
                            if coef:
                                lhs[k] += x * y * coef
                for t in range(cons.term_start[c], cons.term_start[c + 1]):
                    coef = cons.tc[t]
                    q = cons.ti[t]
                    for r in range(n):
                        rhs[r] += coef * img[q * n + r]
                for r in range(n):
                    if modp(lhs[r] - rhs[r], p) != 0:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                level += 1
                if level < n:
                    counter[level] = 0
        return out
    finally:
        free(B)
        free(img)
        free(ech)
        free(piv)
        free(counter)
        free(ordr)
        free(uAv)
        free(uBv)
        free(w)
        free(lhs)
        free(rhs)

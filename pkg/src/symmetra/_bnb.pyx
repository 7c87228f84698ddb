# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled branch-and-bound for maximal B*[g] sets.

Same traversal as ``_bnb_py.search``; the inner loop runs without the GIL
so several subtrees can be explored from Python threads at once.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

from ._bnb_py import size_ceiling

cdef enum:
    FLUSH = 1024


cdef inline bint _fits(long x, long *elems, long k, long *rep, long g, long modulus) nogil:
    cdef long i, t
    for i in range(k):
        t = x + elems[i]
        if modulus:
            t = t % modulus
        if rep[t] + 2 > g:
            return 0
    t = 2 * x
    if modulus:
        t = t % modulus
    return rep[t] + 1 <= g


cdef inline void _place(long x, long *elems, long k, long *rep, long sign, long modulus) nogil:
    cdef long i, t
    for i in range(k):
        t = x + elems[i]
        if modulus:
            t = t % modulus
        rep[t] += 2 * sign
    t = 2 * x
    if modulus:
        t = t % modulus
    rep[t] += sign


def search(long g, long n, long modulus, prefix, long long budget, long long[::1] shared):
    cdef long lo_el, hi_el, nsum
    if modulus:
        lo_el, hi_el, nsum = 0, modulus - 1, modulus
    else:
        lo_el, hi_el, nsum = 1, n, 2 * n + 1
    cdef long ceiling = size_ceiling(g, n, modulus)
    cdef long *rep = <long *> malloc(nsum * sizeof(long))
    cdef long *elems = <long *> malloc((hi_el - lo_el + 2) * sizeof(long))
    cdef long *best_elems = <long *> malloc((hi_el - lo_el + 2) * sizeof(long))
    if rep == NULL or elems == NULL or best_elems == NULL:
        free(rep); free(elems); free(best_elems)
        raise MemoryError()
    memset(rep, 0, nsum * sizeof(long))

    cdef long k = 0, base, cand, x, found = 0, i
    cdef long long local = 0
    cdef bint exhausted = 0
    try:
        for x in prefix:
            if not _fits(x, elems, k, rep, g, modulus):
                return 0, None, False
            _place(x, elems, k, rep, 1, modulus)
            elems[k] = x
            k += 1
        base = k
        if base > shared[0]:
            shared[0] = base
            found = base
            for i in range(k):
                best_elems[i] = elems[i]
            if base >= ceiling:
                shared[2] = 1
        cand = elems[k - 1] + 1 if k else lo_el
        with nogil:
            while True:
                if shared[2] or cand > hi_el or k + hi_el - cand + 1 <= shared[0]:
                    if k == base:
                        break
                    k -= 1
                    x = elems[k]
                    _place(x, elems, k, rep, -1, modulus)
                    cand = x + 1
                    continue
                local += 1
                if local >= FLUSH:
                    shared[1] += local
                    local = 0
                    if shared[1] >= budget:
                        exhausted = 1
                        break
                if _fits(cand, elems, k, rep, g, modulus):
                    _place(cand, elems, k, rep, 1, modulus)
                    elems[k] = cand
                    k += 1
                    if k > shared[0]:
                        shared[0] = k
                        found = k
                        for i in range(k):
                            best_elems[i] = elems[i]
                        if k >= ceiling:
                            shared[2] = 1
                cand += 1
            shared[1] += local
        witness = [best_elems[i] for i in range(found)] if found else None
        return found, witness, bool(exhausted)
    finally:
        free(rep)
        free(elems)
        free(best_elems)

"""Pure-Python branch-and-bound for maximal B*[g] sets.

Mirror of ``_bnb.pyx``; used when the compiled extension is unavailable.
Both implementations must visit nodes in the same order so that node
budgets and witnesses agree.
"""

import math

BEST, NODES, STOP = 0, 1, 2
_FLUSH = 1024


def size_ceiling(g, n, modulus):
    """Counting bound: ``|S|^2 <= g * (number of possible sums)``."""
    if modulus:
        return min(modulus, math.isqrt(g * modulus))
    return min(n, math.isqrt(g * (2 * n - 1)))


def search(g, n, modulus, prefix, budget, shared):
    """Depth-first search below ``prefix`` for a larger B*[g] set.

    Elements are added in increasing order.  ``shared`` is an int64 array
    ``[best, nodes, stop]`` that may be read and written by other workers.
    Returns ``(size, witness, exhausted)`` where ``witness`` is set only when
    this call raised the shared best.
    """
    if modulus:
        lo_el, hi_el, nsum = 0, modulus - 1, modulus
    else:
        lo_el, hi_el, nsum = 1, n, 2 * n + 1
    ceiling = size_ceiling(g, n, modulus)
    rep = [0] * nsum
    elems = []

    def fits(x):
        for s in elems:
            t = x + s
            if modulus:
                t %= modulus
            if rep[t] + 2 > g:
                return False
        t = 2 * x % modulus if modulus else 2 * x
        return rep[t] + 1 <= g

    def place(x, sign):
        for s in elems:
            t = x + s
            if modulus:
                t %= modulus
            rep[t] += 2 * sign
        t = 2 * x % modulus if modulus else 2 * x
        rep[t] += sign

    for x in prefix:
        if not fits(x):
            return 0, None, False
        place(x, 1)
        elems.append(x)

    base = len(elems)
    witness = None
    found = 0
    if base > shared[BEST]:
        shared[BEST] = base
        found, witness = base, list(elems)
        if base >= ceiling:
            shared[STOP] = 1
    cand = elems[-1] + 1 if elems else lo_el
    local = 0
    exhausted = False
    while True:
        k = len(elems)
        if shared[STOP] or cand > hi_el or k + hi_el - cand + 1 <= shared[BEST]:
            if k == base:
                break
            x = elems.pop()
            place(x, -1)
            cand = x + 1
            continue
        local += 1
        if local >= _FLUSH:
            shared[NODES] += local
            local = 0
            if shared[NODES] >= budget:
                exhausted = True
                break
        if fits(cand):
            place(cand, 1)
            elems.append(cand)
            if k + 1 > shared[BEST]:
                shared[BEST] = k + 1
                found, witness = k + 1, list(elems)
                if k + 1 >= ceiling:
                    shared[STOP] = 1
        cand += 1
    shared[NODES] += local
    return found, witness, exhausted

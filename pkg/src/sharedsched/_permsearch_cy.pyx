# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled twin of ``sharedsched._permsearch``.

Same contract, same enumeration order, same deterministic tie-break;
see that module for the scaled-integer arithmetic it relies on.  Callers
must ensure all intermediate values fit in 64-bit signed integers
(``sharedsched.solvers`` checks the bound before choosing this kernel)
and that ``n <= 16``.
"""

from libc.stdlib cimport free, malloc

ctypedef long long i64
ctypedef unsigned long long u64

cdef struct Ctx:
    i64 p[16]
    i64 w[16]
    int members[16]
    int nmembers
    int k
    i64 best
    u64 best_packed
    u64 cur_packed


cdef void _descend(Ctx* ctx, unsigned int used, int depth, i64 t, i64 acc) noexcept:
    cdef int idx, j, shift
    cdef i64 pj
    if depth == ctx.k:
        if acc > ctx.best:
            ctx.best = acc
            ctx.best_packed = ctx.cur_packed
        return
    shift = ctx.k - depth - 1
    for idx in range(ctx.nmembers):
        j = ctx.members[idx]
        if used & (1u << j):
            continue
        pj = ctx.p[j] << depth
        if pj <= t:
            continue  # job no longer than its start time; prune this branch
        ctx.cur_packed |= (<u64> j) << (4 * depth)
        _descend(ctx, used | (1u << j), depth + 1, t + pj,
                 acc + ((ctx.w[j] * (pj - t)) << shift))
        ctx.cur_packed &= ~((<u64> 0xF) << (4 * depth))


def subset_best(p, w, int mask):
    """Best feasible order of the jobs in ``mask``; value scaled by 2**k."""
    cdef Ctx ctx
    cdef int n = len(p)
    cdef int j
    if n > 16:
        raise ValueError("compiled kernel supports at most 16 jobs")
    for j in range(n):
        ctx.p[j] = p[j]
        ctx.w[j] = w[j]
    ctx.nmembers = 0
    for j in range(n):
        if mask >> j & 1:
            ctx.members[ctx.nmembers] = j
            ctx.nmembers += 1
    ctx.k = ctx.nmembers
    ctx.best = -1
    ctx.best_packed = 0
    ctx.cur_packed = 0
    _descend(&ctx, 0u, 0, 0, 0)
    return ctx.best, _unpack(ctx.best_packed, ctx.k)


cdef tuple _unpack(u64 packed, int k):
    cdef int d
    return tuple((packed >> (4 * d)) & 0xF for d in range(k))


def search(p, w, int m):
    """Exhaustive optimum over all assignments and orders.

    Returns ``(value scaled by 2**n, assignment, per-processor orders)``.
    """
    cdef Ctx ctx
    cdef int n = len(p)
    cdef int j, proc, k, pos
    cdef unsigned int mask, nmasks
    cdef i64 total, best_total
    cdef i64* values = NULL
    cdef u64* packed = NULL
    cdef char* popcounts = NULL
    cdef int assign[16]
    cdef int best_assign[16]
    cdef unsigned int proc_masks[17]
    cdef unsigned int best_masks[17]

    if n > 16:
        raise ValueError("compiled kernel supports at most 16 jobs")
    if m > 16:
        raise ValueError("compiled kernel supports at most 16 processors")
    for j in range(n):
        ctx.p[j] = p[j]
        ctx.w[j] = w[j]

    nmasks = 1u << n
    values = <i64*> malloc(nmasks * sizeof(i64))
    packed = <u64*> malloc(nmasks * sizeof(u64))
    popcounts = <char*> malloc(nmasks * sizeof(char))
    if values == NULL or packed == NULL or popcounts == NULL:
        free(values)
        free(packed)
        free(popcounts)
        raise MemoryError()
    try:
        values[0] = 0
        packed[0] = 0
        popcounts[0] = 0
        for mask in range(1u, nmasks):
            ctx.nmembers = 0
            for j in range(n):
                if mask >> j & 1:
                    ctx.members[ctx.nmembers] = j
                    ctx.nmembers += 1
            k = ctx.nmembers
            ctx.k = k
            ctx.best = -1
            ctx.best_packed = 0
            ctx.cur_packed = 0
            _descend(&ctx, 0u, 0, 0, 0)
            values[mask] = ctx.best << (n - k)
            packed[mask] = ctx.best_packed
            popcounts[mask] = <char> k

        best_total = -1
        for j in range(n):
            assign[j] = 0
            best_assign[j] = 0
        for proc in range(m + 1):
            best_masks[proc] = 0
        while True:
            for proc in range(m + 1):
                proc_masks[proc] = 0
            for j in range(n):
                proc_masks[assign[j]] |= 1u << j
            total = 0
            for proc in range(1, m + 1):
                total += values[proc_masks[proc]]
            if total > best_total:
                best_total = total
                for j in range(n):
                    best_assign[j] = assign[j]
                for proc in range(m + 1):
                    best_masks[proc] = proc_masks[proc]
            # next assignment vector in lexicographic order
            pos = n - 1
            while pos >= 0 and assign[pos] == m:
                assign[pos] = 0
                pos -= 1
            if pos < 0:
                break
            assign[pos] += 1

        orders = tuple(
            _unpack(packed[best_masks[proc]], popcounts[best_masks[proc]])
            for proc in range(1, m + 1)
        )
        return best_total, tuple(best_assign[j] for j in range(n)), orders
    finally:
        free(values)
        free(packed)
        free(popcounts)

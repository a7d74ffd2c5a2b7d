"""Exhaustive search core over assignments and per-processor job orders.

Inputs are pre-scaled integer processing times and weights (callers clear
dyadic denominators with a common power of two), so everything here is
integer arithmetic: with integer ``p`` the start time of position ``i``
scaled by ``2**(i-1)`` obeys ``t_1 = 0``, ``t_{i+1} = t_i + p_i * 2**(i-1)``,
a job is feasible at depth ``d`` iff ``p << d > t``, and sequence values
accumulate exactly when scaled by ``2**k``.  ``search`` returns the best
total scaled by ``2**n``.

This is the pure-Python twin of the compiled kernel in
``_permsearch_cy``; the two must return bit-identical results, including
the deterministic tie-break: lexicographically smallest assignment vector
(0 = private only, then processors 1..m), then lexicographically smallest
per-processor orders.  Both enumerate assignments and permutation
prefixes in exactly that order and keep the first strict maximum.
"""

from __future__ import annotations

from itertools import product

__all__ = ["search", "subset_best"]


def subset_best(p: list[int], w: list[int], mask: int) -> tuple[int, tuple[int, ...]]:
    """Best feasible order of the jobs in ``mask`` and its value scaled by 2**k.

    Every non-empty subset has a feasible order (ascending processing
    times always works), so the result is always defined.
    """
    members = [j for j in range(len(p)) if mask >> j & 1]
    k = len(members)
    best = -1
    best_perm: tuple[int, ...] = ()
    perm: list[int] = []

    def descend(used: int, depth: int, t: int, acc: int) -> None:
        nonlocal best, best_perm
        if depth == k:
            if acc > best:
                best = acc
                best_perm = tuple(perm)
            return
        shift = k - depth - 1
        for j in members:
            if used >> j & 1:
                continue
            pj = p[j] << depth
            if pj <= t:
                continue  # job no longer than its start time; prune this branch
            perm.append(j)
            descend(used | (1 << j), depth + 1, t + pj, acc + ((w[j] * (pj - t)) << shift))
            perm.pop()

    descend(0, 0, 0, 0)
    return best, best_perm


def search(
    p: list[int], w: list[int], m: int
) -> tuple[int, tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Exhaustive optimum over all assignments and orders.

    Returns ``(value scaled by 2**n, assignment, per-processor orders)``
    where ``assignment[j]`` is 0 for private-only or the 1-based shared
    processor index.
    """
    n = len(p)
    values = [0] * (1 << n)
    perms: list[tuple[int, ...]] = [()] * (1 << n)
    for mask in range(1, 1 << n):
        k = mask.bit_count()
        value, perm = subset_best(p, w, mask)
        values[mask] = value << (n - k)
        perms[mask] = perm

    best_total = -1
    best_assign: tuple[int, ...] = ()
    best_orders: tuple[tuple[int, ...], ...] = ((),) * m
    for assign in product(range(m + 1), repeat=n):
        masks = [0] * (m + 1)
        for j, proc in enumerate(assign):
            masks[proc] |= 1 << j
        total = 0
        for proc in range(1, m + 1):
            total += values[masks[proc]]
        if total > best_total:
            best_total = total
            best_assign = assign
            best_orders = tuple(perms[masks[proc]] for proc in range(1, m + 1))
    return best_total, best_assign, best_orders

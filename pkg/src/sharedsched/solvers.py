"""Schedule optimization: equal-weight exact solver, exhaustive oracle,
and exchange-based local search.

The equal-weight solver runs in O(n log n): sort jobs by descending
processing time, deal them round-robin across the m shared processors
(so any two jobs on one processor carry different positional weights
1/2, 1/4, ..., and the first ``n - (ceil(n/m) - 1) * m`` processors get
one extra job), then run each processor's jobs in ascending order.

``brute_force`` is the exact oracle: it enumerates every assignment of
each job to {private-only, processor 1..m} and every per-processor
order, skipping infeasible orders, and returns a maximizer with a
deterministic tie-break.  The hot inner loop runs on a compiled kernel
when the extension module built from ``_permsearch_cy.pyx`` is
importable and the scaled integers fit in 64 bits; otherwise a
pure-Python twin with identical semantics takes over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _permsearch as _pure_kernel
from .dyadic import ZERO, Dyadic, as_dyadic
from .engine import SyncSchedule, check_feasible, evaluate, evaluate_sequence
from .model import Instance, Job

try:
    from . import _permsearch_cy as _compiled_kernel
except ImportError:  # extension not built; pure fallback
    _compiled_kernel = None

__all__ = [
    "PositionalWeights",
    "SearchLimits",
    "InstanceTooLargeError",
    "UnequalWeightsError",
    "positional_weights",
    "solve_equal_weights",
    "equal_weights_value",
    "single_processor_ascending",
    "brute_force",
    "improve_by_exchanges",
    "search_backend",
]

_INT64_BOUND = 1 << 62


class InstanceTooLargeError(ValueError):
    """Exhaustive search refused: instance exceeds the search limits."""


class UnequalWeightsError(ValueError):
    """The equal-weight solver was given unequal weights."""


@dataclass(frozen=True)
class SearchLimits:
    """Guard rails for exhaustive search."""

    max_jobs: int = 8
    max_candidates: int = 10_000_000

    def __post_init__(self):
        if self.max_jobs < 1 or self.max_candidates < 1:
            raise ValueError("search limits must be positive")


@dataclass(frozen=True)
class PositionalWeights:
    """The non-increasing weight sequence matched against sorted jobs.

    ``k`` is the largest per-processor job count, ``tail`` the number of
    processors receiving a k-th job, and ``weights`` holds exactly n
    entries: m copies each of 1/2, ..., 1/2^(k-1), then tail copies of
    1/2^k.
    """

    k: int
    tail: int
    weights: tuple[Dyadic, ...]


def positional_weights(n: int, m: int) -> PositionalWeights:
    if n < 0 or m < 1:
        raise ValueError("need n >= 0 and m >= 1")
    if n == 0:
        return PositionalWeights(0, 0, ())
    k = math.ceil(n / m)
    tail = n - (k - 1) * m
    weights = [Dyadic(1, depth) for depth in range(1, k) for _ in range(m)]
    weights.extend(Dyadic(1, k) for _ in range(tail))
    return PositionalWeights(k, tail, tuple(weights))


def _descending(jobs: Iterable[Job]) -> list[Job]:
    # stable two-pass sort: descending p, ties broken by ascending id
    return sorted(sorted(jobs, key=lambda j: j.id), key=lambda j: j.p, reverse=True)


def _ascending(jobs: Iterable[Job]) -> list[Job]:
    return sorted(sorted(jobs, key=lambda j: j.id), key=lambda j: j.p)


def solve_equal_weights(inst: Instance) -> SyncSchedule:
    """Optimal schedule for equal weights; every job lands on a shared
    processor and every per-processor order is ascending."""
    if not inst.equal_weights():
        raise UnequalWeightsError("weights are not all equal; use brute_force instead")
    buckets: list[list[Job]] = [[] for _ in range(inst.m)]
    for idx, job in enumerate(_descending(inst.jobs)):
        buckets[idx % inst.m].append(job)
    return SyncSchedule(
        tuple(tuple(job.id for job in _ascending(bucket)) for bucket in buckets)
    )


def equal_weights_value(partition: Sequence[Sequence]) -> Dyadic:
    """Unit-weight value of ascending per-processor job lists:
    sum of p_i / 2^(size+1-i) over each list."""
    total = ZERO
    for group in partition:
        times = [item.p if isinstance(item, Job) else as_dyadic(item) for item in group]
        for a, b in zip(times, times[1:]):
            if b < a:
                raise ValueError(f"list not ascending: {a} precedes {b}")
        size = len(times)
        for idx, p in enumerate(times, start=1):
            total = total + p.mul_pow2(-(size + 1 - idx))
    return total


def single_processor_ascending(jobs: Sequence) -> Dyadic:
    """Best single-shared-processor value for unit weights: run jobs in
    ascending order, yielding p_n/2 + p_{n-1}/4 + ... + p_1/2^n."""
    times = sorted(item.p if isinstance(item, Job) else as_dyadic(item) for item in jobs)
    return equal_weights_value([times])


def search_backend() -> str:
    """Which exhaustive-search twin is active: "compiled" or "pure"."""
    return "pure" if _compiled_kernel is None else "compiled"


def _scaled_integers(inst: Instance) -> tuple[list[int], list[int], int]:
    """Clear denominators: integer p and w lists plus the total scaling
    exponent (value results come back scaled by 2**(n + exponent))."""
    p_exp = max((job.p.exponent for job in inst.jobs), default=0)
    w_exp = max((job.w.exponent for job in inst.jobs), default=0)
    ps = [job.p.mantissa << (p_exp - job.p.exponent) for job in inst.jobs]
    ws = [job.w.mantissa << (w_exp - job.w.exponent) for job in inst.jobs]
    return ps, ws, p_exp + w_exp


def brute_force(
    inst: Instance, limits: SearchLimits = SearchLimits()
) -> tuple[SyncSchedule, Dyadic]:
    """Exact optimum by exhaustive enumeration.

    Every assignment of each job to {private-only, processor 1..m} is
    combined with every feasible per-processor order.  Ties are broken
    deterministically: lexicographically smallest assignment vector (in
    instance job order), then lexicographically smallest orders.
    """
    n = len(inst)
    if n > limits.max_jobs:
        raise InstanceTooLargeError(
            f"{n} jobs exceeds the limit of {limits.max_jobs}; raise max_jobs to force"
        )
    order_work = sum(math.comb(n, k) * math.factorial(k) for k in range(n + 1))
    assign_work = (inst.m + 1) ** n
    if order_work + assign_work > limits.max_candidates:
        raise InstanceTooLargeError(
            f"about {order_work + assign_work} candidates exceeds "
            f"max_candidates = {limits.max_candidates}"
        )
    ps, ws, exponent = _scaled_integers(inst)
    kernel = _pure_kernel
    if _compiled_kernel is not None and n <= 16 and inst.m <= 16:
        bound = n * max(ps, default=0) * max(ws, default=0) << max(n - 1, 0)
        if bound < _INT64_BOUND:
            kernel = _compiled_kernel
    best_num, _, orders = kernel.search(ps, ws, inst.m)
    schedule = SyncSchedule(
        tuple(tuple(inst.jobs[j].id for j in order) for order in orders)
    )
    return schedule, Dyadic(best_num, n + exponent)


def improve_by_exchanges(schedule: SyncSchedule, inst: Instance) -> SyncSchedule:
    """Local search by adjacent transpositions.

    Applies any adjacent swap that keeps the order feasible and strictly
    increases the value, recomputing true values by full evaluation
    rather than trusting the closed-form delta outside its inclusivity
    hypothesis.  Terminates because each applied swap strictly increases
    the total and there are finitely many orders.
    """
    evaluate(schedule, inst)  # rejects infeasible input with a located error
    sequences = [list(seq) for seq in schedule.sequences]
    improved = True
    while improved:
        improved = False
        for seq in sequences:
            pos = 0
            while pos < len(seq) - 1:
                swapped = list(seq)
                swapped[pos], swapped[pos + 1] = swapped[pos + 1], swapped[pos]
                new_jobs = [inst.job(job_id) for job_id in swapped]
                if check_feasible(new_jobs) is None:
                    old_jobs = [inst.job(job_id) for job_id in seq]
                    if evaluate_sequence(new_jobs) > evaluate_sequence(old_jobs):
                        seq[:] = swapped
                        improved = True
                pos += 1
    return SyncSchedule(tuple(tuple(seq) for seq in sequences))

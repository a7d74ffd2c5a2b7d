"""Synchronized-schedule mathematics.

A synchronized schedule finishes every shared job on the shared and the
private processor at the same instant, so the per-processor job order
determines everything: with jobs ``j_1..j_k`` in order, job ``j_i``
occupies ``(T_i, T_{i+1})`` on the shared processor where::

    T_1 = 0,    T_{i+1} = (T_i + p_i) / 2

and contributes overlap ``(p_i - T_i) / 2``.  The order is feasible when
``p_i > T_i`` strictly at every position; a job with ``p_i = T_i`` would
get a zero-length shared interval, so such orders are rejected rather
than silently dropping the job.

This module evaluates schedules through that recurrence and through an
equivalent bilinear matrix form, computes the exact value change of an
adjacent transposition, and provides the structural predicates (V-shape,
processing-time/weight inclusivity, reverse duality) used by the solvers
and the hardness generator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .dyadic import ZERO, Dyadic, as_dyadic
from .model import Instance, InstanceError, Job

__all__ = [
    "SyncSchedule",
    "EvalReport",
    "ProcessorEval",
    "InfeasibleScheduleError",
    "start_times",
    "check_feasible",
    "evaluate",
    "evaluate_sequence",
    "evaluate_matrix",
    "lower_halving_matrix",
    "upper_halving_matrix",
    "bilinear",
    "suffix_weight",
    "exchange_delta",
    "is_processing_time_inclusive",
    "is_weight_inclusive",
    "is_v_shaped",
    "reverse_dual",
    "parse_sync_schedule",
    "serialize_sync_schedule",
]


class InfeasibleScheduleError(ValueError):
    """A job order puts some job at a start time at or past its length."""

    def __init__(self, position: int, job_id: str | None = None, processor: int | None = None):
        self.position = position
        self.job_id = job_id
        self.processor = processor
        where = f"position {position}"
        if job_id is not None:
            where += f" (job {job_id!r})"
        if processor is not None:
            where = f"processor {processor}, " + where
        super().__init__(f"infeasible schedule: {where}: job no longer than its start time")


@dataclass(frozen=True)
class SyncSchedule:
    """Per-shared-processor job orders; unlisted jobs run privately only."""

    sequences: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        sequences = tuple(tuple(seq) for seq in self.sequences)
        object.__setattr__(self, "sequences", sequences)
        seen = set()
        for seq in sequences:
            for job_id in seq:
                if job_id in seen:
                    raise InstanceError(f"job {job_id!r} appears more than once in schedule")
                seen.add(job_id)

    @property
    def m(self) -> int:
        return len(self.sequences)

    def scheduled_ids(self) -> set[str]:
        return {job_id for seq in self.sequences for job_id in seq}


@dataclass(frozen=True)
class ProcessorEval:
    """Start times and overlaps for one shared processor."""

    id: int
    order: tuple[str, ...]
    start_times: tuple[Dyadic, ...]  # length k+1; last entry is the makespan
    overlaps: tuple[Dyadic, ...]  # length k


@dataclass(frozen=True)
class EvalReport:
    processors: tuple[ProcessorEval, ...]
    job_overlaps: dict[str, Dyadic] = field(compare=False)
    total: Dyadic = ZERO


def _times(items: Iterable) -> list[Dyadic]:
    return [item.p if isinstance(item, Job) else as_dyadic(item) for item in items]


def _weights(items: Iterable) -> list[Dyadic]:
    return [item.w if isinstance(item, Job) else as_dyadic(item) for item in items]


def start_times(perm: Sequence) -> list[Dyadic]:
    """T_1..T_{k+1} for a job order: T_1 = 0, T_{i+1} = (T_i + p_i)/2."""
    result = [ZERO]
    for p in _times(perm):
        result.append((result[-1] + p).half())
    return result


def check_feasible(perm: Sequence) -> int | None:
    """Return the first 1-based position with ``p_i <= T_i``, or None if ok."""
    t = ZERO
    for i, p in enumerate(_times(perm), start=1):
        if not p > t:
            return i
        t = (t + p).half()
    return None


def evaluate_sequence(perm: Sequence) -> Dyadic:
    """Total weighted overlap of one shared-processor order via the recurrence."""
    t = ZERO
    total = ZERO
    for p, w in zip(_times(perm), _weights(perm)):
        total = total + (p - t).half() * w
        t = (t + p).half()
    return total


def evaluate(schedule: SyncSchedule, inst: Instance) -> EvalReport:
    """Evaluate a synchronized schedule against an instance.

    Jobs absent from every sequence contribute zero overlap.  Raises
    :class:`InfeasibleScheduleError` naming the processor and position
    when some job is no longer than its start time.
    """
    if schedule.m != inst.m:
        raise InstanceError(f"schedule has {schedule.m} processors, instance has {inst.m}")
    overlaps = {job.id: ZERO for job in inst.jobs}
    processors = []
    total = ZERO
    for proc_idx, seq in enumerate(schedule.sequences, start=1):
        jobs = [inst.job(job_id) for job_id in seq]
        violation = check_feasible(jobs)
        if violation is not None:
            raise InfeasibleScheduleError(violation, seq[violation - 1], proc_idx)
        times = start_times(jobs)
        proc_overlaps = []
        for i, job in enumerate(jobs):
            bar = (job.p - times[i]).half()
            proc_overlaps.append(bar)
            overlaps[job.id] = bar
            total = total + bar * job.w
        processors.append(
            ProcessorEval(proc_idx, tuple(seq), tuple(times), tuple(proc_overlaps))
        )
    return EvalReport(tuple(processors), overlaps, total)


@lru_cache(maxsize=None)
def lower_halving_matrix(k: int) -> tuple[tuple[Dyadic, ...], ...]:
    """k x k matrix with entry 1/2^(i-j) strictly below the diagonal."""
    return tuple(
        tuple(Dyadic(1, i - j) if i > j else ZERO for j in range(k)) for i in range(k)
    )


@lru_cache(maxsize=None)
def upper_halving_matrix(k: int) -> tuple[tuple[Dyadic, ...], ...]:
    """Transpose of :func:`lower_halving_matrix`."""
    lower = lower_halving_matrix(k)
    return tuple(tuple(lower[j][i] for j in range(k)) for i in range(k))


def bilinear(left: Sequence[Dyadic], matrix, right: Sequence[Dyadic]) -> Dyadic:
    """Row vector * matrix * column vector, all exact."""
    total = ZERO
    for i, li in enumerate(left):
        row = matrix[i]
        for j, rj in enumerate(right):
            entry = row[j]
            if entry.mantissa:
                total = total + li * entry * rj
    return total


def evaluate_matrix(perm: Sequence) -> Dyadic:
    """Total weighted overlap via the bilinear form.

    Computes ``P I W^T / 2 - W L P^T / 2`` with L the lower halving
    matrix; an independent route that must agree exactly with
    :func:`evaluate_sequence`.
    """
    ps = _times(perm)
    ws = _weights(perm)
    k = len(ps)
    diag = ZERO
    for p, w in zip(ps, ws):
        diag = diag + p * w
    cross = bilinear(ws, lower_halving_matrix(k), ps)
    return diag.half() - cross.half()


def _suffix_weight(ws: Sequence[Dyadic], i: int) -> Dyadic:
    # sum over l = i+2 .. k of w_l / 2^(l-i-1); empty range gives zero
    total = ZERO
    for l in range(i + 2, len(ws) + 1):
        total = total + ws[l - 1].mul_pow2(-(l - i - 1))
    return total


def suffix_weight(perm: Sequence, i: int) -> Dyadic:
    """Geometrically discounted weight of the jobs after position i+1.

    Defined for ``-1 <= i <= k-2``; the sum runs over positions i+2..k
    with weight ``w_l / 2^(l-i-1)``.
    """
    k = len(perm)
    if not -1 <= i <= k - 2:
        raise IndexError(f"suffix weight index {i} out of range [-1, {k - 2}]")
    return _suffix_weight(_weights(perm), i)


def exchange_delta(perm: Sequence, i: int) -> Dyadic:
    """Exact value lost by swapping the jobs at positions i and i+1 (1-based).

    Returns value(perm) - value(swapped).  The closed form is exact
    whenever both orders are feasible; a processing-time-inclusive job
    set guarantees that for every adjacent swap.
    """
    k = len(perm)
    if not 1 <= i <= k - 1:
        raise IndexError(f"exchange position {i} out of range [1, {k - 1}]")
    ps = _times(perm)
    ws = _weights(perm)
    t_i = start_times(perm)[i - 1]
    w_i, w_next = ws[i - 1], ws[i]
    p_i, p_next = ps[i - 1], ps[i]
    suffix = _suffix_weight(ws, i)  # weights after both swapped positions
    return (
        ((w_next - w_i) * t_i).mul_pow2(-2)
        + ((p_i - p_next) * suffix).mul_pow2(-2)
        + (w_i * p_next).mul_pow2(-2)
        - (w_next * p_i).mul_pow2(-2)
    )


def _is_inclusive(values: list[Dyadic]) -> bool:
    values = sorted(values)
    k = len(values)
    if k <= 1:
        return True
    # makespan of all-but-the-shortest in ascending order, closed form
    makespan = ZERO
    for l in range(1, k):
        makespan = makespan + values[l].mul_pow2(-(k - l))
    return makespan < values[0]


def is_processing_time_inclusive(jobs: Iterable) -> bool:
    """True when the ascending makespan of all-but-the-shortest job is
    strictly below the shortest processing time.

    Such a job set can be placed on a shared processor in any order, and
    any order stays feasible; empty and singleton sets qualify vacuously.
    """
    return _is_inclusive(_times(jobs))


def is_weight_inclusive(jobs: Iterable) -> bool:
    """Same test as :func:`is_processing_time_inclusive`, applied to weights."""
    return _is_inclusive(_weights(jobs))


def is_v_shaped(perm: Sequence) -> bool:
    """Processing times non-increasing then non-decreasing (ties allowed)."""
    ps = _times(perm)
    i = 1
    while i < len(ps) and ps[i] <= ps[i - 1]:
        i += 1
    while i < len(ps) and ps[i] >= ps[i - 1]:
        i += 1
    return i >= len(ps)


def reverse_dual(perm: Sequence[Job]) -> list[Job]:
    """Reverse the order and swap each job's processing time with its weight.

    Value-preserving whenever the job set is both processing-time- and
    weight-inclusive; those hypotheses are checked and violations raise
    ValueError, since without them the reversed order may be infeasible.
    """
    jobs = list(perm)
    if not is_processing_time_inclusive(jobs):
        raise ValueError("job set is not processing-time-inclusive; duality not guaranteed")
    if not is_weight_inclusive(jobs):
        raise ValueError("job set is not weight-inclusive; duality not guaranteed")
    return [Job(job.id, job.w, job.p) for job in reversed(jobs)]


# -- JSON wire format ---------------------------------------------------------


def parse_sync_schedule(text: bytes | str, m: int) -> SyncSchedule:
    """Parse ``{"processors": [{"id": <int>, "order": [<job-id>, ...]}, ...]}``.

    Processors absent from the list are empty; ids must lie in 1..m.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict) or "processors" not in data:
        raise InstanceError('schedule must be an object with key "processors"')
    raw = data["processors"]
    if not isinstance(raw, list):
        raise InstanceError('"processors" must be a list')
    sequences: list[tuple[str, ...]] = [() for _ in range(m)]
    seen = set()
    for entry in raw:
        if not isinstance(entry, dict) or "id" not in entry or "order" not in entry:
            raise InstanceError('each processor needs keys "id" and "order"')
        pid = entry["id"]
        if isinstance(pid, bool) or not isinstance(pid, int) or not 1 <= pid <= m:
            raise InstanceError(f"processor id {pid!r} out of range 1..{m}")
        if pid in seen:
            raise InstanceError(f"duplicate processor id {pid}")
        seen.add(pid)
        order = entry["order"]
        if not isinstance(order, list) or not all(isinstance(j, str) for j in order):
            raise InstanceError(f"processor {pid}: order must be a list of job ids")
        sequences[pid - 1] = tuple(order)
    return SyncSchedule(tuple(sequences))


def serialize_sync_schedule(schedule: SyncSchedule) -> str:
    data = {
        "processors": [
            {"id": idx, "order": list(seq)}
            for idx, seq in enumerate(schedule.sequences, start=1)
        ]
    }
    return json.dumps(data, sort_keys=True)

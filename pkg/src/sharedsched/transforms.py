"""Interval-level schedules and their canonicalization to synchronized form.

A general schedule assigns each job a private interval ``(0, c)`` plus a
set of open, disjoint intervals on at most one shared processor; the two
interval families together must cover exactly the job's processing time.
The pipeline here rewrites any valid schedule, without ever decreasing
its total weighted overlap, into a synchronized schedule in which every
shared job finishes on both of its processors at the same instant:

1. ``normalize``          - shared work past the private completion is
                            moved onto the private processor (value kept),
2. ``compact_idle``       - idle holes before the last completion are
                            filled by splitting work off the latest job
                            (value never decreases),
3. ``merge_preemptions``  - left-shifts squeeze each job into a single
                            shared interval (value kept),
4. ``reorder``            - adjacent swaps align the shared completion
                            order with the private completion order
                            (value kept),
5. a push/pull loop       - private/shared completion times are equalized
                            one job at a time, evicting a job entirely to
                            its private processor whenever that pays
                            better (value never decreases).

``pull`` and ``push`` are the two elementary rebalancing moves; each
trades work between a job's shared and private processors and ripples a
geometrically decaying correction through the jobs behind it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .dyadic import ZERO, Dyadic, as_dyadic
from .engine import SyncSchedule, evaluate
from .model import Instance, InstanceError, json_to_dyadic

__all__ = [
    "JobPlacement",
    "GeneralSchedule",
    "InvalidScheduleError",
    "PreconditionError",
    "SynchronizeReport",
    "validate",
    "value_general",
    "normalize",
    "compact_idle",
    "merge_preemptions",
    "reorder",
    "pull",
    "push",
    "synchronize",
    "synchronize_detailed",
    "from_synchronized",
    "is_normal",
    "is_gap_free",
    "is_non_preemptive",
    "is_ordered",
    "is_synchronized",
    "parse_general_schedule",
    "serialize_general_schedule",
]


class InvalidScheduleError(ValueError):
    """A general schedule violating its structural invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid schedule: " + "; ".join(self.violations))


class PreconditionError(ValueError):
    """A transformation applied outside its stated precondition."""


@dataclass(frozen=True)
class JobPlacement:
    """Where one job runs: shared processor, shared intervals, private span."""

    processor: int | None
    intervals: tuple[tuple[Dyadic, Dyadic], ...]
    private_completion: Dyadic

    def __post_init__(self):
        intervals = tuple((as_dyadic(a), as_dyadic(b)) for a, b in self.intervals)
        object.__setattr__(self, "intervals", tuple(sorted(intervals)))
        object.__setattr__(self, "private_completion", as_dyadic(self.private_completion))

    @property
    def shared_length(self) -> Dyadic:
        total = ZERO
        for a, b in self.intervals:
            total = total + (b - a)
        return total

    @property
    def shared_completion(self) -> Dyadic:
        """Completion time on the shared processor; zero when unused."""
        return self.intervals[-1][1] if self.intervals else ZERO


@dataclass(frozen=True)
class GeneralSchedule:
    """Immutable map from job id to its placement."""

    placements: Mapping[str, JobPlacement]

    def __post_init__(self):
        object.__setattr__(self, "placements", dict(self.placements))

    def processors(self) -> list[int]:
        return sorted(
            {p.processor for p in self.placements.values() if p.processor is not None}
        )

    def chunks_on(self, processor: int) -> list[tuple[Dyadic, Dyadic, str]]:
        """All (start, end, job id) intervals on a processor, by start time."""
        chunks = [
            (a, b, job_id)
            for job_id, placement in self.placements.items()
            if placement.processor == processor
            for a, b in placement.intervals
        ]
        chunks.sort(key=lambda c: (c[0], c[1], c[2]))
        return chunks


# -- internal mutable working state --------------------------------------------
#
# state: {job_id: [processor | None, [(start, end), ...] sorted, private_completion]}


def _to_state(g: GeneralSchedule) -> dict:
    return {
        job_id: [p.processor, list(p.intervals), p.private_completion]
        for job_id, p in g.placements.items()
    }


def _from_state(state: dict) -> GeneralSchedule:
    placements = {}
    for job_id, (proc, intervals, private) in state.items():
        kept = tuple((a, b) for a, b in sorted(intervals) if a < b)
        placements[job_id] = JobPlacement(proc if kept else None, kept, private)
    return GeneralSchedule(placements)


def _state_chunks(state: dict, proc: int) -> list[list]:
    chunks = [
        [a, b, job_id]
        for job_id, (p, intervals, _) in state.items()
        if p == proc
        for a, b in intervals
    ]
    chunks.sort(key=lambda c: (c[0], c[1], c[2]))
    return chunks


def _state_procs(state: dict) -> list[int]:
    return sorted({p for p, _, _ in state.values() if p is not None})


def _set_chunks(state: dict, proc: int, chunks: Iterable) -> None:
    """Replace every interval on a processor from a chunk list."""
    by_job: dict[str, list] = {}
    for a, b, job_id in chunks:
        if a < b:
            by_job.setdefault(job_id, []).append((a, b))
    for job_id, entry in state.items():
        if entry[0] == proc:
            entry[1] = sorted(by_job.pop(job_id, []))
            if not entry[1]:
                entry[0] = None
    for job_id, intervals in by_job.items():
        state[job_id][0] = proc
        state[job_id][1] = sorted(intervals)


def _positions(state: dict, proc: int) -> list[str]:
    return [job_id for _, _, job_id in _state_chunks(state, proc)]


# -- validation ------------------------------------------------------------------


def _structure_violations(g: GeneralSchedule, inst: Instance | None = None) -> list[str]:
    out = []
    ids = set(g.placements)
    if inst is not None:
        inst_ids = {job.id for job in inst.jobs}
        for missing in sorted(inst_ids - ids):
            out.append(f"job {missing!r}: no placement")
        for extra in sorted(ids - inst_ids):
            out.append(f"job {extra!r}: not in instance")
    for job_id in sorted(ids):
        p = g.placements[job_id]
        if p.private_completion.sign < 0:
            out.append(f"job {job_id!r}: private completion < 0")
        if p.processor is None and p.intervals:
            out.append(f"job {job_id!r}: shared intervals without a processor")
        if p.processor is not None:
            if p.processor < 1:
                out.append(f"job {job_id!r}: processor {p.processor} < 1")
            elif inst is not None and p.processor > inst.m:
                out.append(f"job {job_id!r}: processor {p.processor} > m = {inst.m}")
        prev_end = None
        for a, b in p.intervals:
            if a.sign < 0:
                out.append(f"job {job_id!r}: interval ({a}, {b}) starts before 0")
            if not a < b:
                out.append(f"job {job_id!r}: empty or reversed interval ({a}, {b})")
            if prev_end is not None and a < prev_end:
                out.append(f"job {job_id!r}: overlapping own intervals at {a}")
            prev_end = b
        if inst is not None and inst.has_job(job_id):
            total = p.shared_length + p.private_completion
            expected = inst.job(job_id).p
            if total != expected:
                out.append(
                    f"job {job_id!r}: length mismatch (intervals sum to {total}, p = {expected})"
                )
    for proc in g.processors():
        chunks = g.chunks_on(proc)
        for (a1, b1, j1), (a2, b2, j2) in zip(chunks, chunks[1:]):
            if a2 < b1:
                out.append(
                    f"processor {proc}: jobs {j1!r} and {j2!r} overlap in ({a2}, {min(b1, b2)})"
                )
    return out


def validate(g: GeneralSchedule, inst: Instance) -> list[str]:
    """All invariant violations, each naming the job/processor/interval."""
    return _structure_violations(g, inst)


def _require_valid(g: GeneralSchedule, inst: Instance | None = None) -> None:
    violations = _structure_violations(g, inst)
    if violations:
        raise InvalidScheduleError(violations)


def value_general(g: GeneralSchedule, inst: Instance) -> Dyadic:
    """Total weighted overlap: per job, the measure of its shared
    intervals intersected with its private span ``(0, c)``."""
    _require_valid(g, inst)
    total = ZERO
    for job_id, p in g.placements.items():
        cutoff = p.private_completion
        w = inst.job(job_id).w
        for a, b in p.intervals:
            hi = b if b < cutoff else cutoff
            if a < hi:
                total = total + (hi - a) * w
    return total


# -- predicates -------------------------------------------------------------------


def is_normal(g: GeneralSchedule) -> bool:
    """Every job finishes on the shared processor no later than privately."""
    return all(
        not p.intervals or p.shared_completion <= p.private_completion
        for p in g.placements.values()
    )


def is_gap_free(g: GeneralSchedule) -> bool:
    """No idle time on any shared processor before its last completion."""
    for proc in g.processors():
        cursor = ZERO
        for a, b, _ in g.chunks_on(proc):
            if a != cursor:
                return False
            cursor = b
    return True


def is_non_preemptive(g: GeneralSchedule) -> bool:
    return all(len(p.intervals) <= 1 for p in g.placements.values())


def is_ordered(g: GeneralSchedule) -> bool:
    """Normal, non-preemptive, and on each processor the private
    completions are non-decreasing along the shared order (the workable
    reading of "both completion orders agree" once ties are allowed)."""
    if not (is_normal(g) and is_non_preemptive(g)):
        return False
    for proc in g.processors():
        chunks = g.chunks_on(proc)
        for (_, _, j1), (_, _, j2) in zip(chunks, chunks[1:]):
            if g.placements[j1].private_completion > g.placements[j2].private_completion:
                return False
    return True


def is_synchronized(g: GeneralSchedule) -> bool:
    """Normal, non-preemptive, and every shared job finishes on both
    processors at the same instant."""
    if not (is_normal(g) and is_non_preemptive(g)):
        return False
    return all(
        not p.intervals or p.shared_completion == p.private_completion
        for p in g.placements.values()
    )


# -- pipeline passes ---------------------------------------------------------------


def normalize(g: GeneralSchedule) -> GeneralSchedule:
    """Move shared work past each job's private completion onto the
    private processor, extending it; the value is unchanged because the
    removed pieces never overlapped the private span."""
    _require_valid(g)
    state = _to_state(g)
    for entry in state.values():
        proc, intervals, private = entry
        removed = ZERO
        kept = []
        for a, b in intervals:
            if b <= private:
                kept.append((a, b))
            else:
                lo = a if a > private else private
                removed = removed + (b - lo)
                if a < private:
                    kept.append((a, private))
        entry[1] = kept
        entry[2] = private + removed
    return _from_state(state)


def compact_idle(g: GeneralSchedule) -> GeneralSchedule:
    """Fill every idle hole that precedes a later completion.

    Each move takes the latest-finishing job on the processor, clips a
    piece of length ``e`` from the end of both its private span and its
    final shared interval, and re-executes both pieces inside the hole;
    that raises the value by ``e`` times the job's weight.  Requires a
    valid normal schedule.
    """
    _require_valid(g)
    if not is_normal(g):
        raise PreconditionError("compact_idle requires a normal schedule")
    state = _to_state(g)
    for proc in _state_procs(state):
        while True:
            chunks = _state_chunks(state, proc)
            if not chunks:
                break
            gaps = []
            cursor = ZERO
            for a, b, _ in chunks:
                if cursor < a:
                    gaps.append((cursor, a))
                cursor = b
            if not gaps:
                break
            lo, hi = gaps[-1]
            last_start, last_end, owner = chunks[-1]
            eps = min((hi - lo).half(), last_end - last_start)
            chunks[-1][1] = last_end - eps
            chunks.append([lo, lo + eps + eps, owner])
            state[owner][2] = state[owner][2] - eps
            _set_chunks(state, proc, chunks)
    return _from_state(state)


def merge_preemptions(g: GeneralSchedule) -> GeneralSchedule:
    """Left-shift until every job occupies one shared interval.

    Repeatedly takes a preempted job's first two intervals, slides the
    work separating them left by the first interval's length, and
    reattaches that first piece directly before the second.  Completion
    times never grow and the value is unchanged.  Requires valid+normal.
    """
    _require_valid(g)
    if not is_normal(g):
        raise PreconditionError("merge_preemptions requires a normal schedule")
    state = _to_state(g)
    for proc in _state_procs(state):
        while True:
            preempted = sorted(
                (entry[1][0][0], job_id)
                for job_id, entry in state.items()
                if entry[0] == proc and len(entry[1]) > 1
            )
            if not preempted:
                break
            _, job_id = preempted[0]
            (l, r), (l2, _) = state[job_id][1][0], state[job_id][1][1]
            shift = r - l
            chunks = []
            for a, b, jid in _state_chunks(state, proc):
                if jid == job_id and a == l and b == r:
                    continue  # relocated below
                if r <= a and b <= l2:
                    chunks.append([a - shift, b - shift, jid])
                else:
                    chunks.append([a, b, jid])
            chunks.append([l2 - shift, l2, job_id])
            # fuse the job's now-touching intervals
            merged: list[list] = []
            for a, b, jid in sorted(chunks):
                if merged and merged[-1][2] == jid and merged[-1][1] == a:
                    merged[-1][1] = b
                else:
                    merged.append([a, b, jid])
            _set_chunks(state, proc, merged)
    return _from_state(state)


def reorder(g: GeneralSchedule) -> GeneralSchedule:
    """Adjacent swaps until each processor's shared order agrees with the
    private completion order; value and normality are preserved."""
    _require_valid(g)
    if not is_normal(g):
        raise PreconditionError("reorder requires a normal schedule")
    if not is_non_preemptive(g):
        raise PreconditionError("reorder requires a non-preemptive schedule")
    state = _to_state(g)
    for proc in _state_procs(state):
        chunks = _state_chunks(state, proc)
        changed = True
        while changed:
            changed = False
            for t in range(len(chunks) - 1):
                a1, b1, j1 = chunks[t]
                a2, b2, j2 = chunks[t + 1]
                if state[j1][2] > state[j2][2]:
                    len1, len2 = b1 - a1, b2 - a2
                    chunks[t] = [a1, a1 + len2, j2]
                    chunks[t + 1] = [b2 - len1, b2, j1]
                    changed = True
        _set_chunks(state, proc, chunks)
    return _from_state(state)


# -- elementary rebalancing moves ----------------------------------------------
#
# The state-level helpers assume: single intervals, a contiguous span from
# position i-1 to the end of the processor, and in-range eps.  The public
# wrappers check the full preconditions before delegating.


def _apply_pull(state: dict, order: list[str], i: int, eps: Dyadic) -> None:
    prev_id = order[i - 2]
    a_prev, b_prev = state[prev_id][1][0]
    state[prev_id][1] = [(a_prev, b_prev - eps)]
    state[prev_id][2] = state[prev_id][2] + eps
    if state[prev_id][1][0][0] == state[prev_id][1][0][1]:
        state[prev_id][1] = []
        state[prev_id][0] = None
    prev_end = b_prev - eps
    delta = eps
    for job_id in order[i - 1 :]:
        delta = delta.half()
        _, ((_, b),), private = state[job_id]
        state[job_id][1] = [(prev_end, b - delta)]
        state[job_id][2] = private - delta
        prev_end = b - delta


def _apply_push(state: dict, order: list[str], i: int, eps: Dyadic) -> None:
    prev_id = order[i - 2]
    a_prev, b_prev = state[prev_id][1][0]
    state[prev_id][1] = [(a_prev, b_prev + eps)]
    state[prev_id][2] = state[prev_id][2] - eps
    prev_end = b_prev + eps
    delta = eps
    for job_id in order[i - 1 :]:
        delta = delta.half()
        _, ((_, b),), private = state[job_id]
        new_end = b + delta
        if prev_end < new_end:
            state[job_id][1] = [(prev_end, new_end)]
        else:
            state[job_id][1] = []  # shared interval shrank to nothing: evicted
            state[job_id][0] = None
        state[job_id][2] = private + delta
        prev_end = new_end


def _check_span(state: dict, proc: int, first: int, order: list[str]) -> None:
    """Positions first..k must be contiguous (no idle between them)."""
    prev_end = None
    for job_id in order[first - 1 :]:
        a, b = state[job_id][1][0]
        if prev_end is not None and a != prev_end:
            raise PreconditionError(
                f"processor {proc}: idle time before job {job_id!r}; "
                "the move's exact value accounting needs a contiguous span"
            )
        prev_end = b


def pull(g: GeneralSchedule, processor: int, i: int, eps) -> GeneralSchedule:
    """Pull the job at position ``i`` (1-based, ``i >= 2``) earlier by ``eps``.

    The preceding job hands ``eps`` of shared time back to its private
    processor (leaving the shared processor entirely when ``eps`` is its
    whole interval); every job from position ``i`` on slides left,
    finishing ``eps / 2**(l-i+1)`` earlier on both processors.  Requires
    an ordered schedule whose jobs at positions ``i..k`` are synchronized
    and ``0 < eps <=`` the preceding job's shared interval length.  The
    value changes by exactly ``-eps*w[i-1] + eps*sum(w[l] / 2**(l-i+1))``.
    """
    eps = as_dyadic(eps)
    _require_valid(g)
    if not is_ordered(g):
        raise PreconditionError("pull requires an ordered schedule")
    state = _to_state(g)
    order = _positions(state, processor)
    k = len(order)
    if not 2 <= i <= k:
        raise PreconditionError(f"pull position {i} out of range 2..{k}")
    _check_span(state, processor, i - 1, order)
    for job_id in order[i - 1 :]:
        if state[job_id][1][-1][1] != state[job_id][2]:
            raise PreconditionError(
                f"job {job_id!r} at or after position {i} is not synchronized"
            )
    prev_id = order[i - 2]
    a_prev, b_prev = state[prev_id][1][0]
    if not ZERO < eps <= b_prev - a_prev:
        raise PreconditionError(
            f"eps = {eps} outside (0, {b_prev - a_prev}], the shared length of {prev_id!r}"
        )
    _apply_pull(state, order, i, eps)
    return _from_state(state)


def push(g: GeneralSchedule, processor: int, i: int, eps) -> GeneralSchedule:
    """Push the job at position ``i`` (1-based, ``i >= 2``) later by ``eps``.

    The inverse of :func:`pull`: the preceding job converts ``eps`` of
    private time into shared time, and every job from position ``i`` on
    slides right, finishing ``eps / 2**(l-i+1)`` later on both processors
    while its shared interval shrinks by that amount (shrinking to
    nothing evicts the job to its private processor).  Bounds: ``eps``
    may not exceed half the preceding job's private/shared completion
    slack, nor ``2**(l-i+1)`` times any later job's shared length.  The
    value changes by exactly ``+eps*w[i-1] - eps*sum(w[l] / 2**(l-i+1))``.
    """
    eps = as_dyadic(eps)
    _require_valid(g)
    if not is_normal(g):
        raise PreconditionError("push requires a normal schedule")
    if not is_non_preemptive(g):
        raise PreconditionError("push requires a non-preemptive schedule")
    state = _to_state(g)
    order = _positions(state, processor)
    k = len(order)
    if not 2 <= i <= k:
        raise PreconditionError(f"push position {i} out of range 2..{k}")
    _check_span(state, processor, i - 1, order)
    prev_id = order[i - 2]
    slack = state[prev_id][2] - state[prev_id][1][0][1]
    if not ZERO < eps <= slack.half():
        raise PreconditionError(
            f"eps = {eps} outside (0, {slack.half()}], half the slack of {prev_id!r}"
        )
    delta = eps
    for pos, job_id in enumerate(order[i - 1 :], start=i):
        delta = delta.half()
        (a, b), = state[job_id][1]
        if delta > b - a:
            raise PreconditionError(
                f"eps = {eps} exceeds 2^{pos - i + 1} times the shared length of {job_id!r}"
            )
    _apply_push(state, order, i, eps)
    return _from_state(state)


# -- full synchronization --------------------------------------------------------


@dataclass(frozen=True)
class SynchronizeReport:
    schedule: SyncSchedule
    general: GeneralSchedule
    value_before: Dyadic
    value_after: Dyadic
    rebalance_steps: int


def synchronize_detailed(g: GeneralSchedule, inst: Instance) -> SynchronizeReport:
    """Run the full pipeline and report values and the step count.

    After the four canonicalization passes, the rebalancing loop performs
    at most ``2 * len(inst)`` push/pull steps: each step either
    synchronizes one more job or permanently evicts a job to its private
    processor.  Pushing is only applied when the preceding job's weight
    is at least the discounted weight of the synchronized jobs behind it,
    so the value never decreases; otherwise the preceding job is evicted
    by a full-length pull, which strictly gains value.
    """
    _require_valid(g, inst)
    value_before = value_general(g, inst)
    work = reorder(merge_preemptions(compact_idle(normalize(g))))
    state = _to_state(work)
    limit = 2 * len(inst)
    steps = 0
    while True:
        target = None
        for proc in _state_procs(state):
            order = _positions(state, proc)
            unsync = [
                pos
                for pos, job_id in enumerate(order, start=1)
                if state[job_id][1][-1][1] != state[job_id][2]
            ]
            if unsync:
                target = (proc, order, unsync[-1])
                break
        if target is None:
            break
        if steps >= limit:  # the progress argument caps the loop; never expected
            raise RuntimeError("synchronization failed to make progress")
        steps += 1
        proc, order, last_unsync = target
        k = len(order)
        if last_unsync == k:
            # no synchronized suffix to ripple through: trade half the
            # final job's slack from private to shared time
            job_id = order[-1]
            _, intervals, private = state[job_id]
            a, b = intervals[-1]
            eps = (private - b).half()
            state[job_id][1][-1] = (a, b + eps)
            state[job_id][2] = private - eps
            continue
        i = last_unsync + 1
        prev_id = order[last_unsync - 1]
        discounted = ZERO
        scale = 0
        for job_id in order[i - 1 :]:
            scale -= 1
            discounted = discounted + inst.job(job_id).w.mul_pow2(scale)
        if inst.job(prev_id).w >= discounted:
            eps = (state[prev_id][2] - state[prev_id][1][0][1]).half()
            for offset, job_id in enumerate(order[i - 1 :], start=1):
                (a, b), = state[job_id][1]
                eps = min(eps, (b - a).mul_pow2(offset))
            _apply_push(state, order, i, eps)
        else:
            # pushing the predecessor would lose value; evict it instead
            (a_prev, b_prev), = state[prev_id][1]
            _apply_pull(state, order, i, b_prev - a_prev)
    final = _from_state(state)
    sequences = tuple(
        tuple(_positions(state, proc)) for proc in range(1, inst.m + 1)
    )
    schedule = SyncSchedule(sequences)
    return SynchronizeReport(
        schedule, final, value_before, value_general(final, inst), steps
    )


def synchronize(g: GeneralSchedule, inst: Instance) -> SyncSchedule:
    """Canonicalize a valid schedule into a synchronized one of no
    smaller total weighted overlap."""
    return synchronize_detailed(g, inst).schedule


def from_synchronized(schedule: SyncSchedule, inst: Instance) -> GeneralSchedule:
    """Expand per-processor job orders into explicit intervals."""
    report = evaluate(schedule, inst)
    placements = {}
    for proc in report.processors:
        times = proc.start_times
        for idx, job_id in enumerate(proc.order):
            placements[job_id] = JobPlacement(
                proc.id, ((times[idx], times[idx + 1]),), times[idx + 1]
            )
    for job in inst.jobs:
        if job.id not in placements:
            placements[job.id] = JobPlacement(None, (), job.p)
    return GeneralSchedule(placements)


# -- JSON wire format ---------------------------------------------------------


def parse_general_schedule(text: bytes | str) -> GeneralSchedule:
    """Parse ``{"jobs": [{"id", "shared_processor", "shared_intervals",
    "private_completion"}, ...]}`` with dyadic-string endpoints."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict) or "jobs" not in data or not isinstance(data["jobs"], list):
        raise InstanceError('general schedule must be an object with a "jobs" list')
    placements = {}
    for idx, entry in enumerate(data["jobs"]):
        if not isinstance(entry, dict):
            raise InstanceError(f"jobs[{idx}] must be an object")
        missing = {"id", "shared_processor", "shared_intervals", "private_completion"} - set(entry)
        if missing:
            raise InstanceError(f"jobs[{idx}] missing keys: {sorted(missing)}")
        job_id = entry["id"]
        if not isinstance(job_id, str):
            raise InstanceError(f"jobs[{idx}]: id must be a string")
        if job_id in placements:
            raise InstanceError(f"duplicate job id {job_id!r} in schedule")
        proc = entry["shared_processor"]
        if proc is not None and (isinstance(proc, bool) or not isinstance(proc, int)):
            raise InstanceError(f"job {job_id!r}: shared_processor must be an int or null")
        raw_intervals = entry["shared_intervals"]
        if not isinstance(raw_intervals, list):
            raise InstanceError(f"job {job_id!r}: shared_intervals must be a list")
        intervals = []
        for pair in raw_intervals:
            if not isinstance(pair, list) or len(pair) != 2:
                raise InstanceError(f"job {job_id!r}: each interval must be a [start, end] pair")
            intervals.append(
                (
                    json_to_dyadic(pair[0], f"job {job_id!r} interval start"),
                    json_to_dyadic(pair[1], f"job {job_id!r} interval end"),
                )
            )
        placements[job_id] = JobPlacement(
            proc,
            tuple(intervals),
            json_to_dyadic(entry["private_completion"], f"job {job_id!r} private completion"),
        )
    return GeneralSchedule(placements)


def serialize_general_schedule(g: GeneralSchedule) -> str:
    data = {
        "jobs": [
            {
                "id": job_id,
                "shared_processor": p.processor,
                "shared_intervals": [[str(a), str(b)] for a, b in p.intervals],
                "private_completion": str(p.private_completion),
            }
            for job_id, p in sorted(g.placements.items())
        ]
    }
    return json.dumps(data, sort_keys=True)

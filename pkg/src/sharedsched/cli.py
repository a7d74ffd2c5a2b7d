"""Command-line front end.

Subcommands:

* ``solve``        equal-weight exact solver
* ``brute``        exhaustive oracle (small instances)
* ``eval``         evaluate a synchronized schedule
* ``transform``    canonicalize a general schedule to synchronized form
* ``check``        structural property report (v-shape, ordered, ...)
* ``gen-n3dm``     generate a hard instance from a matching input
* ``decide-n3dm``  exhaustively decide a small matching input
* ``gantt``        time-proportional ASCII chart

Exit codes are stable: 0 ok, 2 parse/validation error, 3 wrong solver
for the instance, 4 size limit exceeded, 5 infeasible or invalid
schedule.  All numeric output is exact dyadic strings; identical inputs
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import engine, hardness, solvers, transforms
from .dyadic import Dyadic
from .model import Instance, InstanceError, parse_instance, serialize_instance

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_WRONG_SOLVER = 3
EXIT_TOO_LARGE = 4
EXIT_INFEASIBLE = 5

_PROPERTIES = ("v-shape", "ordered", "synchronized", "inclusive")


def _emit(data) -> None:
    print(json.dumps(data, sort_keys=True))


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc


def _load_instance(path: str) -> Instance:
    return parse_instance(_read(path))


def _schedule_json(schedule: engine.SyncSchedule) -> dict:
    return json.loads(engine.serialize_sync_schedule(schedule))


def _report_json(report: engine.EvalReport) -> dict:
    return {
        "processors": [
            {
                "id": proc.id,
                "order": list(proc.order),
                "start_times": [str(t) for t in proc.start_times],
                "overlaps": [str(t) for t in proc.overlaps],
            }
            for proc in report.processors
        ],
        "job_overlaps": {job_id: str(t) for job_id, t in report.job_overlaps.items()},
        "total": str(report.total),
    }


def _cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    schedule = solvers.solve_equal_weights(inst)
    report = engine.evaluate(schedule, inst)
    _emit({"schedule": _schedule_json(schedule), "value": str(report.total)})
    return EXIT_OK


def _cmd_brute(args) -> int:
    inst = _load_instance(args.instance)
    limits = solvers.SearchLimits(max_jobs=args.max_jobs)
    schedule, value = solvers.brute_force(inst, limits)
    _emit({"schedule": _schedule_json(schedule), "value": str(value)})
    return EXIT_OK


def _cmd_eval(args) -> int:
    inst = _load_instance(args.instance)
    schedule = engine.parse_sync_schedule(_read(args.schedule), inst.m)
    for job_id in schedule.scheduled_ids():
        inst.job(job_id)  # unknown ids are a parse-level error
    report = engine.evaluate(schedule, inst)
    _emit(_report_json(report))
    return EXIT_OK


def _cmd_transform(args) -> int:
    inst = _load_instance(args.instance)
    general = transforms.parse_general_schedule(_read(args.schedule))
    report = transforms.synchronize_detailed(general, inst)
    _emit(
        {
            "schedule": _schedule_json(report.schedule),
            "value_before": str(report.value_before),
            "value_after": str(report.value_after),
            "value_delta": str(report.value_after - report.value_before),
        }
    )
    return EXIT_OK


def _sequences_for_check(text: str, inst: Instance):
    """Either schedule format, reduced to per-processor job-id orders
    plus (for the general format) the parsed schedule itself."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed JSON: {exc}") from exc
    if isinstance(data, dict) and "processors" in data:
        schedule = engine.parse_sync_schedule(text, inst.m)
        for job_id in schedule.scheduled_ids():
            inst.job(job_id)
        return schedule.sequences, None
    general = transforms.parse_general_schedule(text)
    violations = transforms.validate(general, inst)
    if violations:
        raise transforms.InvalidScheduleError(violations)
    sequences = tuple(
        tuple(job_id for _, _, job_id in general.chunks_on(proc))
        for proc in range(1, inst.m + 1)
    )
    return sequences, general


def _cmd_check(args) -> int:
    inst = _load_instance(args.instance)
    wanted = args.properties.split(",") if args.properties else list(_PROPERTIES)
    for name in wanted:
        if name not in _PROPERTIES:
            raise InstanceError(
                f"unknown property {name!r}; choose from {', '.join(_PROPERTIES)}"
            )
    sequences, general = _sequences_for_check(_read(args.schedule), inst)
    results = {}
    for name in wanted:
        failures = []
        if name == "v-shape":
            for proc, seq in enumerate(sequences, start=1):
                if not engine.is_v_shaped([inst.job(j) for j in seq]):
                    failures.append(f"processor {proc}: order {list(seq)} is not V-shaped")
        elif name == "ordered":
            if general is not None:
                if not transforms.is_ordered(general):
                    failures.append("schedule is not ordered")
            else:
                for proc, seq in enumerate(sequences, start=1):
                    bad = engine.check_feasible([inst.job(j) for j in seq])
                    if bad is not None:
                        failures.append(f"processor {proc}: infeasible at position {bad}")
        elif name == "synchronized":
            if general is not None:
                if not transforms.is_synchronized(general):
                    failures.append("schedule is not synchronized")
            else:
                for proc, seq in enumerate(sequences, start=1):
                    bad = engine.check_feasible([inst.job(j) for j in seq])
                    if bad is not None:
                        failures.append(f"processor {proc}: infeasible at position {bad}")
        elif name == "inclusive":
            if not engine.is_processing_time_inclusive(inst.jobs):
                failures.append("job set is not processing-time-inclusive")
            if not engine.is_weight_inclusive(inst.jobs):
                failures.append("job set is not weight-inclusive")
        results[name] = {"pass": not failures, "failures": failures}
    _emit({"properties": results})
    return EXIT_OK


def _cmd_gen_n3dm(args) -> int:
    inp = hardness.parse_n3dm(_read(args.n3dm))
    hi = hardness.gen_instance(inp)
    instance_json = serialize_instance(hi.instance)
    provenance_json = hardness.serialize_provenance(hi)
    if args.out:
        out = Path(args.out)
        sidecar_name = (
            out.name[: -len(".json")] if out.name.endswith(".json") else out.name
        ) + ".provenance.json"
        out.write_text(instance_json + "\n", encoding="utf-8")
        (out.parent / sidecar_name).write_text(provenance_json + "\n", encoding="utf-8")
        _emit({"M": hi.M, "m_param": hi.m_param, "K": hi.K})
    else:
        _emit(
            {
                "M": hi.M,
                "m_param": hi.m_param,
                "K": hi.K,
                "instance": json.loads(instance_json),
                "provenance": json.loads(provenance_json),
            }
        )
    return EXIT_OK


def _cmd_decide_n3dm(args) -> int:
    inp = hardness.parse_n3dm(_read(args.n3dm))
    solvable, witness = hardness.decide(inp)
    _emit(
        {
            "solvable": solvable,
            "witness": [list(triple) for triple in witness] if witness else None,
        }
    )
    return EXIT_OK


def _bar_column(t: Dyadic, horizon: Dyadic, width: int) -> int:
    # floor(t * width / horizon) in exact integer arithmetic
    num = (t.mantissa << horizon.exponent) * width
    den = horizon.mantissa << t.exponent
    return num // den


def _cmd_gantt(args) -> int:
    inst = _load_instance(args.instance)
    schedule = engine.parse_sync_schedule(_read(args.schedule), inst.m)
    for job_id in schedule.scheduled_ids():
        inst.job(job_id)
    report = engine.evaluate(schedule, inst)
    width = args.width
    private_end = {}
    for job in inst.jobs:
        private_end[job.id] = job.p
    segments = {proc.id: [] for proc in report.processors}
    horizon = Dyadic(0)
    for proc in report.processors:
        for idx, job_id in enumerate(proc.order):
            start, end = proc.start_times[idx], proc.start_times[idx + 1]
            segments[proc.id].append((start, end, job_id))
            private_end[job_id] = end  # synchronized: private span matches
    for end in private_end.values():
        horizon = max(horizon, end)
    for proc in report.processors:
        if proc.start_times:
            horizon = max(horizon, proc.start_times[-1])
    lines = [f"time 0..{horizon}  ({width} columns)"]
    labels = [f"M{proc.id}" for proc in report.processors]
    labels += [f"P {job.id}" for job in inst.jobs]
    pad = max((len(label) for label in labels), default=0)
    if horizon.sign <= 0:
        for label in labels:
            lines.append(f"{label.ljust(pad)} |{' ' * width}|")
    else:
        for proc in report.processors:
            cells = [" "] * width
            for start, end, job_id in segments[proc.id]:
                lo = _bar_column(start, horizon, width)
                hi = max(_bar_column(end, horizon, width), lo + 1)
                hi = min(hi, width)
                fill = (job_id * ((hi - lo) // len(job_id) + 1))[: hi - lo]
                cells[lo:hi] = list(fill)
            lines.append(f"{f'M{proc.id}'.ljust(pad)} |{''.join(cells)}|")
        for job in inst.jobs:
            cells = [" "] * width
            hi = max(_bar_column(private_end[job.id], horizon, width), 1)
            hi = min(hi, width)
            cells[0:hi] = ["="] * hi
            lines.append(f"{f'P {job.id}'.ljust(pad)} |{''.join(cells)}|")
    print("\n".join(lines))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sharedsched",
        description="Exact tools for shared-processor overlap scheduling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="exact solver for equal weights")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("brute", help="exhaustive exact search")
    p.add_argument("instance")
    p.add_argument("--max-jobs", type=int, default=8)
    p.set_defaults(func=_cmd_brute)

    p = sub.add_parser("eval", help="evaluate a synchronized schedule")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("transform", help="canonicalize a general schedule")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.add_argument("--to", choices=["synchronized"], default="synchronized")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("check", help="schedule/instance property report")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.add_argument("--properties", default="")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("gen-n3dm", help="generate a hard instance from a matching input")
    p.add_argument("n3dm")
    p.add_argument("--out", default=None, help="write instance here plus a .provenance.json sidecar")
    p.set_defaults(func=_cmd_gen_n3dm)

    p = sub.add_parser("decide-n3dm", help="exhaustively decide a small matching input")
    p.add_argument("n3dm")
    p.set_defaults(func=_cmd_decide_n3dm)

    p = sub.add_parser("gantt", help="ASCII chart of a synchronized schedule")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.add_argument("--width", type=int, default=60)
    p.set_defaults(func=_cmd_gantt)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except solvers.UnequalWeightsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_WRONG_SOLVER
    except solvers.InstanceTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except engine.InfeasibleScheduleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (transforms.InvalidScheduleError, transforms.PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())

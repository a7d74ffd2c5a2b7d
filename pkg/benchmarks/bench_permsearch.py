#!/usr/bin/env python3
"""Benchmark the compiled exhaustive-search kernel against its pure twin.

Both backends receive identical scaled-integer inputs and must return
bit-identical results; this script verifies that while timing them.

    python benchmarks/bench_permsearch.py --sizes 5,6,7,8 --m 2 --repeat 3
"""

import argparse
import random
import time

from sharedsched import _permsearch

try:
    from sharedsched import _permsearch_cy
except ImportError:
    _permsearch_cy = None


def time_backend(backend, cases, repeat):
    runs = []
    result = None
    for _ in range(repeat):
        started = time.perf_counter()
        result = [backend.search(p, w, m) for p, w, m in cases]
        runs.append(time.perf_counter() - started)
    return min(runs), result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="5,6,7,8", help="comma list of job counts")
    parser.add_argument("--m", type=int, default=2, help="shared processors")
    parser.add_argument("--instances", type=int, default=20, help="instances per size")
    parser.add_argument("--repeat", type=int, default=3, help="timing repetitions")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    print(f"{'n':>3} {'cases':>6} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for n in (int(s) for s in args.sizes.split(",")):
        cases = [
            (
                [rng.randint(1, 100) for _ in range(n)],
                [rng.randint(1, 100) for _ in range(n)],
                args.m,
            )
            for _ in range(args.instances)
        ]
        pure_time, pure_result = time_backend(_permsearch, cases, args.repeat)
        if _permsearch_cy is None:
            print(f"{n:>3} {len(cases):>6} {pure_time:>10.4f} {'(not built)':>13} {'-':>8}")
            continue
        fast_time, fast_result = time_backend(_permsearch_cy, cases, args.repeat)
        if pure_result != fast_result:
            raise SystemExit(f"backend results differ at n={n}")
        print(
            f"{n:>3} {len(cases):>6} {pure_time:>10.4f} {fast_time:>13.4f} "
            f"{pure_time / fast_time:>7.1f}x"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--size N]
"""

import argparse
import random
import timeit

from snapstream.kernels import BACKENDS


def workloads(n: int, seed: int = 0):
    rng = random.Random(seed)
    rows = [{x: rng.randint(1, 3) for x in rng.sample("abcdefgh", rng.randint(0, 4))} for _ in range(n)]
    counts = [rng.randint(0, 4) for _ in range(n)]
    events = list(range(n))
    for i in range(n):  # bounded disorder
        j = min(n - 1, i + rng.randint(0, 8))
        events[i], events[j] = events[j], events[i]
    return {
        "sliding_bag_counts": lambda k: k.sliding_bag_counts(rows, 25),
        "layer_runs": lambda k: k.layer_runs(counts),
        "bsort_order": lambda k: k.bsort_order(events, 8),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=20_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if "cython" not in BACKENDS:
        print("compiled backend not built; only the fallback is timed")
    print(f"{'kernel':<20} {'backend':<8} {'best ms':>9} {'speedup':>8}")
    for name, run in workloads(args.size).items():
        best = {}
        for backend in sorted(BACKENDS, reverse=True):
            k = BACKENDS[backend]
            best[backend] = min(timeit.repeat(lambda: run(k), number=1, repeat=args.repeat)) * 1e3
        for backend, ms in best.items():
            speed = best["python"] / ms
            print(f"{name:<20} {backend:<8} {ms:9.2f} {speed:7.1f}x")


if __name__ == "__main__":
    main()

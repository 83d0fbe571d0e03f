#!/usr/bin/env python3
"""Wall time of the pipeline as n grows at fixed excess r.

Measures separate() only (generation is excluded), with the cyclic GC
quiesced around each timed run, and reports per-step growth ratios of
the median. Use --stage-times for a per-stage breakdown instead.
"""

import argparse
import gc
import statistics
import sys
from time import perf_counter

from atsep.gen import GenSpec, generate
from atsep.pipeline import separate


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=lambda s: tuple(int(x) for x in s.split(",")),
                        default=(10_000, 100_000, 1_000_000))
    parser.add_argument("--r", type=int, default=16)
    parser.add_argument("--seeds", type=int, default=5)
    parser.add_argument("--stage-times", action="store_true")
    args = parser.parse_args()

    medians = []
    for n in args.n:
        walls = []
        stage_acc: dict[str, int] = {}
        for seed in range(args.seeds):
            G = generate(GenSpec(n=n, r=args.r, seed=seed))
            timings: dict[str, int] = {}
            gc.collect()
            gc.disable()
            t0 = perf_counter()
            separate(G, timings=timings if args.stage_times else None)
            walls.append(perf_counter() - t0)
            gc.enable()
            for k, v in timings.items():
                stage_acc[k] = stage_acc.get(k, 0) + v
        med = statistics.median(walls)
        medians.append(med)
        print(f"n={n}: median {med * 1000:.1f} ms over {args.seeds} seeds")
        if args.stage_times:
            for k, v in stage_acc.items():
                print(f"  {k}: {v / args.seeds / 1e6:.1f} ms avg")
    for a, b, na, nb in zip(medians, medians[1:], args.n, args.n[1:]):
        print(f"ratio {na} -> {nb}: {b / a:.2f} (size factor {nb / na:.0f})")
    return 0


if __name__ == "__main__":
    sys.exit(main())

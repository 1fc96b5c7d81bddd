"""Compare the compiled and pure-Python closure kernels.

    python benchmarks/bench_kernel.py --m -1 --generations 8 9 10 --repeat 3

For each generation count the exact closure is run with every available
backend; the best wall time of ``--repeat`` runs is reported, and the
outputs are checked to be identical.
"""

import argparse
import sys
import time

from origami_rings import kernel
from origami_rings.closure import OrigamiConfig, run_closure
from origami_rings.quadfield import FieldTag
from origami_rings.targets import direction_set


def best_time(cfg: OrigamiConfig, repeat: int):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = run_closure(cfg)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=-1)
    ap.add_argument("--generations", type=int, nargs="+", default=[8, 9, 10])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--max-points", type=int, default=2_000_000)
    args = ap.parse_args(argv)

    tag = FieldTag(args.m)
    dirs = tuple(direction_set(tag))
    if "cython" not in kernel.BACKENDS:
        print("compiled kernel not built; only the python backend is timed", file=sys.stderr)
    print(f"m={args.m} workers={args.workers}")
    print("generations\tpoints\t" + "\t".join(f"{b}_s" for b in kernel.BACKENDS) + "\tspeedup")
    for g in args.generations:
        times = {}
        outputs = []
        for b in kernel.BACKENDS:
            cfg = OrigamiConfig(tag, dirs, max_generations=g, max_points=args.max_points,
                                workers=args.workers, backend=b)
            times[b], ps = best_time(cfg, args.repeat)
            outputs.append((ps.den, ps.xs, ps.ys, ps.gens))
        if any(o != outputs[0] for o in outputs):
            print(f"backends disagree at {g} generations", file=sys.stderr)
            return 1
        speedup = times["python"] / times["cython"] if "cython" in times else 1.0
        cols = "\t".join(f"{times[b]:.3f}" for b in kernel.BACKENDS)
        print(f"{g}\t{len(outputs[0][1])}\t{cols}\t{speedup:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

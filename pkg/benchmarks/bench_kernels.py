"""Time the compiled row-reduction kernel against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--sizes 8 16 32] [--repeat 5]

Both kernels receive identical random rational matrices; their outputs are
compared before any timing is reported.
"""
import argparse
import random
import statistics
import sys
import time
from fractions import Fraction

from lie2kit import _pykernels

try:
    from lie2kit import _kernels
except ImportError:
    _kernels = None


def random_rows(rng, n, m, density=0.5):
    rows = []
    for _ in range(n):
        rows.append([Fraction(rng.randint(-9, 9), rng.randint(1, 4)) if rng.random() < density
                     else Fraction(0) for _ in range(m)])
    return rows


def timed(fn, rows, ncols, repeat):
    out, samples = None, []
    for _ in range(repeat):
        data = [list(r) for r in rows]
        t = time.perf_counter()
        out = fn(data, ncols)
        samples.append(time.perf_counter() - t)
    return out, statistics.median(samples)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 48])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernel not built; nothing to compare", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    print(f"{'size':>6} {'python (ms)':>12} {'compiled (ms)':>14} {'speedup':>8}")
    for n in args.sizes:
        rows = random_rows(rng, n, n + n // 2)
        a, ta = timed(_pykernels.rref, rows, n + n // 2, args.repeat)
        b, tb = timed(_kernels.rref, rows, n + n // 2, args.repeat)
        if a != b:
            print(f"kernels disagree at size {n}", file=sys.stderr)
            return 2
        print(f"{n:>6} {ta * 1e3:>12.2f} {tb * 1e3:>14.2f} {ta / tb:>7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Benchmark the compiled GF(2) elimination kernel against the pure fallback.

Runs seeded random-matrix reductions through both backends at a few sizes,
checks they agree, and prints a timing table. No test framework required:

    python3 benchmarks/bench_gf2.py [--seed N] [--repeat N]
"""

import argparse
import random
import sys
import time

from nilgrowth import gf2

SIZES = (
    (64, 128),      # rows, columns
    (256, 512),
    (1024, 1024),
    (2048, 4096),
)


def random_rows(rng: random.Random, nrows: int, nbits: int) -> list:
    return [rng.getrandbits(nbits) for _ in range(nrows)]


def time_backend(mode: str, rows: list, nbits: int, repeat: int):
    gf2.set_backend(mode)
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = gf2.rref(rows, nbits)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    have_ext = gf2.backend_name() == "ext"
    if not have_ext:
        print("compiled extension unavailable; timing the fallback only")

    rng = random.Random(args.seed)
    print(f"{'rows':>6} {'cols':>6} {'py (ms)':>10} {'ext (ms)':>10} {'speedup':>8}")
    ok = True
    for nrows, nbits in SIZES:
        rows = random_rows(rng, nrows, nbits)
        t_py, r_py = time_backend("py", rows, nbits, args.repeat)
        if have_ext:
            t_ext, r_ext = time_backend("ext", rows, nbits, args.repeat)
            if r_py != r_ext:
                ok = False
            print(f"{nrows:>6} {nbits:>6} {t_py * 1e3:>10.2f} "
                  f"{t_ext * 1e3:>10.2f} {t_py / t_ext:>7.1f}x")
        else:
            print(f"{nrows:>6} {nbits:>6} {t_py * 1e3:>10.2f} {'-':>10} {'-':>8}")
    gf2.set_backend("auto")
    if not ok:
        print("MISMATCH: backends disagree", file=sys.stderr)
        return 1
    print("backends agree on all sizes" if have_ext else "done")
    return 0


if __name__ == "__main__":
    sys.exit(main())

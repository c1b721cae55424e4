"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from polyadic import kernels
from polyadic.groups import cyclic_group
from polyadic.library import symmetric_group
from polyadic.polyadic import derive, derive_theta


def cases():
    Z8 = cyclic_group(8)
    S3 = symmetric_group(3)
    yield "der(Z8), n=3", derive_theta(Z8, (-np.arange(8)) % 8, 0, 3)
    yield "der(S3), n=4", derive(S3, 4)
    yield "der(Z5), n=5", derive(cyclic_group(5), 5)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = kernels.available_backends()
    names = [b.BACKEND for b in backends]
    print(f"{'case':<16}{'kernel':<14}" + "".join(f"{n:>12}" for n in names))
    for label, P in cases():
        m, n, flat = P.size, P.arity, P.flat
        Z2 = derive(cyclic_group(2), n)
        work = {
            "latin": lambda k: k.latin_violation(flat, m, n),
            "assoc": lambda k: k.assoc_violation(flat, m, n),
            "hom": lambda k: k.hom_violation(flat, flat, np.arange(m, dtype=np.int64), m, m, n),
            "hom-enum": lambda k: k.enumerate_hom_maps(flat, Z2.flat, m, 2, n),
        }
        for kernel, fn in work.items():
            row = [best_of(lambda: fn(b), args.repeat) for b in backends]
            print(f"{label:<16}{kernel:<14}" + "".join(f"{t * 1e3:>10.2f}ms" for t in row))


if __name__ == "__main__":
    main()

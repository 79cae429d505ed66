"""Compare the compiled prime-field kernels with the pure-Python versions.

Usage::

    python benchmarks/bench_kernels.py [--repeat N] [--seed S]

Each kernel is run on the same seeded inputs through both backends; the
results are checked for equality before timings are reported.
"""

import argparse
import random
import sys
import timeit

from shortmodels import _pykernels

try:
    from shortmodels import _ckernels
except ImportError:  # extension not built
    _ckernels = None

P = 2147483629


def cases(rng):
    def mat(nr, nc, p):
        return [[rng.randrange(p) for _ in range(nc)] for _ in range(nr)]

    def vec(n, p):
        return [rng.randrange(1, p) for _ in range(n)]

    return [
        ("rref_mod_p 60x80 p=31", "rref_mod_p", (mat(60, 80, 31), 80, 31)),
        ("rref_mod_p 120x150 p=2^31-19", "rref_mod_p", (mat(120, 150, P), 150, P)),
        ("rank_mod_p 150x150 p=101", "rank_mod_p", (mat(150, 150, 101), 150, 101)),
        ("polmul_mod_p deg 400 p=7", "polmul_mod_p", (vec(401, 7), vec(401, 7), 7)),
        ("polmul_mod_p deg 400 p=2^31-19", "polmul_mod_p", (vec(401, P), vec(401, P), P)),
        ("series_mul_mod_p m=500 p=13", "series_mul_mod_p", (vec(500, 13), vec(500, 13), 500, 13)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not available; nothing to compare", file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    print(f"{'kernel':34s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for label, name, inputs in cases(rng):
        fpy, fc = getattr(_pykernels, name), getattr(_ckernels, name)
        if fpy(*inputs) != fc(*inputs):
            print(f"{label}: backends disagree", file=sys.stderr)
            return 2
        tpy = min(timeit.repeat(lambda: fpy(*inputs), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: fc(*inputs), number=1, repeat=args.repeat))
        print(f"{label:34s} {1e3 * tpy:12.2f} {1e3 * tc:12.2f} {tpy / tc:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

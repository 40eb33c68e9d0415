"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends get identical random inputs; results are checked for equality
before timings are printed.
"""

import argparse
import random
import timeit

from implicitkit import _fallback

try:
    from implicitkit import _kernels
except ImportError:
    _kernels = None

P = 32003


def rref_case(rng, n, m):
    return [[rng.randrange(P) for _ in range(m)] for _ in range(n)]


def det_case(rng, r, nvars):
    return [[[rng.randrange(P) for _ in range(nvars)] for _ in range(r)] for _ in range(r)]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the fallback is available")
        return
    rng = random.Random(1)
    cases = [("rref", (n, 2 * n), rref_case(rng, n, 2 * n)) for n in (40, 80, 160)]
    cases += [("det", (r, 4), det_case(rng, r, 4)) for r in (6, 8, 10)]
    print(f"{'kernel':<6} {'shape':<10} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for kind, shape, data in cases:
        fns = {}
        for name, mod in (("python", _fallback), ("cython", _kernels)):
            fn = mod.rref_mod_p if kind == "rref" else mod.det_linear_mod_p
            fns[name] = (lambda fn=fn: fn(data, P))
        if fns["python"]() != fns["cython"]():
            raise SystemExit(f"backends disagree on {kind} {shape}")
        times = {name: min(timeit.repeat(f, number=1, repeat=args.repeat))
                 for name, f in fns.items()}
        print(f"{kind:<6} {str(shape):<10} {times['python']:>10.4f} {times['cython']:>10.4f} "
              f"{times['python'] / times['cython']:>7.1f}x")


if __name__ == "__main__":
    main()

"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_backends.py --n 1000000 --repeat 5
"""

import argparse
import timeit

import numpy as np

from betaline import kernels
from betaline.core import ShapeParam
from betaline.streams import UniformStream


def cases(n):
    s = ShapeParam(0.3)
    u3 = UniformStream(1).block(n, 3)
    u1 = np.ascontiguousarray(u3[:, 0])
    x = kernels.get_backend("python").beta_three(s.a, s.kappa, u3)
    return {
        "johnk_p": lambda be: be.johnk_p(s.a, u3),
        "inverse_p": lambda be: be.inverse_p(s.a, u1),
        "beta_three": lambda be: be.beta_three(s.a, s.kappa, u3),
        "beta_two": lambda be: be.beta_two(s.a, s.kappa, u3),
        "power_sums_k6": lambda be: be.accumulate_power_sums(x, np.zeros((2, 6))),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=10**6)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    names = kernels.available_backends()
    print(f"n={args.n}  best of {args.repeat}  backends={names}")
    print(f"{'kernel':<16}" + "".join(f"{b:>12}" for b in names) + f"{'speedup':>10}")
    for label, fn in cases(args.n).items():
        best = {}
        for b in names:
            be = kernels.get_backend(b)
            best[b] = min(timeit.repeat(lambda: fn(be), number=1, repeat=args.repeat))
        line = f"{label:<16}" + "".join(f"{best[b] * 1e3:>10.1f}ms" for b in names)
        if "compiled" in best:
            line += f"{best['python'] / best['compiled']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()

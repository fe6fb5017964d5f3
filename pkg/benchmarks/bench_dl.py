"""Time the compiled Durbin–Levinson kernels against the NumPy fallback.

Usage: python3 benchmarks/bench_dl.py [--sizes 1000,4000,16000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from hyperdecay import ModelSpec, acvf
from hyperdecay import _dlpy

try:
    from hyperdecay import _dlcore
except ImportError:
    _dlcore = None

MARGIN = 1e-12


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="1000,4000,16000")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    backends = {"python": _dlpy}
    if _dlcore is not None:
        backends["cython"] = _dlcore
    else:
        print("compiled extension not built; timing the fallback only")

    print(f"{'kernel':<12}{'n':>8}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for n in sizes:
        gamma = acvf(ModelSpec.fracnoise(0.4), n - 1).values.copy()
        x = np.random.default_rng(0).standard_normal(n)
        kernels = {
            "levinson": lambda mod: mod.levinson(gamma, n, MARGIN),
            "innovations": lambda mod: mod.innovations(gamma, x, MARGIN),
            "simulate": lambda mod: mod.simulate(gamma, x, MARGIN),
        }
        for name, call in kernels.items():
            t = {b: best_of(lambda: call(mod), args.repeat) for b, mod in backends.items()}
            row = f"{name:<12}{n:>8}" + "".join(f"{t[b]:>11.4f}s" for b in backends)
            if "cython" in t:
                row += f"{t['python'] / t['cython']:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()

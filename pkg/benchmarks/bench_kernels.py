"""Compare the compiled and numpy batch density kernels.

    python3 benchmarks/bench_kernels.py [--points 2000] [--repeat 5]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from edgecascade.numerics import _pykernels

try:
    from edgecascade.numerics import _ckernels
except ImportError:
    _ckernels = None


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    cases = [
        ("gue N=200", lambda m: m.gue_density(200, np.linspace(-25, 25, args.points))),
        ("gue N=500", lambda m: m.gue_density(500, np.linspace(-35, 35, args.points))),
        ("lue N=200 a=1", lambda m: m.lue_density(200, 1.0, np.linspace(0.001, 900, args.points))),
        ("lue N=500 a=300", lambda m: m.lue_density(500, 300.0, np.linspace(1, 3000, args.points))),
    ]
    print(f"{'kernel':<18}{'numpy [ms]':>12}{'cython [ms]':>13}{'speedup':>9}{'max rel diff':>15}")
    for name, fn in cases:
        t_py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat)) * 1e3
        if _ckernels is None:
            print(f"{name:<18}{t_py:>12.2f}{'n/a':>13}")
            continue
        t_c = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=args.repeat)) * 1e3
        a, b = fn(_pykernels), fn(_ckernels)
        scale = np.maximum(np.abs(a), 1e-300)
        diff = float(np.max(np.abs(a - b) / scale))
        print(f"{name:<18}{t_py:>12.2f}{t_c:>13.2f}{t_py / t_c:>9.1f}{diff:>15.2e}")

    # scalar calls, as made point by point inside a study loop
    pts = np.linspace(1, 400, 200)
    for name, fn in (("gue N=100 scalar", lambda m: [m.gue_density(100, np.array([x])) for x in pts / 20]),
                     ("lue N=100 scalar", lambda m: [m.lue_density(100, 1.0, np.array([x])) for x in pts])):
        t_py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat)) * 1e3
        if _ckernels is None:
            print(f"{name:<18}{t_py:>12.2f}{'n/a':>13}")
            continue
        t_c = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<18}{t_py:>12.2f}{t_c:>13.2f}{t_py / t_c:>9.1f}{'':>15}")


if __name__ == "__main__":
    main()

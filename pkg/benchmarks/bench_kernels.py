"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from ising_qpd import _kernels, ising
from ising_qpd.ising import IsingParams
from ising_qpd.montecarlo import McConfig, metropolis_run

PARAMS = IsingParams(0.4, 0.2, 1.0)


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    yield "metropolis N=64, 20k sweeps", lambda b: metropolis_run(
        PARAMS, McConfig(64, 20_000, burn_in=0, seed=1), [1, 11], backend=b)
    yield "metropolis N=256, 4k sweeps", lambda b: metropolis_run(
        PARAMS, McConfig(256, 4_000, burn_in=0, seed=1), [11, 12], backend=b)
    for n in (12, 16, 20):
        yield f"enumeration N={n}", lambda b, n=n: ising.enumerate_chain(PARAMS, n, 3, backend=b)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = [b for b in ("python", "cython") if b in _kernels.BACKENDS]
    print(f"{'case':32s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for name, fn in cases():
        times = [best_of(args.repeat, lambda: fn(b)) for b in backends]
        speed = f"{times[0] / times[-1]:10.1f}x" if len(times) > 1 else "         -"
        print(f"{name:32s}" + "".join(f"{t:11.4f}s" for t in times) + " " + speed)
    if "cython" not in backends:
        print("compiled kernels not built; only the fallback was timed")


if __name__ == "__main__":
    np.seterr(all="raise")
    main()

"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--sizes 16,32,64,128] [--repeat 5]
"""

import argparse
import time

import numpy as np

from bosecsi import _backend
from bosecsi.correlations import integrated_gn
from bosecsi.fock import angular_momentum_matrix, hermitian_eigensystem
from bosecsi.states import random_separable, separable_mixture


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def random_hermitian(n, rng):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (x + x.conj().T) / 2


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="16,32,64,128")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]
    backends = _backend.available_backends()
    if "compiled" not in backends:
        print("compiled extension not built; timing the python backend only")

    rng = np.random.default_rng(0)
    cases = []
    for n in sizes:
        a = random_hermitian(n, rng)
        cases.append((f"jacobi random hermitian {n}x{n}", lambda a=a: hermitian_eigensystem(a)))
        jx = angular_momentum_matrix((1, 0, 0), n - 1)
        cases.append((f"jacobi J_x N={n - 1}", lambda jx=jx: hermitian_eigensystem(jx)))
    for n in (100, 1000, 4000):
        rho = separable_mixture(random_separable(n, 3, 1))
        cases.append((f"falling moments N={n} order 8", lambda rho=rho: [integrated_gn(rho, 8) for _ in range(50)]))

    previous = _backend.get_backend()
    try:
        print(f"{'case':36s}" + "".join(f"{b:>14s}" for b in backends) + ("   speedup" if len(backends) > 1 else ""))
        for name, fn in cases:
            row = {}
            for b in backends:
                _backend.set_backend(b)
                fn()
                row[b] = best_of(fn, args.repeat)
            line = f"{name:36s}" + "".join(f"{row[b] * 1e3:12.3f}ms" for b in backends)
            if len(backends) > 1:
                line += f"  {row['python'] / row['compiled']:8.1f}x"
            print(line)
    finally:
        _backend.set_backend(previous)


if __name__ == "__main__":
    main()

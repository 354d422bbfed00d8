"""Compare the compiled and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints the best-of-``repeat`` wall time per kernel and problem size for
each available backend, plus the speedup of the compiled kernels.
"""
import argparse
import timeit

import numpy as np

from noonsim import _pykernels

try:
    from noonsim import _ckernels
except ImportError:
    _ckernels = None


def cases(rng):
    for n in (4, 8, 10, 12):
        dim = 2 ** n
        v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        v /= np.linalg.norm(v)
        g = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
        full = (1 << n) - 1
        yield f"pauli_expectation n={n}", lambda k, v=v, f=full: k.pauli_expectation(v, f, 0)
        yield f"apply_1q (all qubits) n={n}", (
            lambda k, v=v, n=n: [k.apply_1q(v, g, t, n) for t in range(n)])
    for n in (4, 6, 8, 10):
        dim = 2 ** n
        m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        yield f"quad_form dim={dim}", lambda k, m=m, v=v: k.quad_form(v, m)
        yield f"matvec dim={dim}", lambda k, m=m, v=v: k.matvec(m, v)
    for n in (2, 4, 6):
        a = rng.normal(size=(2 ** n, 2 ** n)) + 0j
        b = rng.normal(size=(4, 4)) + 0j
        yield f"kron {2 ** n}x{2 ** n} (x) 4x4", lambda k, a=a, b=b: k.kron(a, b)


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels))
    else:
        print("compiled kernels not built; timing the numpy fallback only")
    print(f"{'kernel':36s}" + "".join(f"{name:>14s}" for name, _ in backends) + "   speedup")
    for label, fn in cases(rng):
        times = []
        for _, mod in backends:
            number = 5
            t = min(timeit.repeat(lambda: fn(mod), number=number, repeat=args.repeat)) / number
            times.append(t)
        speed = f"{times[0] / times[1]:9.2f}x" if len(times) == 2 else ""
        print(f"{label:36s}" + "".join(f"{t * 1e6:12.1f}us" for t in times) + speed)


if __name__ == "__main__":
    main()

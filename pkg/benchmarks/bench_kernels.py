"""Time the compiled search kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each case runs on both backends, the outputs are compared, and the best
wall time of N runs is reported.
"""
from __future__ import annotations

import argparse
import time

from hochprod import kernels
from hochprod.algebra_core import _search_order
from hochprod.catalog import coflag3, cyclic_group_algebra, matrix_algebra, upper_triangular
from hochprod.coalgebra_dual import convolution_algebra, example_coalgebra
from hochprod.exact_linear import Field


def _cases():
    F5, F7 = Field.prime(5), Field.prime(7)
    out = []
    for A in (matrix_algebra(2, F5), upper_triangular(2, F7), coflag3(3, F5),
              cyclic_group_algebra(3, F7)):
        flat, unit = A.flat(), [int(u) for u in A.unit]
        n, p = A.dim, A.field.p
        name = A.name if len(A.name) < 16 else f"dim-{n} co-flag"
        out.append((f"automorphisms {name} / F_{p}",
                    lambda flat=flat, unit=unit, n=n, p=p, A=A:
                    kernels.morphism_search(flat, unit, flat, unit, n, p, _search_order(A))))
        out.append((f"characters {name} / F_{p}",
                    lambda flat=flat, unit=unit, n=n, p=p:
                    kernels.multiplicative_vectors(flat, unit, n, p)))
    C = convolution_algebra(example_coalgebra(Field.prime(7)))
    out.append(("grouplikes C_3 / F_7",
                lambda: kernels.multiplicative_vectors(C.flat(), [int(u) for u in C.unit], C.dim, 7)))
    return out


def _best(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend is available")
    # backends sort as ["cython", "python"]; speedup is python time over cython time
    print(f"{'case':40} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    previous = kernels.backend_name()
    try:
        for label, fn in _cases():
            times, results = [], []
            for b in backends:
                kernels.use_backend(b)
                t, r = _best(fn, args.repeat)
                times.append(t)
                results.append(sorted(map(tuple, r)))
            if any(r != results[0] for r in results):
                raise SystemExit(f"backends disagree on {label}")
            speed = f"{times[-1] / times[0]:8.1f}x" if len(times) > 1 else "       -"
            print(f"{label:40} " + " ".join(f"{t * 1e3:8.1f}ms" for t in times) + f"  {speed}")
    finally:
        kernels.use_backend(previous)


if __name__ == "__main__":
    main()

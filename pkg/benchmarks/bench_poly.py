#!/usr/bin/env python3
"""Compare the compiled polynomial kernel against the pure-Python one.

Two layers:

* raw kernel loops (multiplication chains, substitution) measured by
  importing both kernel modules side by side;
* an end-to-end square-zero workload (double coboundary of random
  cochains over the rank-2 current algebra) measured in subprocesses so
  the backend really is selected at import time.

Run from the repository root:  python3 benchmarks/bench_poly.py
"""

import os
import random
import subprocess
import sys
import time
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from homleib._kernel import _polypure  # noqa: E402

try:
    from homleib._kernel import _polycore
except ImportError:
    _polycore = None


def rand_terms(rng, nvars=4, deg=4, nterms=8):
    out = {}
    for _ in range(nterms):
        key = tuple((v, e) for v in range(nvars) if (e := rng.randint(0, deg)))
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        if c:
            out[key] = out.get(key, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def bench_kernel(impl, rng, rounds=3000):
    polys = [rand_terms(rng) for _ in range(40)]
    lin = [rand_terms(rng, nvars=3, deg=1, nterms=3) for _ in range(10)]
    t0 = time.perf_counter()
    for i in range(rounds):
        a = polys[i % len(polys)]
        b = polys[(i * 7 + 1) % len(polys)]
        p = impl.mul_terms(a, b)
        impl.add_terms(p, a)
        impl.substitute_terms(p, i % 4, lin[i % len(lin)])
    return time.perf_counter() - t0


SQUARE_ZERO_SNIPPET = """
import random, time
from homleib import current_algebra, adjoint_rep, coboundary_homL, random_cochain
import homleib
alg = current_algebra(2, {(1, 1): (1, 0)}, [[1, 0], [0, 1]])
rep = adjoint_rep(alg)
rng = random.Random(0)
t0 = time.perf_counter()
for _ in range(6):
    f = random_cochain(alg.rank, rep.rank, 2, rng, 2)
    assert coboundary_homL(coboundary_homL(f, alg, rep), alg, rep).is_zero
print(f"{homleib.KERNEL_BACKEND} {time.perf_counter() - t0:.3f}")
"""


def bench_end_to_end(pure: bool) -> tuple[str, float]:
    env = dict(os.environ)
    env.pop("HOMLEIB_PURE", None)
    if pure:
        env["HOMLEIB_PURE"] = "1"
    out = subprocess.run(
        [sys.executable, "-c", SQUARE_ZERO_SNIPPET],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    backend, seconds = out.stdout.split()
    return backend, float(seconds)


def main():
    rng = random.Random(2024)
    pure_t = bench_kernel(_polypure, random.Random(2024))
    print(f"kernel loops   pure      {pure_t:.3f} s")
    if _polycore is not None:
        comp_t = bench_kernel(_polycore, random.Random(2024))
        print(f"kernel loops   compiled  {comp_t:.3f} s   ({pure_t / comp_t:.2f}x)")
    else:
        print("kernel loops   compiled  (extension not built)")

    backend, base = bench_end_to_end(pure=True)
    print(f"double coboundary  {backend:9s} {base:.3f} s")
    backend, fast = bench_end_to_end(pure=False)
    suffix = f"   ({base / fast:.2f}x)" if backend == "compiled" else ""
    print(f"double coboundary  {backend:9s} {fast:.3f} s{suffix}")


if __name__ == "__main__":
    main()

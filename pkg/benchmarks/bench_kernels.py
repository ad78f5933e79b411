"""Time each kernel under numba and under plain numpy.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The first numba call compiles (or loads from the on-disk cache) and is
excluded from the timings.  Outputs of the two backends are checked for
agreement before timing.
"""

import argparse
import time

import numpy as np

from ringcoprime import _accel, kernels
from ringcoprime.field import field_from_text
from ringcoprime.ideals import enumerate_ideals
from ringcoprime.splitting import primes_below_or_equal


def best_of(func, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        func()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    base = primes_below_or_equal(4000)
    lo, hi = 10**7, 10**7 + (1 << 20)
    yield "sieve 2^20 window at 1e7", (lo, hi, base), kernels.sieve_segment_numba, kernels.sieve_segment_numpy

    p = primes_below_or_equal(3 * 10**6)
    fr = np.resize(np.array([1, 2, 4], dtype=np.int64), len(p))
    g = np.resize(np.array([4, 2, 1], dtype=np.int64), len(p))
    yield f"euler terms, {len(p)} primes, n=4", (p, fr, g, 4, 2), kernels.euler_log_terms_numba, kernels.euler_log_terms_numpy

    a = np.full(len(p) - 1, 8, dtype=np.int64)
    yield "euler criterion (8|p)", (a, p[1:]), kernels.euler_criterion_numba, kernels.euler_criterion_numpy

    yield "counter indices 1e6 x 3", (12345, 0, 10**6, 3, 6232), kernels.counter_indices_numba, kernels.counter_indices_numpy

    universe = enumerate_ideals(field_from_text("Q(sqrt2)"), 10**4)
    indptr, cols, exps = universe.csr
    tuples = kernels.counter_indices_numpy(1, 0, 200000, 3, len(universe))
    yield (
        "rho batch 2e5 triples, Z[sqrt2] x=1e4",
        (indptr, cols, exps, tuples, 2, 1, len(universe.primes)),
        kernels.rho_batch_numba,
        kernels.rho_batch_numpy,
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':42s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name, call_args, fast, slow in cases():
        expected = slow(*call_args)
        got = fast(*call_args)  # warm-up / compile
        assert np.allclose(got, expected, rtol=1e-13, atol=0), name
        t_fast = best_of(lambda: fast(*call_args), args.repeat)
        t_slow = best_of(lambda: slow(*call_args), args.repeat)
        print(f"{name:42s} {t_fast:10.4f} {t_slow:10.4f} {t_slow / t_fast:7.1f}x")


if __name__ == "__main__":
    main()

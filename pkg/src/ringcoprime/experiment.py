"""Exact counts and Monte-Carlo estimates of k-wise relatively r-prime tuples."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .classify import psi_local
from .errors import InvalidInputError, ResourceLimitError
from .field import NumberField
from .ideals import IdealUniverse, enumerate_ideals
from .product import ProbabilityQuery, probability

DEFAULT_TUPLE_CAP = 10**8
TUPLE_BLOCK = 1 << 18
SAMPLE_BLOCK = 1 << 16


@dataclass(frozen=True)
class ExactCount:
    x: int
    n: int
    k: int
    r: int
    rho_sum: int
    tuple_count: int

    @property
    def ratio(self) -> float:
        return self.rho_sum / self.tuple_count


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    standard_error: float
    samples: int
    seed: int
    x: int
    hits: int


def _check(n: int, k: int, r: int) -> None:
    if not 2 <= k <= n or r < 1:
        raise InvalidInputError(f"need n >= k >= 2 and r >= 1, got n={n}, k={k}, r={r}")


def _map(func, jobs, threads: int):
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(func, jobs))
    return [func(job) for job in jobs]


def exact_rho_sum(
    universe: IdealUniverse, n: int, k: int, r: int, cap: int = DEFAULT_TUPLE_CAP, threads: int = 1
) -> ExactCount:
    """Count k-wise relatively r-prime n-tuples by visiting all H(x)^n of them."""
    _check(n, k, r)
    H = len(universe)
    total = H**n
    if total > cap:
        raise ResourceLimitError(f"{total} tuples exceed cap {cap}")
    indptr, cols, exps = universe.csr
    nprimes = max(len(universe.primes), 1)
    shape = (H,) * n

    def block(start: int) -> int:
        flat = np.arange(start, min(start + TUPLE_BLOCK, total), dtype=np.int64)
        tuples = np.stack(np.unravel_index(flat, shape), axis=1).astype(np.int64)
        return int(kernels.rho_batch(indptr, cols, exps, tuples, k, r, nprimes).sum(dtype=np.int64))

    hits = sum(_map(block, range(0, total, TUPLE_BLOCK), threads))
    return ExactCount(universe.x, n, k, r, hits, total)


def exact_rho_sum_via_mobius(universe: IdealUniverse, n: int, k: int, r: int) -> ExactCount:
    """Same count as exact_rho_sum, as the sum of psi(d) * prod H(x / N(d_i)) over d-tuples.

    Only tuples with psi(d) != 0 are visited: each d_i is the r-th power of a
    squarefree ideal and every prime present divides at least k of them.
    """
    _check(n, k, r)
    x = universe.x
    powers = sorted(
        (pid.norm**r, pid) for pid in universe.primes if pid.norm**r <= x
    )
    norms = [1] * n
    H = universe.count_up_to

    def walk(start: int, weight: int) -> int:
        total = weight * math.prod(H(x // m) for m in norms)
        for j in range(start, len(powers)):
            q = powers[j][0]
            eligible = [i for i in range(n) if norms[i] * q <= x]
            if len(eligible) < k:
                # later prime powers are at least as large
                break
            for size in range(k, len(eligible) + 1):
                for chosen in itertools.combinations(eligible, size):
                    column = [r if i in chosen else 0 for i in range(n)]
                    for i in chosen:
                        norms[i] *= q
                    total += walk(j + 1, weight * psi_local(n, k, r, column))
                    for i in chosen:
                        norms[i] //= q
        return total

    return ExactCount(x, n, k, r, walk(0, 1), len(universe) ** n)


def empirical_probability(
    universe: IdealUniverse, n: int, k: int, r: int, samples: int, seed: int, threads: int = 1
) -> MonteCarloEstimate:
    """Fraction of uniformly drawn n-tuples from the universe that are k-wise relatively r-prime.

    Sample ``s`` uses stream ``s`` of the counter generator in rng.py, so the
    estimate is independent of how samples are split across threads.
    """
    _check(n, k, r)
    if samples < 1:
        raise InvalidInputError(f"samples must be >= 1, got {samples}")
    if len(universe) == 0:
        raise InvalidInputError("empty universe")
    indptr, cols, exps = universe.csr
    nprimes = max(len(universe.primes), 1)
    H = len(universe)

    def block(start: int) -> int:
        count = min(SAMPLE_BLOCK, samples - start)
        tuples = kernels.counter_indices(seed, start, count, n, H)
        return int(kernels.rho_batch(indptr, cols, exps, tuples, k, r, nprimes).sum(dtype=np.int64))

    hits = sum(_map(block, range(0, samples, SAMPLE_BLOCK), threads))
    mean = hits / samples
    stderr = math.sqrt(mean * (1.0 - mean) / samples)
    return MonteCarloEstimate(mean, stderr, samples, seed, universe.x, hits)


@dataclass(frozen=True)
class ConvergenceRow:
    x: int
    H: int
    ratio: float
    method: str
    P: float
    gap: float
    standard_error: float = 0.0


def convergence_table(
    field: NumberField,
    n: int,
    k: int,
    r: int,
    x_values,
    exact_cap: int = 10**7,
    samples: int = 10**5,
    seed: int = 0,
    digits: int = 4,
    threads: int = 1,
) -> list[ConvergenceRow]:
    """Finite-x ratios against the limiting probability, exact where affordable."""
    _check(n, k, r)
    xs = list(x_values)
    if xs != sorted(xs):
        raise InvalidInputError("x values must be ascending")
    P = probability(ProbabilityQuery(field, n, k, r, digits), threads=threads).value
    rows = []
    for x in xs:
        universe = enumerate_ideals(field, x)
        H = len(universe)
        if H**n <= exact_cap:
            ratio = exact_rho_sum(universe, n, k, r, threads=threads).ratio
            rows.append(ConvergenceRow(universe.x, H, ratio, "exact", P, abs(ratio - P)))
        else:
            est = empirical_probability(universe, n, k, r, samples, seed, threads=threads)
            rows.append(
                ConvergenceRow(universe.x, H, est.mean, "monte-carlo", P, abs(est.mean - P), est.standard_error)
            )
    return rows

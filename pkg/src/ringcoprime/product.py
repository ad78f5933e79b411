"""Truncated Euler products with rigorous truncation bounds.

The k-wise relatively r-prime probability is a product over prime ideals of
local factors.  It is evaluated as ``exp(sum of logs)`` over every prime-ideal
class lying above the first ``N`` rational primes.  The tail of ``-log P``
beyond ``p_N`` is at most ``d (n-1)^2 / (2 (2N - n + 3))``.

Sums of logarithms are reduced with ``math.fsum`` over the concatenated
per-class terms, so the result does not depend on how the prime range was
split across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

import numpy as np

from . import kernels
from .combinatorics import elementary_symmetric
from .errors import ConvergenceError, InvalidInputError, PrecisionError
from .field import NumberField
from .splitting import first_primes, primes_below_or_equal, split_arrays

MAX_DIGITS = 6
CHUNK = 1 << 14
# |exp(-L - R) - exp(-L)| <= expm1(R) <= 1.01 R for R <= 0.02; N is scaled up
# by this factor so the bound on P itself, not just on -log P, meets 10^-t / 2.
ABSOLUTE_SLACK_PERCENT = 101


@dataclass(frozen=True)
class ProbabilityQuery:
    field: NumberField
    n: int
    k: int
    r: int = 1
    digits: int | None = 4
    primes: int | None = None

    def __post_init__(self):
        if not 2 <= self.k <= self.n:
            raise InvalidInputError(f"need n >= k >= 2, got n={self.n}, k={self.k}")
        if self.r < 1:
            raise InvalidInputError(f"need r >= 1, got r={self.r}")
        if self.primes is not None:
            if self.primes < 1:
                raise InvalidInputError(f"prime count must be >= 1, got {self.primes}")
            object.__setattr__(self, "digits", None)
        elif self.digits is None or self.digits < 1:
            raise InvalidInputError("digits must be a positive integer")


@dataclass(frozen=True)
class ProbabilityResult:
    value: float
    N: int
    p_N: int
    error_bound: float
    caveat: bool
    digits: int | None = None

    @property
    def value_error_bound(self) -> float:
        """Bound on ``|value - P|`` implied by ``error_bound`` on ``-log P``."""
        return math.expm1(self.error_bound)


def required_primes(d: int, n: int, t: int) -> int:
    """Smallest prime count N making the tail of ``-log P`` at most ``10^-t / 2``."""
    if d < 1 or n < 2 or t < 0:
        raise InvalidInputError(f"need d >= 1, n >= 2, t >= 0; got d={d}, n={n}, t={t}")
    numerator = d * (n - 1) ** 2 * 10**t + (n - 3)
    N = -(-numerator // 2)
    # floors: the bound uses p_j > 2j (true for j >= 5) and p_N > n - 1
    past_n = len(primes_below_or_equal(n - 1)) + 1
    return max(N, 5, past_n)


def truncation_bound(d: int, n: int, N: int) -> float:
    if N < 5 or 2 * N - n + 3 <= 0:
        raise InvalidInputError(f"truncation bound needs N >= 5 and 2N - n + 3 > 0, got N={N}")
    if first_primes(N)[-1] <= n - 1:
        raise InvalidInputError(f"truncation bound needs p_N > n - 1, got N={N}, n={n}")
    return d * (n - 1) ** 2 / (2 * (2 * N - n + 3))


def euler_log_sum(field: NumberField, primes: np.ndarray, n: int, k: int, r: int, threads: int = 1):
    """Return ``(sum of g * log(local factor), caveat)`` over classes above ``primes``."""
    chunks = [primes[i : i + CHUNK] for i in range(0, len(primes), CHUNK)]

    def work(chunk):
        p, f, g, certain = split_arrays(field, chunk)
        return kernels.euler_log_terms(p, f * r, g, n, k), certain

    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, chunks))
    else:
        parts = [work(c) for c in chunks]
    if not parts:
        return 0.0, False
    terms = np.concatenate([t for t, _ in parts])
    caveat = not all(certain for _, certain in parts)
    return math.fsum(terms.tolist()), caveat


def probability(query: ProbabilityQuery, threads: int = 1) -> ProbabilityResult:
    field, n, k, r = query.field, query.n, query.k, query.r
    if query.digits is not None:
        if query.digits > MAX_DIGITS:
            raise PrecisionError(
                f"{query.digits} digits requested; double precision supports at most {MAX_DIGITS}"
            )
        N0 = required_primes(field.degree, n, query.digits)
        N = -(-N0 * ABSOLUTE_SLACK_PERCENT // 100)
    else:
        N = query.primes
    primes = first_primes(N)
    p_N = int(primes[-1])
    try:
        bound = truncation_bound(field.degree, n, N)
    except InvalidInputError:
        bound = math.inf
    log_value, caveat = euler_log_sum(field, primes, n, k, r, threads)
    return ProbabilityResult(
        value=math.exp(log_value),
        N=N,
        p_N=p_N,
        error_bound=bound,
        caveat=caveat,
        digits=query.digits,
    )


def dedekind_zeta(field: NumberField, s: float, prime_limit: int) -> float:
    """Euler product of the Dedekind zeta function over rational primes ``<= prime_limit``."""
    if s <= 1:
        raise ConvergenceError(f"need s > 1, got {s}")
    primes = primes_below_or_equal(int(prime_limit))
    terms = []
    for i in range(0, len(primes), CHUNK):
        p, f, g, _ = split_arrays(field, primes[i : i + CHUNK])
        x = np.power(p.astype(np.float64), -f.astype(np.float64) * s)
        terms.append(-g.astype(np.float64) * np.log1p(-x))
    if not terms:
        return 1.0
    return math.exp(math.fsum(np.concatenate(terms).tolist()))


def convergence_region_check(s, k: int, r: int) -> bool:
    """True iff every sum of ``j >= k`` of the arguments exceeds ``1/r``.

    The binding subset of each size is the one with the smallest entries.
    """
    values = sorted(float(v) for v in s)
    running = sum(values[: k - 1])
    for j in range(k, len(values) + 1):
        running += values[j - 1]
        if not running * r > 1:
            return False
    return True


def dirichlet_D(field: NumberField, s, n: int, k: int, r: int, prime_limit: int) -> float:
    """Truncated Euler product of the correction factor relating the rho series to zeta products."""
    s = [float(v) for v in s]
    if len(s) != n:
        raise InvalidInputError(f"expected {n} arguments, got {len(s)}")
    if not 2 <= k <= n or r < 1:
        raise InvalidInputError(f"need n >= k >= 2 and r >= 1, got n={n}, k={k}, r={r}")
    if not convergence_region_check(s, k, r):
        raise ConvergenceError(f"arguments {s} lie outside the convergence region")
    coeff = {j: (-1) ** (j - k) * comb(j - 1, k - 1) for j in range(k, n + 1)}
    primes = primes_below_or_equal(int(prime_limit))
    terms = []
    negative = 0
    for i in range(0, len(primes), CHUNK):
        p, f, g, _ = split_arrays(field, primes[i : i + CHUNK])
        logp = np.log(p.astype(np.float64)) * f * r
        values = [np.exp(-logp * si) for si in s]
        tail = sum(coeff[j] * elementary_symmetric(values, j) for j in range(k, n + 1))
        factor = 1.0 - tail
        if np.any(factor == 0):
            return 0.0
        with np.errstate(invalid="ignore", divide="ignore"):
            logs = np.where(tail < 1, np.log1p(-tail), np.log(np.abs(factor)))
        terms.append(g.astype(np.float64) * logs)
        negative += int(g[factor < 0].sum())
    if not terms:
        return 1.0
    value = math.exp(math.fsum(np.concatenate(terms).tolist()))
    return -value if negative % 2 else value

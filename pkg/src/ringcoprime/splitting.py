"""Rational primes and their splitting in a number field."""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, log
from typing import NamedTuple

import numpy as np
import sympy

from . import kernels, polymod
from .errors import InvalidInputError, ResourceLimitError
from .field import Cyclotomic, MonicPolynomial, NumberField, Quadratic, Rational, totient

DEFAULT_SIEVE_CAP = 10**8
SEGMENT = 1 << 20


@dataclass(frozen=True)
class PrimeClass:
    """``g`` prime ideals above ``p``, each with residue degree ``f`` and ramification ``e``.

    ``certain`` is False when the shape came from a non-squarefree reduction
    of a defining polynomial, where Dedekind's criterion may misreport.
    """

    p: int
    f: int
    e: int
    g: int
    certain: bool = True

    @property
    def norm(self) -> int:
        return self.p**self.f


class PrimeIdealId(NamedTuple):
    p: int
    f: int
    index: int

    @property
    def norm(self) -> int:
        return self.p**self.f

    def __str__(self) -> str:
        return f"{self.p}^{self.f}#{self.index}"


# ---------------------------------------------------------------------------
# sieve

_lock = threading.Lock()
_cache = np.array([2, 3, 5, 7], dtype=np.int64)
_cache_limit = 10


def _extend_cache(limit: int) -> None:
    global _cache, _cache_limit
    with _lock:
        if limit <= _cache_limit:
            return
        root = isqrt(limit) + 1
        base = _cache if root <= _cache_limit else _simple_sieve(root)
        parts = [_cache]
        lo = _cache_limit + 1
        while lo <= limit:
            hi = min(lo + SEGMENT, limit + 1)
            parts.append(kernels.sieve_segment(lo, hi, base))
            lo = hi
        _cache = np.concatenate(parts)
        _cache_limit = limit


def _simple_sieve(limit: int) -> np.ndarray:
    mark = np.ones(limit + 1, dtype=np.bool_)
    mark[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if mark[p]:
            mark[p * p :: p] = False
    return np.flatnonzero(mark).astype(np.int64)


def rational_primes_up_to(limit: int, cap: int = DEFAULT_SIEVE_CAP) -> np.ndarray:
    """Ascending int64 array of the primes ``<= limit``."""
    limit = int(limit)
    if limit < 2:
        raise InvalidInputError(f"limit must be >= 2, got {limit}")
    if limit > cap:
        raise ResourceLimitError(f"sieve limit {limit} exceeds cap {cap}")
    if limit > _cache_limit:
        _extend_cache(limit)
    cache = _cache
    return cache[: np.searchsorted(cache, limit, side="right")]


def primes_below_or_equal(limit: int, cap: int = DEFAULT_SIEVE_CAP) -> np.ndarray:
    """Like rational_primes_up_to but returns an empty array for ``limit < 2``."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    return rational_primes_up_to(limit, cap)


def first_primes(count: int, cap: int = DEFAULT_SIEVE_CAP) -> np.ndarray:
    if count < 1:
        raise InvalidInputError(f"prime count must be >= 1, got {count}")
    bound = _nth_prime_upper_bound(count)
    return rational_primes_up_to(min(bound, cap), cap)[:count]


def nth_prime(N: int, cap: int = DEFAULT_SIEVE_CAP) -> int:
    primes = first_primes(N, cap)
    if len(primes) < N:
        raise ResourceLimitError(f"the {N}-th prime exceeds the sieve cap {cap}")
    return int(primes[N - 1])


def _nth_prime_upper_bound(N: int) -> int:
    if N < 6:
        return 13
    return int(N * (log(N) + log(log(N)))) + 3


# ---------------------------------------------------------------------------
# elementary symbols


def kronecker_symbol(a: int, b: int) -> int:
    if b == 0:
        raise InvalidInputError("Kronecker symbol (a|0) is undefined here")
    return int(sympy.kronecker_symbol(a, b))


def multiplicative_order(a: int, m: int) -> int:
    if m < 1:
        raise InvalidInputError(f"modulus must be positive, got {m}")
    if m == 1:
        return 1
    if gcd(a, m) != 1:
        raise InvalidInputError(f"gcd({a}, {m}) != 1")
    return int(sympy.n_order(a % m, m))


def distinct_degree_factor_degrees(poly, p: int) -> tuple[dict[int, int], int]:
    """Factor-degree counts of the squarefree part of ``poly`` mod ``p``.

    Returns ``({degree: count}, removed)`` where ``removed`` is the degree lost
    by passing from ``poly`` to its squarefree part.
    """
    f = polymod.reduce(poly, p)
    if not f:
        raise InvalidInputError("polynomial vanishes modulo p")
    radical = [1]
    for g, _ in polymod.squarefree_decomposition(f, p):
        radical = polymod.mul(radical, g, p)
    counts = polymod.distinct_degree(radical, p) if polymod.deg(radical) > 0 else Counter()
    return dict(sorted(counts.items())), polymod.deg(f) - polymod.deg(radical)


# ---------------------------------------------------------------------------
# splitting


@lru_cache(maxsize=1 << 16)
def split_prime(field: NumberField, p: int) -> tuple[PrimeClass, ...]:
    spec = field.spec
    if isinstance(spec, Rational):
        return (PrimeClass(p, 1, 1, 1),)
    if isinstance(spec, Quadratic):
        chi = kronecker_symbol(field.discriminant, p)
        if chi == 1:
            return (PrimeClass(p, 1, 1, 2),)
        if chi == -1:
            return (PrimeClass(p, 2, 1, 1),)
        return (PrimeClass(p, 1, 2, 1),)
    if isinstance(spec, Cyclotomic):
        rest, a = spec.m, 0
        while rest % p == 0:
            rest //= p
            a += 1
        e = (p - 1) * p ** (a - 1) if a else 1
        f = multiplicative_order(p, rest)
        return (PrimeClass(p, f, e, totient(rest) // f),)
    if isinstance(spec, MonicPolynomial):
        return _split_polynomial(spec.coefficients, p)
    raise TypeError(f"unsupported field spec {spec!r}")


def _split_polynomial(coeffs, p: int) -> tuple[PrimeClass, ...]:
    f = polymod.reduce(coeffs, p)
    parts = polymod.squarefree_decomposition(f, p)
    certain = all(mult == 1 for _, mult in parts)
    shapes: Counter = Counter()
    for g, mult in parts:
        for degree, count in polymod.distinct_degree(g, p).items():
            shapes[(degree, mult)] += count
    return tuple(
        PrimeClass(p, degree, mult, count, certain)
        for (degree, mult), count in sorted(shapes.items())
    )


def prime_ideal_count(field: NumberField, p: int) -> int:
    return sum(c.g for c in split_prime(field, p))


def split_arrays(field: NumberField, primes: np.ndarray):
    """Vectorised splitting data for a run of rational primes.

    Returns ``(p, f, g, certain)``: one entry per prime-ideal class, in
    ascending order of ``p``; ``certain`` is False when any class is flagged.
    """
    primes = np.asarray(primes, dtype=np.int64)
    spec = field.spec
    ones = np.ones_like(primes)
    if isinstance(spec, Rational):
        return primes, ones, ones, True
    if isinstance(spec, Quadratic):
        D = field.discriminant
        f = ones.copy()
        g = 2 * ones
        odd = (primes % 2 == 1) & (D % primes != 0)
        chi = kernels.euler_criterion(np.full(int(odd.sum()), D, dtype=np.int64), primes[odd])
        inert = np.zeros(len(primes), dtype=bool)
        inert[np.flatnonzero(odd)[chi != 1]] = True
        f[inert] = 2
        g[inert] = 1
        for i in np.flatnonzero(~odd):
            (cls,) = split_prime(field, int(primes[i]))
            f[i], g[i] = cls.f, cls.g
        return primes, f, g, True
    if isinstance(spec, Cyclotomic):
        m = spec.m
        phi = totient(m)
        order = np.zeros(m, dtype=np.int64)
        for res in range(1, m):
            if gcd(res, m) == 1:
                order[res] = multiplicative_order(res, m)
        f = order[primes % m]
        special = np.flatnonzero(f == 0)
        g = np.where(f > 0, phi // np.maximum(f, 1), 0)
        for i in special:
            (cls,) = split_prime(field, int(primes[i]))
            f[i], g[i] = cls.f, cls.g
        return primes, f, g, True
    ps, fs, gs = [], [], []
    certain = True
    for p in primes.tolist():
        for cls in split_prime(field, p):
            ps.append(p)
            fs.append(cls.f)
            gs.append(cls.g)
            certain &= cls.certain
    return (
        np.array(ps, dtype=np.int64),
        np.array(fs, dtype=np.int64),
        np.array(gs, dtype=np.int64),
        certain,
    )

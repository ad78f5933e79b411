"""Hot numeric kernels, each in a numba flavour and a pure-numpy flavour.

The public functions at the bottom of the module dispatch on
``_accel.USE_NUMBA`` at call time.  The ``*_numba`` and ``*_numpy`` names stay
importable so tests and ``benchmarks/bench_kernels.py`` can compare them.
"""

from __future__ import annotations

from math import comb

import numpy as np

from . import _accel
from ._accel import njit

# splitmix64 constants; see rng.py for the documented generator.
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_MASK64 = (1 << 64) - 1
_INV_2_53 = 1.0 / 9007199254740992.0


def _binomial_row(n: int, k: int) -> np.ndarray:
    return np.array([comb(n, j) for j in range(n + 1)], dtype=np.float64)


# ---------------------------------------------------------------------------
# sieve


def sieve_segment_numpy(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Primes in ``[lo, hi)``; ``base`` must hold every prime up to sqrt(hi)."""
    mark = np.ones(hi - lo, dtype=np.bool_)
    for p in base.tolist():
        if p * p >= hi:
            break
        start = max(p * p, -(-lo // p) * p)
        mark[start - lo :: p] = False
    if lo < 2:
        mark[: 2 - lo] = False
    return np.flatnonzero(mark).astype(np.int64) + lo


@njit
def sieve_segment_numba(lo, hi, base):
    mark = np.ones(hi - lo, dtype=np.bool_)
    for i in range(base.shape[0]):
        p = base[i]
        if p * p >= hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        for m in range(start, hi, p):
            mark[m - lo] = False
    for m in range(lo, min(hi, 2)):
        mark[m - lo] = False
    return np.flatnonzero(mark).astype(np.int64) + lo


# ---------------------------------------------------------------------------
# Euler-product terms


def euler_log_terms_numpy(p, fr, g, n, k):
    """``g * log(local factor)`` for norms ``q = p**fr`` of each prime-ideal class.

    The local factor is written as ``1 - tail`` where ``tail`` sums the
    binomial terms ``j = k..n``; ``log1p(-tail)`` keeps relative accuracy when
    the factor is close to one.
    """
    binom = _binomial_row(n, k)
    x = np.power(p.astype(np.float64), -fr.astype(np.float64))
    y = 1.0 - x
    tail = np.zeros_like(x)
    for j in range(k, n + 1):
        tail += binom[j] * x**j * y ** (n - j)
    return g.astype(np.float64) * np.log1p(-tail)


@njit
def _euler_log_terms_loops(p, fr, g, binom, n, k):
    out = np.empty(p.shape[0], dtype=np.float64)
    for i in range(p.shape[0]):
        x = float(p[i]) ** (-float(fr[i]))
        y = 1.0 - x
        tail = 0.0
        for j in range(k, n + 1):
            tail += binom[j] * x**j * y ** (n - j)
        out[i] = float(g[i]) * np.log1p(-tail)
    return out


def euler_log_terms_numba(p, fr, g, n, k):
    return _euler_log_terms_loops(p, fr, g, _binomial_row(n, k), n, k)


# ---------------------------------------------------------------------------
# Legendre symbols by Euler's criterion, for odd primes below ~3e9


def euler_criterion_numpy(a, p):
    """``a**((p-1)/2) mod p`` elementwise; 1, p-1 or 0."""
    base = np.mod(a, p).astype(np.int64)
    e = ((p - 1) // 2).astype(np.int64)
    acc = np.ones_like(base)
    while np.any(e > 0):
        odd = (e & 1) == 1
        acc = np.where(odd, (acc * base) % p, acc)
        base = (base * base) % p
        e >>= 1
    return acc


@njit
def euler_criterion_numba(a, p):
    out = np.empty(p.shape[0], dtype=np.int64)
    for i in range(p.shape[0]):
        m = p[i]
        base = a[i] % m
        e = (m - 1) // 2
        acc = 1
        while e > 0:
            if e & 1:
                acc = (acc * base) % m
            base = (base * base) % m
            e >>= 1
        out[i] = acc
    return out


# ---------------------------------------------------------------------------
# k-wise relative r-primality over batches of index tuples
#
# Ideals are stored in CSR form: row a lists (prime column, exponent) pairs
# in cols[indptr[a]:indptr[a+1]] / exps[...].


@njit
def rho_batch_numba(indptr, cols, exps, tuples, k, r, nprimes):
    S = tuples.shape[0]
    n = tuples.shape[1]
    out = np.ones(S, dtype=np.uint8)
    counts = np.zeros(nprimes, dtype=np.int32)
    width = 1
    for a in range(indptr.shape[0] - 1):
        width = max(width, indptr[a + 1] - indptr[a])
    touched = np.empty(n * width, dtype=np.int64)
    for s in range(S):
        nt = 0
        ok = True
        for i in range(n):
            a = tuples[s, i]
            for t in range(indptr[a], indptr[a + 1]):
                if exps[t] >= r:
                    c = cols[t]
                    if counts[c] == 0:
                        touched[nt] = c
                        nt += 1
                    counts[c] += 1
                    if counts[c] >= k:
                        ok = False
                        break
            if not ok:
                break
        for t in range(nt):
            counts[touched[t]] = 0
        if not ok:
            out[s] = 0
    return out


def rho_batch_numpy(indptr, cols, exps, tuples, k, r, nprimes):
    S, n = tuples.shape
    out = np.ones(S, dtype=np.uint8)
    keep = exps >= r
    kept_cum = np.concatenate(([0], np.cumsum(keep, dtype=np.int64)))
    row_start = kept_cum[indptr[:-1]]
    row_len = kept_cum[indptr[1:]] - row_start
    kept_cols = cols[keep].astype(np.int64)
    flat = tuples.ravel()
    lens = row_len[flat]
    total = int(lens.sum())
    if total == 0:
        return out
    owner = np.repeat(np.arange(S * n, dtype=np.int64) // n, lens)
    first = np.cumsum(lens) - lens
    offsets = np.arange(total, dtype=np.int64) - np.repeat(first, lens)
    primes = kept_cols[np.repeat(row_start[flat], lens) + offsets]
    keys, counts = np.unique(owner * nprimes + primes, return_counts=True)
    out[keys[counts >= k] // nprimes] = 0
    return out


# ---------------------------------------------------------------------------
# counter-based uniform indices


def counter_indices_numpy(seed, start, count, n, size):
    seed = np.uint64(seed)
    streams = np.arange(start, start + count, dtype=np.uint64)
    key = _mix64_numpy(seed ^ _mix64_numpy(streams + _GOLDEN))
    out = np.empty((count, n), dtype=np.int64)
    for i in range(n):
        u = _mix64_numpy(key + np.uint64(((i + 1) * int(_GOLDEN)) & _MASK64))
        idx = np.floor((u >> _S11).astype(np.float64) * _INV_2_53 * size).astype(np.int64)
        out[:, i] = np.minimum(idx, size - 1)
    return out


def _mix64_numpy(z):
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit
def _mix64_scalar(z):
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@njit
def _counter_indices_loops(seed, start, count, n, size):
    out = np.empty((count, n), dtype=np.int64)
    for s in range(count):
        stream = np.uint64(start + s)
        key = _mix64_scalar(seed ^ _mix64_scalar(stream + _GOLDEN))
        for i in range(n):
            u = _mix64_scalar(key + np.uint64(i + 1) * _GOLDEN)
            idx = np.int64(np.floor(float(u >> _S11) * _INV_2_53 * size))
            out[s, i] = min(idx, size - 1)
    return out


def counter_indices_numba(seed, start, count, n, size):
    return _counter_indices_loops(np.uint64(seed), np.int64(start), count, n, size)


# ---------------------------------------------------------------------------
# dispatch


def sieve_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    if _accel.USE_NUMBA:
        return sieve_segment_numba(lo, hi, base)
    return sieve_segment_numpy(lo, hi, base)


def euler_log_terms(p, fr, g, n: int, k: int) -> np.ndarray:
    if _accel.USE_NUMBA:
        return euler_log_terms_numba(p, fr, g, n, k)
    return euler_log_terms_numpy(p, fr, g, n, k)


def euler_criterion(a, p) -> np.ndarray:
    if _accel.USE_NUMBA:
        return euler_criterion_numba(a, p)
    return euler_criterion_numpy(a, p)


def rho_batch(indptr, cols, exps, tuples, k: int, r: int, nprimes: int) -> np.ndarray:
    if _accel.USE_NUMBA:
        return rho_batch_numba(indptr, cols, exps, tuples, k, r, nprimes)
    return rho_batch_numpy(indptr, cols, exps, tuples, k, r, nprimes)


def counter_indices(seed: int, start: int, count: int, n: int, size: int) -> np.ndarray:
    if _accel.USE_NUMBA:
        return counter_indices_numba(seed, start, count, n, size)
    return counter_indices_numpy(seed, start, count, n, size)

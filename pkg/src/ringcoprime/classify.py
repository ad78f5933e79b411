"""The characteristic function rho of k-wise relative r-primality and its Moebius transform psi.

Both functions come with a slow, definition-level oracle:
``rho_bruteforce`` scans every k-subset, and ``psi_convolution_oracle`` sums
rho against products of Moebius values over all divisor tuples.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from math import comb, prod
from typing import Sequence

from .errors import InvalidInputError, ResourceLimitError
from .ideals import IdealFactorization, divisors, gcd_ideal, mobius, prime_ideal

TupleOfIdeals = Sequence[IdealFactorization]

DEFAULT_DIVISOR_CAP = 10**6


def _check(n: int, k: int, r: int, items=None) -> None:
    if not 2 <= k <= n or r < 1:
        raise InvalidInputError(f"need n >= k >= 2 and r >= 1, got n={n}, k={k}, r={r}")
    if items is not None and len(items) != n:
        raise InvalidInputError(f"expected {n} ideals, got {len(items)}")


def rho(n: int, k: int, r: int, items: TupleOfIdeals) -> int:
    """1 if every k of the ideals are relatively r-prime, else 0."""
    _check(n, k, r, items)
    hits: dict = defaultdict(int)
    for a in items:
        for pid, e in a.factors:
            if e >= r:
                hits[pid] += 1
                if hits[pid] >= k:
                    return 0
    return 1


def rho_bruteforce(n: int, k: int, r: int, items: TupleOfIdeals) -> int:
    _check(n, k, r, items)
    for subset in itertools.combinations(items, k):
        if any(e >= r for _, e in gcd_ideal(subset).factors):
            return 0
    return 1


def psi_local(n: int, k: int, r: int, exponents: Sequence[int]) -> int:
    """psi at ``(p^v_1, ..., p^v_n)`` for a single prime ideal p.

    Nonzero only when every exponent is 0 or r; with m of them equal to r the
    value is 1 for m = 0 and ``(-1)^(m-k+1) C(m-1, k-1)`` for m >= k.
    """
    _check(n, k, r, exponents)
    m = 0
    for v in exponents:
        if v == r:
            m += 1
        elif v != 0:
            return 0
    if m == 0:
        return 1
    if m < k:
        return 0
    return (-1) ** (m - k + 1) * comb(m - 1, k - 1)


def _columns(items: TupleOfIdeals) -> dict:
    cols: dict = defaultdict(lambda: [0] * len(items))
    for i, a in enumerate(items):
        for pid, e in a.factors:
            cols[pid][i] = e
    return cols


def psi(n: int, k: int, r: int, items: TupleOfIdeals) -> int:
    _check(n, k, r, items)
    # a single exponent outside {0, r} kills the product
    for a in items:
        for _, e in a.factors:
            if e != r:
                return 0
    value = 1
    for column in _columns(items).values():
        value *= psi_local(n, k, r, column)
        if value == 0:
            return 0
    return value


def psi_convolution_oracle(
    n: int, k: int, r: int, items: TupleOfIdeals, cap: int = DEFAULT_DIVISOR_CAP
) -> int:
    """sum over a_i = d_i e_i of rho(d_1..d_n) * mu(e_1)...mu(e_n), evaluated term by term."""
    _check(n, k, r, items)
    size = prod(prod(e + 1 for _, e in a.factors) for a in items)
    if size > cap:
        raise ResourceLimitError(f"{size} divisor tuples exceed cap {cap}")
    options = []
    for a in items:
        pairs = []
        for d in divisors(a):
            mu = mobius(a.quotient(d))
            if mu:
                pairs.append((d, mu))
        options.append(pairs)
    total = 0
    for combo in itertools.product(*options):
        sign = prod(mu for _, mu in combo)
        total += sign * rho(n, k, r, [d for d, _ in combo])
    return total


def mobius_inversion_check(
    n: int, k: int, r: int, items: TupleOfIdeals, cap: int = DEFAULT_DIVISOR_CAP
) -> bool:
    """True iff rho(a) equals the sum of psi(d) over all divisor tuples d_i | a_i."""
    _check(n, k, r, items)
    size = prod(prod(e + 1 for _, e in a.factors) for a in items)
    if size > cap:
        raise ResourceLimitError(f"{size} divisor tuples exceed cap {cap}")
    total = sum(psi(n, k, r, combo) for combo in itertools.product(*(divisors(a) for a in items)))
    return total == rho(n, k, r, items)


def single_prime_tuple(exponents: Sequence[int]) -> list[IdealFactorization]:
    """``(p^v_1, ..., p^v_n)`` for a fixed placeholder prime ideal p."""
    return [prime_ideal(2, 1, 0, v) if v else IdealFactorization() for v in exponents]

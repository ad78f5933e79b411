"""Exact local Euler factors and the binomial identities behind them.

Everything here works over ``fractions.Fraction``; the identities are
polynomial, so equality is checked exactly rather than to a tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import InvalidInputError


def binomial(n: int, j: int) -> int:
    if n < 0 or j < 0:
        raise InvalidInputError("binomial arguments must be non-negative")
    return comb(n, j)


def _check_factor_args(q: int, n: int, k: int) -> None:
    if q < 2:
        raise InvalidInputError(f"norm q must be >= 2, got {q}")
    if not 2 <= k <= n:
        raise InvalidInputError(f"need 2 <= k <= n, got n={n}, k={k}")


def local_factor(q: int, n: int, k: int) -> Fraction:
    """Probability that at most ``k-1`` of ``n`` ideals are divisible by a prime power of norm ``q``."""
    _check_factor_args(q, n, k)
    x = Fraction(1, q)
    return sum((comb(n, j) * (1 - x) ** (n - j) * x**j for j in range(k)), Fraction(0))


def local_factor_complement(q: int, n: int, k: int) -> Fraction:
    """Same value as :func:`local_factor`, via the alternating sum ``1 - sum_{j>=k} ...``."""
    _check_factor_args(q, n, k)
    x = Fraction(1, q)
    tail = sum(
        ((-1) ** (j - k) * comb(n, j) * comb(j - 1, k - 1) * x**j for j in range(k, n + 1)),
        Fraction(0),
    )
    return 1 - tail


def elementary_symmetric(values, j: int):
    """e_j of ``values`` by the recurrence e_i <- e_i + x * e_{i-1}.

    Works for any ring-like elements (Fraction, float, numpy arrays evaluated
    elementwise).
    """
    values = list(values)
    if not 0 <= j <= len(values):
        raise InvalidInputError(f"need 0 <= j <= {len(values)}, got {j}")
    e = [1] + [0] * j
    for x in values:
        for i in range(j, 0, -1):
            e[i] = e[i] + x * e[i - 1]
    return e[j] if not isinstance(e[j], int) else Fraction(e[j])


def binomial_identity_check(n: int, k: int, x) -> tuple[Fraction, Fraction]:
    """Both sides of sum (-1)^(j-k) C(n,j) C(j-1,k-1) x^j = sum C(n,j) x^j (1-x)^(n-j), j = k..n."""
    if not 1 <= k <= n:
        raise InvalidInputError(f"need 1 <= k <= n, got n={n}, k={k}")
    x = Fraction(x)
    lhs = sum(
        ((-1) ** (j - k) * comb(n, j) * comb(j - 1, k - 1) * x**j for j in range(k, n + 1)),
        Fraction(0),
    )
    rhs = sum((comb(n, j) * x**j * (1 - x) ** (n - j) for j in range(k, n + 1)), Fraction(0))
    return lhs, rhs


def alternating_binomial(n: int, d: int) -> tuple[int, int]:
    """``(sum_{i<=d} (-1)^i C(n,i), (-1)^d C(n-1,d))``; the two agree for 0 <= d < n."""
    if not 0 <= d < n:
        raise InvalidInputError(f"need 0 <= d < n, got n={n}, d={d}")
    direct = sum((-1) ** i * comb(n, i) for i in range(d + 1))
    return direct, (-1) ** d * comb(n - 1, d)

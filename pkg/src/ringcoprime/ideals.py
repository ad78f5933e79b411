"""Ideals as exponent vectors over prime ideals, and their enumeration by norm."""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, TextIO

import numpy as np

from .errors import InvalidInputError, ResourceLimitError
from .field import NumberField
from .splitting import PrimeIdealId, primes_below_or_equal, split_prime

DEFAULT_IDEAL_CAP = 10**7
MAX_NORM_BOUND = 1 << 62


@dataclass(frozen=True)
class IdealFactorization:
    """An ideal as sorted ``(prime id, exponent)`` pairs; ``()`` is the unit ideal."""

    factors: tuple[tuple[PrimeIdealId, int], ...] = ()

    def __post_init__(self):
        prev = None
        for pid, e in self.factors:
            if e < 1:
                raise InvalidInputError(f"exponent of {pid} must be >= 1, got {e}")
            if prev is not None and pid <= prev:
                raise InvalidInputError("factors must be sorted by prime id without repeats")
            prev = pid

    @classmethod
    def from_exponents(cls, exponents) -> IdealFactorization:
        """Build from a mapping or iterable of ``(prime id, exponent)``; zero exponents are dropped."""
        items = exponents.items() if hasattr(exponents, "items") else exponents
        merged: dict[PrimeIdealId, int] = {}
        for pid, e in items:
            merged[PrimeIdealId(*pid)] = merged.get(PrimeIdealId(*pid), 0) + e
        return cls(tuple(sorted((pid, e) for pid, e in merged.items() if e)))

    @cached_property
    def norm(self) -> int:
        out = 1
        for pid, e in self.factors:
            out *= pid.p ** (pid.f * e)
        return out

    @property
    def is_unit(self) -> bool:
        return not self.factors

    def exponent(self, pid: PrimeIdealId) -> int:
        for q, e in self.factors:
            if q == pid:
                return e
        return 0

    def as_dict(self) -> dict[PrimeIdealId, int]:
        return dict(self.factors)

    def __mul__(self, other: IdealFactorization) -> IdealFactorization:
        merged = self.as_dict()
        for pid, e in other.factors:
            merged[pid] = merged.get(pid, 0) + e
        return IdealFactorization(tuple(sorted(merged.items())))

    def quotient(self, divisor: IdealFactorization) -> IdealFactorization:
        merged = self.as_dict()
        for pid, e in divisor.factors:
            left = merged.get(pid, 0) - e
            if left < 0:
                raise InvalidInputError(f"{divisor} does not divide {self}")
            merged[pid] = left
        return IdealFactorization(tuple(sorted((p, e) for p, e in merged.items() if e)))

    def sort_key(self):
        return (self.norm, tuple((pid.p, pid.f, pid.index, e) for pid, e in self.factors))

    def __str__(self) -> str:
        if not self.factors:
            return "(1)"
        return ",".join(f"{pid}:{e}" for pid, e in self.factors)


UNIT = IdealFactorization()


def prime_ideal(p: int, f: int = 1, index: int = 0, exponent: int = 1) -> IdealFactorization:
    return IdealFactorization(((PrimeIdealId(p, f, index), exponent),))


# ---------------------------------------------------------------------------
# enumeration


def _norm_bound(x) -> int:
    if x < 1:
        raise InvalidInputError(f"norm bound must be >= 1, got {x}")
    if x > MAX_NORM_BOUND:
        raise ResourceLimitError(f"norm bound {x} exceeds 2**62")
    return int(x)


def prime_ideals_up_to(field: NumberField, x) -> list[PrimeIdealId]:
    """Prime ideals of norm ``<= x``, sorted by ``(p, f, index)``."""
    bound = _norm_bound(x)
    out = []
    for p in primes_below_or_equal(bound).tolist():
        next_index: dict[int, int] = {}
        for cls in split_prime(field, p):
            start = next_index.get(cls.f, 0)
            next_index[cls.f] = start + cls.g
            if p**cls.f <= bound:
                out.extend(PrimeIdealId(p, cls.f, start + i) for i in range(cls.g))
    return sorted(out)


@dataclass
class IdealUniverse:
    """Every ideal of norm ``<= x``, sorted by ``(norm, factorisation)``."""

    field: NumberField
    x: int
    primes: list[PrimeIdealId]
    ideals: list[IdealFactorization]
    norms: np.ndarray = dc_field(repr=False)

    def __len__(self) -> int:
        return len(self.ideals)

    def count_up_to(self, y) -> int:
        """H(y) for ``y <= x``, read off the sorted norm list."""
        if y > self.x:
            raise InvalidInputError(f"universe only covers norms <= {self.x}")
        return int(bisect.bisect_right(self.norms, int(y))) if y >= 1 else 0

    @cached_property
    def prime_index(self) -> dict[PrimeIdealId, int]:
        return {pid: i for i, pid in enumerate(self.primes)}

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(indptr, cols, exps)`` describing every ideal's factorisation."""
        index = self.prime_index
        lengths = [len(a.factors) for a in self.ideals]
        indptr = np.zeros(len(self.ideals) + 1, dtype=np.int64)
        np.cumsum(lengths, out=indptr[1:])
        cols = np.fromiter(
            (index[pid] for a in self.ideals for pid, _ in a.factors), dtype=np.int64, count=indptr[-1]
        )
        exps = np.fromiter(
            (e for a in self.ideals for _, e in a.factors), dtype=np.int64, count=indptr[-1]
        )
        return indptr, cols, exps

    def dump(self, out: TextIO) -> None:
        """Write ``norm<TAB>p^f#idx:e,...`` lines, one per ideal."""
        for a in self.ideals:
            body = ",".join(f"{pid}:{e}" for pid, e in a.factors)
            out.write(f"{a.norm}\t{body}\n")


def enumerate_ideals(field: NumberField, x, cap: int = DEFAULT_IDEAL_CAP) -> IdealUniverse:
    bound = _norm_bound(x)
    primes = prime_ideals_up_to(field, bound)
    by_norm = sorted(primes, key=lambda pid: (pid.norm, pid))
    norms = [pid.norm for pid in by_norm]
    found: list[IdealFactorization] = []

    def walk(start: int, budget: int, factors: list):
        found.append(IdealFactorization.from_exponents(factors))
        if len(found) > cap:
            raise ResourceLimitError(f"more than {cap} ideals of norm <= {bound}")
        for j in range(start, len(by_norm)):
            q = norms[j]
            if q > budget:
                break
            e, rest = 1, budget // q
            while rest >= 1:
                factors.append((by_norm[j], e))
                walk(j + 1, rest, factors)
                factors.pop()
                e += 1
                rest //= q

    walk(0, bound, [])
    found.sort(key=IdealFactorization.sort_key)
    norm_array = np.array([a.norm for a in found], dtype=np.int64)
    return IdealUniverse(field, bound, primes, found, norm_array)


def ideal_count(field: NumberField, x) -> int:
    """H(x), the number of ideals of norm ``<= x``, counted without materialising them."""
    bound = _norm_bound(x)
    norms = sorted(pid.norm for pid in prime_ideals_up_to(field, bound))

    def count(start: int, budget: int) -> int:
        total = 1
        for j in range(start, len(norms)):
            q = norms[j]
            if q > budget:
                break
            rest = budget // q
            while rest >= 1:
                total += count(j + 1, rest)
                rest //= q
        return total

    return count(0, bound)


# ---------------------------------------------------------------------------
# arithmetic


def mobius(a: IdealFactorization) -> int:
    if any(e >= 2 for _, e in a.factors):
        return 0
    return -1 if len(a.factors) % 2 else 1


def divisors(a: IdealFactorization) -> list[IdealFactorization]:
    """All divisors, lexicographic in the exponent tuple (first prime varies slowest)."""
    pids = [pid for pid, _ in a.factors]
    ranges = [range(e + 1) for _, e in a.factors]
    return [
        IdealFactorization(tuple((pid, j) for pid, j in zip(pids, combo) if j))
        for combo in itertools.product(*ranges)
    ]


def gcd_ideal(ideals: Iterable[IdealFactorization]) -> IdealFactorization:
    ideals = list(ideals)
    if not ideals:
        raise InvalidInputError("gcd of an empty list of ideals")
    common = ideals[0].as_dict()
    for a in ideals[1:]:
        other = a.as_dict()
        common = {pid: min(e, other[pid]) for pid, e in common.items() if pid in other}
    return IdealFactorization(tuple(sorted(common.items())))

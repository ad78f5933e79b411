"""Property suites run by ``ringcoprime verify`` and by the acceptance tests."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .classify import (
    mobius_inversion_check,
    psi_convolution_oracle,
    psi_local,
    rho,
    rho_bruteforce,
    single_prime_tuple,
)
from .combinatorics import (
    alternating_binomial,
    binomial_identity_check,
    local_factor,
    local_factor_complement,
)
from .experiment import exact_rho_sum, exact_rho_sum_via_mobius
from .field import NumberField, field_from_text
from .ideals import enumerate_ideals
from .product import dedekind_zeta, euler_log_sum, required_primes
from .splitting import first_primes

TABLE_FIELDS = ("Q", "Q(sqrt2)", "Q(sqrt-1)", "Q(zeta3)", "Q(zeta5)")
SMALL_FIELDS = ("Q", "Q(sqrt-1)", "Q(sqrt-3)")
RHO_PARAMS = ((2, 2, 1), (3, 2, 1), (3, 3, 1), (3, 2, 2), (4, 3, 1))
IDENTITY_POINTS = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 7), Fraction(-1, 5))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def identities() -> list[Check]:
    bad = []
    for n in range(1, 13):
        for k in range(1, n + 1):
            for x in IDENTITY_POINTS:
                lhs, rhs = binomial_identity_check(n, k, x)
                if lhs != rhs:
                    bad.append((n, k, x))
    checks = [Check("binomial identity grid", not bad, f"{len(bad)} mismatches over 1 <= k <= n <= 12")]
    mismatch = out_of_range = below = 0
    for q in range(2, 65):
        for n in range(2, 11):
            for k in range(2, n + 1):
                a = local_factor(q, n, k)
                mismatch += a != local_factor_complement(q, n, k)
                out_of_range += not 0 < a < 1
                if q > n - 1:
                    below += a < 1 - Fraction(n - 1, q) ** 2
    checks.append(Check("local factor forms agree", mismatch == 0, f"{mismatch} mismatches"))
    checks.append(Check("local factor in (0, 1)", out_of_range == 0, f"{out_of_range} violations"))
    checks.append(Check("local factor lower bound", below == 0, f"{below} violations"))
    alt = sum(a != b for n in range(1, 16) for d in range(n) for a, b in [alternating_binomial(n, d)])
    checks.append(Check("alternating binomial sum", alt == 0, f"{alt} mismatches"))
    return checks


def psi_oracle_mismatches() -> tuple[int, int]:
    checked = mismatches = 0
    for n in range(2, 5):
        for r in (1, 2):
            for k in range(2, n + 1):
                for nu in itertools.product(range(r + 3), repeat=n):
                    checked += 1
                    items = single_prime_tuple(nu)
                    mismatches += psi_local(n, k, r, nu) != psi_convolution_oracle(n, k, r, items)
    return checked, mismatches


def psi_suite() -> list[Check]:
    checked, mismatches = psi_oracle_mismatches()
    checks = [Check("psi closed form vs convolution", mismatches == 0, f"{mismatches}/{checked} mismatches")]
    universe = enumerate_ideals(field_from_text("Q(sqrt-1)"), 20)
    failures = sum(
        not mobius_inversion_check(2, 2, 1, pair) for pair in itertools.product(universe.ideals, repeat=2)
    )
    checks.append(Check("moebius inversion, Z[i] norm <= 20, n = 2", failures == 0, f"{failures} failures"))
    return checks


def rho_mismatches(n: int, k: int, r: int, universe, samples: int | None, seed: int = 2024) -> tuple[int, int]:
    """Compare rho, rho_bruteforce and the batch kernel on all or sampled n-tuples."""
    ideals = universe.ideals
    if samples is None:
        index_tuples = np.array(list(itertools.product(range(len(ideals)), repeat=n)), dtype=np.int64)
    else:
        index_tuples = kernels.counter_indices(seed, 0, samples, n, len(ideals))
    indptr, cols, exps = universe.csr
    batch = kernels.rho_batch(indptr, cols, exps, index_tuples, k, r, len(universe.primes))
    mismatches = 0
    for row, fast in zip(index_tuples.tolist(), batch.tolist()):
        items = [ideals[i] for i in row]
        slow = rho_bruteforce(n, k, r, items)
        mismatches += (rho(n, k, r, items) != slow) + (fast != slow)
    return len(index_tuples), mismatches


def rho_suite(samples: int = 10**5) -> list[Check]:
    universe = enumerate_ideals(field_from_text("Q(sqrt-1)"), 30)
    checks = []
    for n, k, r in RHO_PARAMS:
        count, bad = rho_mismatches(n, k, r, universe, None if n == 2 else samples)
        mode = "exhaustive" if n == 2 else "sampled"
        checks.append(Check(f"rho vs brute force (n={n}, k={k}, r={r})", bad == 0, f"{bad} mismatches in {count} {mode} tuples"))
    return checks


def mobius_count_suite(x_max: int = 30) -> list[Check]:
    checks = []
    for spec in SMALL_FIELDS:
        field = field_from_text(spec)
        bad = []
        for x in range(1, x_max + 1):
            universe = enumerate_ideals(field, x)
            for n in (2, 3):
                for k in range(2, n + 1):
                    for r in (1, 2):
                        a = exact_rho_sum(universe, n, k, r).rho_sum
                        b = exact_rho_sum_via_mobius(universe, n, k, r).rho_sum
                        if a != b:
                            bad.append((x, n, k, r))
        detail = f"{len(bad)} mismatches" + (f", first {bad[:3]}" if bad else "")
        checks.append(Check(f"counting identity over {field.label}, x <= {x_max}", not bad, detail))
    return checks


def zeta_consistency_pairs(field: NumberField, digits: int = 4):
    """Yield ``(n, r, P_{n,n,r} * zeta_K(rn))`` over a shared prime set."""
    for n in (2, 3):
        for r in (1, 2):
            N = required_primes(field.degree, n, digits)
            primes = first_primes(N)
            log_p, _ = euler_log_sum(field, primes, n, n, r)
            zeta = dedekind_zeta(field, r * n, int(primes[-1]))
            yield n, r, float(np.exp(log_p)) * zeta


def zeta_consistency_suite(tol: float = 1e-9) -> list[Check]:
    checks = []
    for spec in TABLE_FIELDS:
        field = field_from_text(spec)
        worst = max(abs(v - 1.0) for _, _, v in zeta_consistency_pairs(field))
        checks.append(Check(f"P(n,n,r) * zeta_K(rn) = 1 over {field.label}", worst <= tol, f"max deviation {worst:.2e}"))
    return checks


SUITES = {
    "identities": identities,
    "psi": psi_suite,
    "rho": rho_suite,
    "mobius-count": mobius_count_suite,
    "zeta-consistency": zeta_consistency_suite,
}


def run(name: str) -> list[Check]:
    if name == "all":
        return [check for suite in SUITES.values() for check in suite()]
    return SUITES[name]()

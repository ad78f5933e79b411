import itertools
import math

import pytest

from ringcoprime.classify import rho_bruteforce
from ringcoprime.errors import InvalidInputError, ResourceLimitError
from ringcoprime.experiment import (
    convergence_table,
    empirical_probability,
    exact_rho_sum,
    exact_rho_sum_via_mobius,
)
from ringcoprime.field import field_from_text
from ringcoprime.ideals import enumerate_ideals

Q = field_from_text("Q")
ZI = field_from_text("Q(sqrt-1)")


def test_unit_universe():
    universe = enumerate_ideals(Q, 1)
    for n, k, r in [(2, 2, 1), (4, 3, 2)]:
        assert exact_rho_sum(universe, n, k, r).rho_sum == 1
        assert exact_rho_sum_via_mobius(universe, n, k, r).rho_sum == 1
    est = empirical_probability(universe, 3, 2, 1, 100, 0)
    assert est.mean == 1.0 and est.standard_error == 0.0


def test_rational_x4():
    universe = enumerate_ideals(Q, 4)
    direct = exact_rho_sum(universe, 2, 2, 1)
    assert (direct.rho_sum, direct.tuple_count) == (11, 16)
    assert exact_rho_sum_via_mobius(universe, 2, 2, 1).rho_sum == 11
    brute = sum(math.gcd(a, b) == 1 for a in range(1, 5) for b in range(1, 5))
    assert brute == 11


def test_exact_sum_against_bruteforce(backend):
    universe = enumerate_ideals(ZI, 12)
    for n, k, r in [(2, 2, 1), (3, 2, 1), (3, 3, 1), (3, 2, 2)]:
        oracle = sum(rho_bruteforce(n, k, r, t) for t in itertools.product(universe.ideals, repeat=n))
        assert exact_rho_sum(universe, n, k, r).rho_sum == oracle


@pytest.mark.parametrize("x", [5, 10, 20, 64])
def test_mobius_route_agrees(x):
    universe = enumerate_ideals(ZI, x)
    assert exact_rho_sum_via_mobius(universe, 2, 2, 1).rho_sum == exact_rho_sum(universe, 2, 2, 1).rho_sum


def test_small_x_gives_all_tuples():
    universe = enumerate_ideals(field_from_text("Q(zeta5)"), 4)
    result = exact_rho_sum_via_mobius(universe, 3, 2, 1)
    assert result.rho_sum == result.tuple_count == len(universe) ** 3


def test_rational_ratio_near_six_over_pi_squared():
    ratio = exact_rho_sum(enumerate_ideals(Q, 1000), 2, 2, 1).ratio
    assert abs(ratio - 0.6079) < 0.01


def test_exact_cap():
    with pytest.raises(ResourceLimitError):
        exact_rho_sum(enumerate_ideals(Q, 100), 3, 2, 1, cap=1000)


def test_samples_validation():
    with pytest.raises(InvalidInputError):
        empirical_probability(enumerate_ideals(Q, 10), 2, 2, 1, 0, 1)


def test_monte_carlo_deterministic_and_thread_invariant():
    universe = enumerate_ideals(ZI, 2000)
    a = empirical_probability(universe, 3, 2, 1, 150000, 42)
    b = empirical_probability(universe, 3, 2, 1, 150000, 42, threads=3)
    assert a == b
    assert a.standard_error == math.sqrt(a.mean * (1 - a.mean) / a.samples)


def test_monte_carlo_backends_agree(backend):
    universe = enumerate_ideals(field_from_text("Q(sqrt2)"), 1000)
    # frozen from the scalar generator in rng.py driving rho_bruteforce
    assert empirical_probability(universe, 3, 2, 1, 70000, 7).hits == 28577


def test_exact_threads_agree():
    universe = enumerate_ideals(ZI, 150)
    assert exact_rho_sum(universe, 3, 2, 1, threads=4) == exact_rho_sum(universe, 3, 2, 1)


def test_convergence_table_rational():
    rows = convergence_table(Q, 2, 2, 1, [1, 10, 100, 1000])
    assert rows[0].ratio == 1.0 and rows[0].gap == pytest.approx(1 - rows[0].P)
    assert all(row.method == "exact" for row in rows)
    assert rows[-1].gap < rows[1].gap
    assert all(0 <= row.ratio <= 1 for row in rows)


def test_convergence_table_switches_to_sampling():
    rows = convergence_table(ZI, 2, 2, 1, [10, 50, 5000], exact_cap=10**6, samples=20000, seed=1)
    assert [row.method for row in rows] == ["exact", "exact", "monte-carlo"]
    assert rows[-1].standard_error > 0


def test_convergence_table_needs_ascending_x():
    with pytest.raises(InvalidInputError):
        convergence_table(Q, 2, 2, 1, [100, 10])

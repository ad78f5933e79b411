import itertools
import random

import pytest
from hypothesis import given, strategies as st

from ringcoprime.classify import (
    mobius_inversion_check,
    psi,
    psi_convolution_oracle,
    psi_local,
    rho,
    rho_bruteforce,
    single_prime_tuple,
)
from ringcoprime.errors import InvalidInputError, ResourceLimitError
from ringcoprime.field import field_from_text
from ringcoprime.ideals import UNIT, enumerate_ideals, prime_ideal

P, Q, R = prime_ideal(2), prime_ideal(3), prime_ideal(5)


@pytest.mark.parametrize("fn", [rho, rho_bruteforce])
def test_rho_examples(fn):
    assert fn(3, 2, 1, [UNIT] * 3) == 1
    assert fn(3, 2, 1, [P, P, Q]) == 0
    assert fn(2, 2, 2, [P, P]) == 1
    assert fn(4, 3, 1, [P, P, Q, P * Q]) == 0
    assert fn(4, 3, 1, [P, P, Q, R]) == 1


def test_rho_rejects_bad_parameters():
    with pytest.raises(InvalidInputError):
        rho(2, 3, 1, [P, Q])
    with pytest.raises(InvalidInputError):
        rho(3, 2, 1, [P, Q])


@pytest.mark.parametrize(
    "n, k, r, nu, value",
    [(3, 2, 1, (0, 0, 0), 1), (3, 2, 1, (1, 1, 0), -1), (3, 2, 1, (1, 1, 1), 2), (2, 2, 2, (1, 2), 0),
     (3, 3, 1, (1, 1, 0), 0), (4, 2, 2, (2, 2, 2, 2), -3)],
)
def test_psi_local_examples(n, k, r, nu, value):
    assert psi_local(n, k, r, nu) == value
    assert psi_convolution_oracle(n, k, r, single_prime_tuple(nu)) == value


def test_psi_examples():
    assert psi(3, 2, 1, [UNIT] * 3) == 1
    assert psi(3, 2, 1, [P * Q, P, Q]) == 1
    assert psi(3, 2, 1, [P * P, P, UNIT]) == 0
    assert psi_convolution_oracle(3, 2, 1, [P * Q, P, Q]) == 1


def test_psi_vanishing_cases():
    for n in range(2, 5):
        for r in (1, 2, 3):
            for k in range(2, n + 1):
                for v1 in list(range(1, r)) + [r + 1, r + 2]:
                    for rest in itertools.product((0, r), repeat=n - 1):
                        assert psi_local(n, k, r, (v1, *rest)) == 0


def test_psi_oracle_cap():
    with pytest.raises(ResourceLimitError):
        psi_convolution_oracle(2, 2, 1, [P * P * P, Q * Q * Q], cap=10)


@pytest.fixture(scope="module")
def gaussian30():
    return enumerate_ideals(field_from_text("Q(sqrt-1)"), 30)


def test_mobius_inversion_exhaustive_n2():
    universe = enumerate_ideals(field_from_text("Q(sqrt-1)"), 20)
    for pair in itertools.product(universe.ideals, repeat=2):
        assert mobius_inversion_check(2, 2, 1, pair)


def test_mobius_inversion_sampled_n3():
    ideals = enumerate_ideals(field_from_text("Q(sqrt-1)"), 50).ideals
    rng = random.Random(3)
    for _ in range(300):
        triple = rng.choices(ideals, k=3)
        for k, r in ((2, 1), (3, 1), (2, 2)):
            assert mobius_inversion_check(3, k, r, triple)


def test_rho_multiplicative(gaussian30):
    by_prime = {}
    for a in gaussian30.ideals:
        if len(a.factors) == 1:
            by_prime.setdefault(a.factors[0][0], []).append(a)
    pids = sorted(by_prime)
    rng = random.Random(11)
    for _ in range(1000):
        left, right = rng.sample(pids, 2)
        n = rng.randint(2, 4)
        k = rng.randint(2, n)
        r = rng.randint(1, 2)
        a = [rng.choice(by_prime[left] + [UNIT]) for _ in range(n)]
        b = [rng.choice(by_prime[right] + [UNIT]) for _ in range(n)]
        ab = [x * y for x, y in zip(a, b)]
        assert rho(n, k, r, ab) == rho(n, k, r, a) * rho(n, k, r, b)


def test_psi_symmetric(gaussian30):
    rng = random.Random(7)
    ideals = [a for a in gaussian30.ideals if all(e == 1 for _, e in a.factors)]
    for _ in range(500):
        items = rng.choices(ideals, k=3)
        base = psi(3, 2, 1, items)
        assert all(psi(3, 2, 1, list(perm)) == base for perm in itertools.permutations(items))


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(2, n), st.integers(1, 2), st.lists(st.integers(0, 4), min_size=n, max_size=n))))
def test_psi_local_matches_oracle(args):
    n, k, r, nu = args
    assert psi_local(n, k, r, nu) == psi_convolution_oracle(n, k, r, single_prime_tuple(nu))

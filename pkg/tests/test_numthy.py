from math import gcd, prod

import pytest

from numthy import (
    divisor_split,
    euler_phi,
    factorize,
    is_prime_power,
    is_squarefree,
    omega_count,
    proper_divisors_above_one,
    tau,
    theta,
)
from utils.validators import InvalidInputError


@pytest.mark.parametrize(
    "n, expected",
    [(12, ((2, 2), (3, 1))), (1, ()), (210, ((2, 1), (3, 1), (5, 1), (7, 1)))],
)
def test_factorize(n, expected):
    assert factorize(n) == expected


def test_factorize_round_trip():
    for n in range(1, 2000):
        assert prod(p**e for p, e in factorize(n)) == n


@pytest.mark.parametrize("n, expected", [(1, 1), (6, 2), (12, 4)])
def test_euler_phi_examples(n, expected):
    assert euler_phi(n) == expected


def test_euler_phi_matches_coprime_count():
    for n in range(1, 400):
        assert euler_phi(n) == sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def test_divisor_split_examples():
    split = divisor_split(6, 2)
    assert split.omega == {2, 6}
    assert split.bar_omega == {3}

    split = divisor_split(4, 2)
    assert split.omega == {2, 4}
    assert split.bar_omega == frozenset()

    whole = divisor_split(36, 36)
    assert whole.omega == set(proper_divisors_above_one(36))
    assert not whole.bar_omega


def test_divisor_split_partitions_divisors():
    for n in range(2, 300):
        for h in proper_divisors_above_one(n):
            split = divisor_split(n, h)
            assert len(split.omega) + len(split.bar_omega) == tau(n) - 1
            assert not split.omega & split.bar_omega


def _phi_sieve(limit: int) -> list[int]:
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:
            for k in range(p, limit + 1, p):
                phi[k] -= phi[k] // p
    return phi


@pytest.mark.slow
def test_euler_phi_up_to_ten_thousand():
    phi = _phi_sieve(10_000)
    for n in range(1, 10_001):
        assert euler_phi(n) == phi[n]
        assert prod(p**e for p, e in factorize(n)) == n
        assert sum(euler_phi(d) for d in proper_divisors_above_one(n)) + 1 == n


@pytest.mark.slow
def test_divisor_split_up_to_ten_thousand():
    for n in range(2, 10_001):
        divisors = proper_divisors_above_one(n)
        for h in divisors:
            split = divisor_split(n, h)
            assert split.omega == {d for d in divisors if gcd(d, h) > 1}
            assert split.bar_omega == {d for d in divisors if gcd(d, h) == 1}


def test_divisor_split_rejects_non_divisor():
    with pytest.raises(InvalidInputError):
        divisor_split(6, 4)


@pytest.mark.parametrize("m, expected", [(12, {2, 3}), (1, set()), (35, {5, 7})])
def test_theta(m, expected):
    assert theta(m) == expected


@pytest.mark.parametrize("n, expected", [(1, 1), (12, 6), (210, 16)])
def test_tau(n, expected):
    assert tau(n) == expected


def test_prime_power_and_squarefree():
    assert not is_prime_power(1)
    assert is_prime_power(8)
    assert is_prime_power(7)
    assert not is_prime_power(12)
    assert is_squarefree(210)
    assert not is_squarefree(12)
    assert omega_count(2310) == 5


def test_rejects_non_positive():
    with pytest.raises(InvalidInputError):
        factorize(0)
    with pytest.raises(InvalidInputError):
        euler_phi(0)

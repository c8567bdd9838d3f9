"""
Арифметика целых чисел для замкнутых формул: разложение на простые,
функция Эйлера, делители и разбиение делителей n относительно h.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from sympy import divisor_count, divisors, factorint, primefactors, totient

from utils.validators import InvalidInputError

logger = logging.getLogger(__name__)

# Пары (простое, показатель) по возрастанию простого
Factorization = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class DivisorSplit:
    """Делители d > 1 числа n: omega — gcd(d, h) > 1, bar_omega — gcd(d, h) = 1."""

    n: int
    h: int
    omega: frozenset[int]
    bar_omega: frozenset[int]


# Разложение на простые множители
@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    """Разложение n в виде отсортированных пар (p, alpha); для 1 — пустой кортеж."""
    if n < 1:
        raise InvalidInputError(f"Разложение определено для n ≥ 1, получено {n}")
    return tuple(sorted((int(p), int(e)) for p, e in factorint(n).items()))


# Функция Эйлера
def euler_phi(n: int) -> int:
    if n < 1:
        raise InvalidInputError(f"φ(n) определена для n ≥ 1, получено {n}")
    return int(totient(n))


# Количество делителей
def tau(n: int) -> int:
    if n < 1:
        raise InvalidInputError(f"τ(n) определена для n ≥ 1, получено {n}")
    return int(divisor_count(n))


# Множество простых делителей
def theta(m: int) -> frozenset[int]:
    """Простые, делящие m; пусто при m = 1."""
    if m < 1:
        raise InvalidInputError(f"θ(m) определена для m ≥ 1, получено {m}")
    return frozenset(int(p) for p in primefactors(m))


# Число различных простых делителей
def omega_count(m: int) -> int:
    return len(theta(m))


# Все делители d > 1
@lru_cache(maxsize=4096)
def proper_divisors_above_one(n: int) -> tuple[int, ...]:
    return tuple(int(d) for d in divisors(n) if d > 1)


# Разбиение делителей n по взаимной простоте с h
@lru_cache(maxsize=4096)
def divisor_split(n: int, h: int) -> DivisorSplit:
    """
    Строит Ω_{n,h} и Ω̄_{n,h} прямым перебором делителей n.
    Требует n ≥ 2 и h | n.
    """
    if n < 2 or h < 1:
        raise InvalidInputError(f"Нужны n ≥ 2 и h ≥ 1, получено n={n}, h={h}")
    if n % h:
        raise InvalidInputError(f"Порядок подгруппы {h} не делит {n}")

    omega: set[int] = set()
    bar_omega: set[int] = set()
    for d in proper_divisors_above_one(n):
        (omega if gcd(d, h) > 1 else bar_omega).add(d)
    return DivisorSplit(n=n, h=h, omega=frozenset(omega), bar_omega=frozenset(bar_omega))


# Является ли число степенью простого (1 не считается)
def is_prime_power(m: int) -> bool:
    return m > 1 and len(factorize(m)) == 1


# Бесквадратность
def is_squarefree(m: int) -> bool:
    return all(e == 1 for _, e in factorize(m))


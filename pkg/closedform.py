"""
Замкнутые формулы и характеризации для Γ(Z_n, Z_h) как функции от (n, h).

flags — предикаты, совпадающие с определениями на построенных графах;
paper_flags — утверждения в исходной формулировке. Они расходятся для
максимальной степени, эйлеровости, графов без треугольников и
расщепляемых графов; прогон показывает эти расхождения отдельными строками.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

from numthy import (
    Factorization,
    euler_phi,
    factorize,
    is_prime_power,
    is_squarefree,
    proper_divisors_above_one,
    divisor_split,
    theta,
)
from utils.validators import InvalidInputError, validate_cyclic_pair

logger = logging.getLogger(__name__)

PERFECT_TRUE = "true"
PERFECT_FALSE = "false"
UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class CyclicInstance:
    n: int
    h: int

    def __post_init__(self) -> None:
        validate_cyclic_pair(self.n, self.h, min_n=3)

    @cached_property
    def factors(self) -> Factorization:
        return factorize(self.n)

    @cached_property
    def h_factors(self) -> Factorization:
        return factorize(self.h)

    @property
    def r(self) -> int:
        return len(self.factors)

    @property
    def omega_h(self) -> int:
        return len(self.h_factors)

    @property
    def primes_divide_h(self) -> bool:
        """Каждое простое, делящее n, делит h."""
        return theta(self.n) <= theta(self.h)

    @property
    def is_whole(self) -> bool:
        return self.h == self.n


@dataclass(frozen=True)
class MaxDegree:
    paper_value: int
    corrected_value: int


@dataclass
class PropertyPrediction:
    instance: CyclicInstance
    flags: dict[str, bool]
    paper_flags: dict[str, bool]
    perfect: str
    odd_hole_free: str
    max_degree: MaxDegree
    min_degree: int
    degree_table: dict[int, int] = field(default_factory=dict)


def _phi_sum(values) -> int:
    return sum(euler_phi(t) for t in values)


def _omega(m: int, d: int) -> list[int]:
    """Делители t > 1 числа m с gcd(t, d) > 1."""
    return [t for t in proper_divisors_above_one(m) if gcd(t, d) > 1]


def _power_of_two(n: int) -> bool:
    return n >= 2 and n & (n - 1) == 0


# Степень вершины порядка d
def degree_formula(inst: CyclicInstance, d: int) -> int:
    """
    d | h: сумма φ(t) по Ω_{n,d} минус 1;
    иначе сумма φ(t) по делителям t > 1 числа h с gcd(t, d) > 1.
    """
    if d <= 1 or inst.n % d:
        raise InvalidInputError(f"Порядок элемента {d} должен делить {inst.n} и быть > 1")
    if inst.h % d == 0:
        return _phi_sum(divisor_split(inst.n, d).omega) - 1
    return _phi_sum(_omega(inst.h, d))


# Максимальная степень
def max_degree_formula(inst: CyclicInstance) -> MaxDegree:
    if inst.primes_divide_h:
        return MaxDegree(inst.n - 2, inst.n - 2)
    coprime = _phi_sum(divisor_split(inst.n, inst.h).bar_omega)
    return MaxDegree(inst.n - (coprime + 1), inst.n - coprime - 2)


# Минимальная степень
def min_degree_formula(inst: CyclicInstance) -> int:
    if inst.r == 1:
        return inst.n - 2 if inst.is_whole else inst.h - 1
    if inst.primes_divide_h:
        return min(degree_formula(inst, p**alpha) for p, alpha in inst.factors)
    return 0


# Связность
def is_connected_formula(inst: CyclicInstance) -> bool:
    return inst.primes_divide_h


# Двойка, умноженная на степень нечётного простого
def _twice_odd_prime_power(n: int) -> bool:
    return n % 2 == 0 and (n // 2) % 2 == 1 and is_prime_power(n // 2)


def _perfect_prediction(inst: CyclicInstance) -> str:
    r, w = inst.r, inst.omega_h
    squarefree = is_squarefree(inst.n)
    if r <= 3 or (squarefree and r == 4) or (r >= 5 and w <= 3):
        return PERFECT_TRUE
    if w >= 4 and (r >= 5 or (r == 4 and not squarefree and not inst.is_whole)):
        return PERFECT_FALSE
    return UNCLASSIFIED


def _odd_hole_prediction(inst: CyclicInstance) -> str:
    if inst.r <= 3 or (inst.r >= 5 and inst.omega_h <= 3):
        return PERFECT_TRUE
    return UNCLASSIFIED


# Предсказание всех свойств по (n, h)
def classify_formula(inst: CyclicInstance) -> PropertyPrediction:
    n, h, r = inst.n, inst.h, inst.r

    star = (_power_of_two(n) and n >= 4 and h == 2) or n == h == 3
    path = n == h == 3 or (n, h) == (4, 2)
    cycle = (n, h) == (4, 4)
    complete = r == 1 and inst.is_whole
    h_prime_power = is_prime_power(h)

    flags = {
        "star": star,
        "path": path,
        "cycle": cycle,
        "triangle_free": h == 2 or n == h == 3,
        "complete_bipartite": star,
        "complete": complete,
        "unicyclic": cycle,
        "split": h_prime_power or (inst.is_whole and _twice_odd_prime_power(n)),
        "claw_free": (inst.is_whole and r <= 2) or (not inst.is_whole and n in (4, 6)),
        "chordal": h_prime_power or (inst.is_whole and r <= 3),
        "connected": inst.primes_divide_h,
        "eulerian": _power_of_two(n) and n >= 4 and inst.is_whole,
    }

    paper_flags = dict(flags)
    paper_flags.update(
        {
            "triangle_free": star,
            "split": h_prime_power or n == h == 6,
            "eulerian": False,
        }
    )

    return PropertyPrediction(
        instance=inst,
        flags=flags,
        paper_flags=paper_flags,
        perfect=_perfect_prediction(inst),
        odd_hole_free=_odd_hole_prediction(inst),
        max_degree=max_degree_formula(inst),
        min_degree=min_degree_formula(inst),
        degree_table={d: degree_formula(inst, d) for d in proper_divisors_above_one(n)},
    )

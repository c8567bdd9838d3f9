"""
Модели конечных групп: циклические, прямые произведения и группы,
заданные таблицей умножения. Графам нужны только порядки элементов
и принадлежность подгруппе, поэтому всё хранится в индексах 0..n-1,
где 0 — единица.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from math import gcd, lcm, prod
from typing import Callable, Iterable, Sequence

from sympy import Quaternion
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import (
    AlternatingGroup,
    DihedralGroup,
    SymmetricGroup,
)

from numthy import factorize, is_prime_power, theta
from utils.validators import InvalidInputError, TableValidationError, require_within_guard

logger = logging.getLogger(__name__)


# ─── Группы ───────────────────────────────────────────────────────


class FiniteGroup(ABC):
    """Конечная группа на индексах 0..order-1 с единицей в индексе 0."""

    def __init__(self, name: str, order: int) -> None:
        self.name = name
        self.order = order

    @abstractmethod
    def multiply(self, i: int, j: int) -> int:
        """Индекс произведения элементов i и j."""

    @abstractmethod
    def element_name(self, i: int) -> str:
        """Читаемое имя элемента."""

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    # Порядки элементов возведением в степень
    @cached_property
    def orders(self) -> tuple[int, ...]:
        result = []
        for x in self.elements():
            k, y = 1, x
            while y != 0:
                y = self.multiply(y, x)
                k += 1
                if k > self.order:
                    raise TableValidationError("конечность порядка", (x,), "степени не дают единицу")
            if self.order % k:
                raise TableValidationError("теорема Лагранжа", (x,), f"порядок {k} не делит {self.order}")
            result.append(k)
        return tuple(result)

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        inv = []
        for x in self.elements():
            inv.append(next(y for y in self.elements() if self.multiply(x, y) == 0))
        return tuple(inv)

    @cached_property
    def is_abelian(self) -> bool:
        return all(
            self.multiply(x, y) == self.multiply(y, x)
            for x in self.elements()
            for y in range(x + 1, self.order)
        )

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, order={self.order})"


class CyclicGroup(FiniteGroup):
    """Z_n: элемент x — вычет x по модулю n."""

    def __init__(self, n: int) -> None:
        if n < 1:
            raise InvalidInputError(f"Порядок циклической группы должен быть ≥ 1, получено {n}")
        require_within_guard("group", n)
        super().__init__(f"Z{n}", n)

    def multiply(self, i: int, j: int) -> int:
        return (i + j) % self.order

    def element_name(self, i: int) -> str:
        return str(i)

    @cached_property
    def orders(self) -> tuple[int, ...]:
        return tuple(self.order // gcd(self.order, x) for x in self.elements())

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple((-x) % self.order for x in self.elements())

    @property
    def is_abelian(self) -> bool:
        return True


class ProductGroup(FiniteGroup):
    """
    Прямое произведение. Индекс элемента — смешанная система счисления
    по порядкам множителей, первый множитель старший.
    """

    def __init__(self, factors: Sequence[FiniteGroup]) -> None:
        if not factors:
            raise InvalidInputError("Прямое произведение требует хотя бы одного множителя")
        self.factors = tuple(factors)
        self.radices = tuple(f.order for f in self.factors)
        super().__init__("x".join(f.name for f in self.factors), prod(self.radices))

    def components(self, i: int) -> tuple[int, ...]:
        parts = []
        for radix in reversed(self.radices):
            i, c = divmod(i, radix)
            parts.append(c)
        return tuple(reversed(parts))

    def index_of(self, components: Sequence[int]) -> int:
        i = 0
        for c, radix in zip(components, self.radices):
            i = i * radix + c
        return i

    def multiply(self, i: int, j: int) -> int:
        return self.index_of(
            tuple(
                f.multiply(a, b)
                for f, a, b in zip(self.factors, self.components(i), self.components(j))
            )
        )

    def element_name(self, i: int) -> str:
        names = (f.element_name(c) for f, c in zip(self.factors, self.components(i)))
        return "(" + ",".join(names) + ")"

    @cached_property
    def orders(self) -> tuple[int, ...]:
        return tuple(
            lcm(*(f.orders[c] for f, c in zip(self.factors, self.components(i))))
            for i in self.elements()
        )


class TableGroup(FiniteGroup):
    """Группа, заданная таблицей Кэли; при создании проверяются все аксиомы."""

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        names: Sequence[str] | None = None,
        name: str = "G",
    ) -> None:
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        super().__init__(name, len(self.table))
        self.names = tuple(names) if names else tuple(str(i) for i in range(self.order))
        validate_table(self.table, self.names)

    def multiply(self, i: int, j: int) -> int:
        return self.table[i][j]

    def element_name(self, i: int) -> str:
        return self.names[i]


# Полная проверка таблицы умножения
def validate_table(table: Sequence[Sequence[int]], names: Sequence[str] = ()) -> None:
    """
    Проверяет форму таблицы, единицу в индексе 0, обратные и ассоциативность.
    Бросает TableValidationError с первой нарушенной аксиомой.
    """
    n = len(table)
    if n == 0:
        raise TableValidationError("непустота", (), "таблица пуста")
    if names and len(names) != n:
        raise TableValidationError("имена элементов", (len(names),), f"ожидалось {n} имён")
    if names and len(set(names)) != n:
        raise TableValidationError("имена элементов", (), "имена не уникальны")

    # Форма и диапазон значений
    for i, row in enumerate(table):
        if len(row) != n:
            raise TableValidationError("квадратность", (i,), f"в строке {len(row)} значений вместо {n}")
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise TableValidationError("замкнутость", (i, j), f"значение {v} вне 0..{n - 1}")

    # Единица в индексе 0
    for x in range(n):
        if table[0][x] != x or table[x][0] != x:
            raise TableValidationError("единица", (0, x), "индекс 0 не является двусторонней единицей")

    # Обратные элементы
    for x in range(n):
        if not any(table[x][y] == 0 and table[y][x] == 0 for y in range(n)):
            raise TableValidationError("обратный элемент", (x,))

    # Ассоциативность на всех тройках
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise TableValidationError("ассоциативность", (a, b, c))

    logger.debug("Таблица порядка %s прошла проверку", n)


# Таблица из функции умножения над списком элементов
def from_func(elements: Sequence, mult: Callable, name: str, names: Sequence[str] | None = None) -> TableGroup:
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[mult(a, b)] for b in elements] for a in elements]
    return TableGroup(table, names or [str(e) for e in elements], name)


def _cycle_name(p: Permutation) -> str:
    if p.is_Identity:
        return "e"
    return "".join("(" + "".join(str(v) for v in cycle) + ")" for cycle in p.cyclic_form)


# Таблица группы перестановок sympy
def from_permutation_group(pgroup: PermutationGroup, name: str) -> TableGroup:
    """Элементы упорядочены по array_form, так что тождественная перестановка получает индекс 0."""
    elements = sorted(pgroup.elements, key=lambda p: p.array_form)
    keys = [tuple(p.array_form) for p in elements]
    return from_func(
        keys,
        lambda a, b: tuple((Permutation(list(a)) * Permutation(list(b))).array_form),
        name,
        [_cycle_name(p) for p in elements],
    )


# Группа кватернионов Q_8
def quaternion_group() -> TableGroup:
    units = [
        (1, 0, 0, 0),
        (-1, 0, 0, 0),
        (0, 1, 0, 0),
        (0, -1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, -1, 0),
        (0, 0, 0, 1),
        (0, 0, 0, -1),
    ]
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]

    def mult(a: tuple, b: tuple) -> tuple:
        q = Quaternion(*a) * Quaternion(*b)
        return (int(q.a), int(q.b), int(q.c), int(q.d))

    return from_func(units, mult, "Q8", names)


# ─── Подгруппы ────────────────────────────────────────────────────


@dataclass(frozen=True)
class SubgroupRef:
    """Подгруппа как битовая маска принадлежности над индексами группы."""

    group: FiniteGroup = field(compare=False, repr=False)
    members: int
    order: int

    def contains(self, x: int) -> bool:
        return bool(self.members >> x & 1)

    def elements(self) -> list[int]:
        return [x for x in self.group.elements() if self.members >> x & 1]

    @property
    def is_whole(self) -> bool:
        return self.order == self.group.order

    def label(self) -> str:
        if self.is_whole:
            return self.group.name
        return "{" + ",".join(self.group.element_name(x) for x in self.elements()) + "}"


def _mask(elements: Iterable[int]) -> int:
    mask = 0
    for x in elements:
        mask |= 1 << x
    return mask


# Создание подгруппы с проверкой замкнутости
def make_subgroup(G: FiniteGroup, elements: Iterable[int]) -> SubgroupRef:
    members = sorted(set(elements))
    if not members or members[0] != 0:
        raise InvalidInputError("Подгруппа должна содержать единицу")
    if members[-1] >= G.order:
        raise InvalidInputError(f"Индекс {members[-1]} вне группы порядка {G.order}")
    mask = _mask(members)
    for a in members:
        if not mask >> G.inverses[a] & 1:
            raise InvalidInputError(f"Подгруппа не замкнута относительно обратного к {a}")
        for b in members:
            if not mask >> G.multiply(a, b) & 1:
                raise InvalidInputError(f"Подгруппа не замкнута: {a}·{b}")
    if G.order % len(members):
        raise InvalidInputError(f"Порядок {len(members)} не делит {G.order}")
    return SubgroupRef(G, mask, len(members))


# Вся группа как подгруппа
def whole_subgroup(G: FiniteGroup) -> SubgroupRef:
    return SubgroupRef(G, (1 << G.order) - 1, G.order)


# Замыкание множества образующих
def closure(G: FiniteGroup, generators: Iterable[int]) -> int:
    """Битовая маска подгруппы, порождённой generators."""
    gens = [g for g in set(generators) if g != 0]
    mask = 1
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = G.multiply(x, g)
            if not mask >> y & 1:
                mask |= 1 << y
                frontier.append(y)
    return mask


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


# Порядок элемента
def element_order(G: FiniteGroup, x: int) -> int:
    if not 0 <= x < G.order:
        raise InvalidInputError(f"Индекс {x} вне группы порядка {G.order}")
    return G.orders[x]


# Единственная подгруппа порядка h в Z_n
def cyclic_subgroup_of_order(n: int, h: int, group: FiniteGroup | None = None) -> SubgroupRef:
    """Кратные n/h; для Z_n это единственная подгруппа порядка h."""
    if h < 1 or n % h:
        raise InvalidInputError(f"Порядок подгруппы {h} не делит {n}")
    G = group if group is not None else CyclicGroup(n)
    if G.order != n:
        raise InvalidInputError(f"Группа {G.name} имеет порядок {G.order}, а не {n}")
    step = n // h
    return SubgroupRef(G, _mask(range(0, n, step)), h)


# Все подгруппы малой группы
def all_subgroups(G: FiniteGroup) -> list[SubgroupRef]:
    """
    Циклические подгруппы и подгруппы с двумя образующими,
    затем достраивание до неподвижной точки.
    """
    require_within_guard("subgroups", G.order)

    found: set[int] = {closure(G, [g]) for g in G.elements()}
    cyclic = sorted(found)
    for i, a in enumerate(cyclic):
        for b in cyclic[i + 1:]:
            found.add(closure(G, _bits(a | b)))

    # Достраиваем добавлением по одному элементу
    frontier = list(found)
    while frontier:
        mask = frontier.pop()
        for g in G.elements():
            if mask >> g & 1:
                continue
            bigger = closure(G, _bits(mask) + [g])
            if bigger not in found:
                found.add(bigger)
                frontier.append(bigger)

    subgroups = [SubgroupRef(G, m, m.bit_count()) for m in found]
    subgroups.sort(key=lambda s: (s.order, s.members))
    logger.debug("Группа %s: найдено подгрупп %s", G.name, len(subgroups))
    return subgroups


# Прямое произведение групп
def direct_product(groups: Sequence[FiniteGroup]) -> ProductGroup:
    if not groups:
        raise InvalidInputError("Прямое произведение требует хотя бы одного множителя")
    require_within_guard("product", prod(g.order for g in groups))
    return ProductGroup(groups)


# Произведение подгрупп внутри прямого произведения
def product_subgroup(P: ProductGroup, parts: Sequence[SubgroupRef]) -> SubgroupRef:
    if len(parts) != len(P.factors):
        raise InvalidInputError("Число подгрупп не совпадает с числом множителей")
    for part, factor in zip(parts, P.factors):
        if part.group.order != factor.order:
            raise InvalidInputError(f"Подгруппа группы {part.group.name} не лежит в {factor.name}")
    members = [
        P.index_of(combo) for combo in product(*(part.elements() for part in parts))
    ]
    return make_subgroup(P, members)


# Биекция Z_n → Z_{m_1} × ... × Z_{m_k} по китайской теореме об остатках
def crt_mapping(n: int, moduli: Sequence[int]) -> list[int]:
    """Для x ∈ Z_n возвращает индекс (x mod m_1, ..., x mod m_k) в произведении."""
    if prod(moduli) != n or any(gcd(a, b) != 1 for i, a in enumerate(moduli) for b in moduli[i + 1:]):
        raise InvalidInputError(f"Модули {list(moduli)} не взаимно просты или не дают {n}")
    P = ProductGroup([CyclicGroup(m) for m in moduli])
    return [P.index_of([x % m for m in moduli]) for x in range(n)]


# Все ли элементы имеют порядок — степень простого
def is_eppo(G: FiniteGroup) -> bool:
    return all(o == 1 or is_prime_power(o) for o in G.orders)


# Центр группы
def centre(G: FiniteGroup) -> SubgroupRef:
    members = [
        x
        for x in G.elements()
        if all(G.multiply(x, y) == G.multiply(y, x) for y in G.elements())
    ]
    return SubgroupRef(G, _mask(members), len(members))


# Нильпотентность через единственность силовских подгрупп
def is_nilpotent(G: FiniteGroup) -> bool:
    """Для каждого p число p-элементов (с единицей) равно p-части порядка."""
    for p, e in factorize(G.order):
        p_elements = sum(1 for o in G.orders if theta(o) <= {p})
        if p_elements != p**e:
            return False
    return True


# ─── Каталог ──────────────────────────────────────────────────────

NILPOTENT_CATALOG: tuple[str, ...] = ("Z2xZ2", "Z2xZ4", "Z2xZ2xZ3", "Z3xZ3", "Q8", "D4", "Q8xZ3")
NEGATIVE_CONTROLS: tuple[str, ...] = ("S3",)
EPPO_CATALOG: tuple[str, ...] = ("S3", "A4", "Z8", "Z9", "Z2xZ2")
TRIVIAL_CENTRE_CATALOG: tuple[str, ...] = ("S3", "S4", "A4", "D5")
TAGGED_PAIRS: tuple[tuple[str, str], ...] = (
    ("Z2", "Z3"),
    ("Z4", "Z9"),
    ("Z8", "Z3"),
    ("Q8", "Z3"),
    ("S3", "Z5"),
)

_NAMED: dict[str, Callable[[], FiniteGroup]] = {
    "Q8": quaternion_group,
    "D4": lambda: from_permutation_group(DihedralGroup(4), "D4"),
    "D5": lambda: from_permutation_group(DihedralGroup(5), "D5"),
    "S3": lambda: from_permutation_group(SymmetricGroup(3), "S3"),
    "S4": lambda: from_permutation_group(SymmetricGroup(4), "S4"),
    "A4": lambda: from_permutation_group(AlternatingGroup(4), "A4"),
}


# Группа по имени: Zn, именованная или произведение через «x»
@lru_cache(maxsize=128)
def catalog_group(spec: str) -> FiniteGroup:
    """
    Разбирает имя группы: «Z12», «Q8», «S3», «Z2xZ4», «Q8xZ3».
    Произведение строится через direct_product.
    """
    parts = [part.strip() for part in spec.replace("×", "x").split("x") if part.strip()]
    if not parts:
        raise InvalidInputError(f"Пустое имя группы: «{spec}»")
    if len(parts) > 1:
        return direct_product([catalog_group(part) for part in parts])

    name = parts[0]
    if name in _NAMED:
        return _NAMED[name]()
    if name[:1] in ("Z", "C") and name[1:].isdigit():
        return CyclicGroup(int(name[1:]))
    raise InvalidInputError(f"Неизвестная группа: «{spec}»")


# Весь встроенный каталог
def build_catalog() -> dict[str, FiniteGroup]:
    names = dict.fromkeys(
        NILPOTENT_CATALOG + NEGATIVE_CONTROLS + EPPO_CATALOG + TRIVIAL_CENTRE_CATALOG + ("Z6",)
    )
    return {name: catalog_group(name) for name in names}

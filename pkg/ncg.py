"""
Графы, которые строятся по группе и подгруппе: обобщённый граф некопростоты,
тегированный граф копростоты с категорным произведением и восстановлением,
предсказание для EPPO-групп, граф Грюнберга–Кегеля и граф коммутирования.
"""

import logging
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Iterable, Sequence

from graphcore import SimpleGraph, iter_bits, mask_of
from groups import FiniteGroup, SubgroupRef, centre, is_eppo
from numthy import factorize, theta
from utils.validators import InvalidInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NcGraph:
    """
    Обобщённый граф некопростоты Γ_{G,H}. Вершина k соответствует элементу
    elements[k]; порядок и принадлежность H хранятся рядом.
    """

    graph: SimpleGraph
    elements: tuple[int, ...]
    orders: tuple[int, ...]
    in_h: tuple[bool, ...]
    group_order: int
    subgroup_order: int
    group: FiniteGroup | None = field(default=None, compare=False, repr=False)
    subgroup: SubgroupRef | None = field(default=None, compare=False, repr=False)

    def order_labels(self, vertices: Sequence[int]) -> list[int]:
        return [self.orders[v] for v in vertices]


@dataclass(frozen=True)
class LoopedTaggedGraph:
    """Граф на всех элементах группы; бит v в adj[v] — петля. tagged — маска тегов."""

    labels: tuple[str, ...]
    adj: tuple[int, ...]
    tagged: int
    orders: tuple[int, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.adj)

    def loops(self) -> list[int]:
        return [v for v, row in enumerate(self.adj) if row >> v & 1]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def is_tagged(self, v: int) -> bool:
        return bool(self.tagged >> v & 1)


# ─── Обобщённый граф некопростоты ─────────────────────────────────


def _check_pair(G: FiniteGroup, H: SubgroupRef) -> None:
    if H.group is not G and H.group.order != G.order:
        raise InvalidInputError(f"Подгруппа взята из другой группы: {H.group.name}")
    if G.order < 2:
        raise InvalidInputError("Группа должна иметь порядок ≥ 2")
    if H.order < 2:
        raise InvalidInputError("Подгруппа H = {e} не допускается")


# Построение Γ_{G,H}
def build_gncg(G: FiniteGroup, H: SubgroupRef) -> NcGraph:
    """
    Вершины — G∖{e} в порядке индексов; a~b, если gcd(|a|,|b|) ≠ 1
    и a или b лежит в H. Смежность собирается по классам (порядок, в H).
    """
    _check_pair(G, H)
    elements = tuple(range(1, G.order))
    orders = tuple(G.orders[x] for x in elements)
    in_h = tuple(H.contains(x) for x in elements)

    # Маски классов вершин
    classes: dict[tuple[int, bool], int] = {}
    for v, key in enumerate(zip(orders, in_h)):
        classes[key] = classes.get(key, 0) | 1 << v

    class_adj: dict[tuple[int, bool], int] = {}
    for k1 in classes:
        mask = 0
        for k2, members in classes.items():
            if gcd(k1[0], k2[0]) != 1 and (k1[1] or k2[1]):
                mask |= members
        class_adj[k1] = mask

    adj = tuple(
        class_adj[(o, h)] & ~(1 << v) for v, (o, h) in enumerate(zip(orders, in_h))
    )
    graph = SimpleGraph(tuple(G.element_name(x) for x in elements), adj)
    logger.debug(
        "Построен Γ(%s, %s): %s вершин, %s рёбер", G.name, H.order, graph.n, graph.edge_count
    )
    return NcGraph(graph, elements, orders, in_h, G.order, H.order, G, H)


# ─── Тегированный граф копростоты ─────────────────────────────────


def _union(masks: Iterable[int]) -> int:
    result = 0
    for m in masks:
        result |= m
    return result


# Построение tc(G, H)
def build_tagged_coprime(G: FiniteGroup, H: SubgroupRef) -> LoopedTaggedGraph:
    _check_pair(G, H)
    orders = G.orders
    classes: dict[int, int] = {}
    for x, o in enumerate(orders):
        classes[o] = classes.get(o, 0) | 1 << x

    class_adj = {
        o1: _union(members for o2, members in classes.items() if gcd(o1, o2) == 1)
        for o1 in classes
    }
    adj = tuple(class_adj[o] for o in orders)
    labels = tuple(G.element_name(x) for x in G.elements())
    return LoopedTaggedGraph(labels, adj, H.members, tuple(orders))


# Категорное произведение тегированных графов
def categorical_product(t1: LoopedTaggedGraph, t2: LoopedTaggedGraph) -> LoopedTaggedGraph:
    """Вершина (i, j) получает индекс i·|t2| + j; смежность — конъюнкция по координатам."""
    n2 = t2.n
    adj = []
    labels = []
    tagged = 0
    orders = [] if t1.orders is not None and t2.orders is not None else None
    for i in range(t1.n):
        for j in range(n2):
            row = 0
            for u in iter_bits(t1.adj[i]):
                row |= t2.adj[j] << (u * n2)
            adj.append(row)
            labels.append(f"({t1.labels[i]},{t2.labels[j]})")
            if t1.is_tagged(i) and t2.is_tagged(j):
                tagged |= 1 << (i * n2 + j)
            if orders is not None:
                orders.append(lcm(t1.orders[i], t2.orders[j]))
    return LoopedTaggedGraph(
        tuple(labels), tuple(adj), tagged, tuple(orders) if orders is not None else None
    )


# Восстановление Γ_{G,H} из tc(G, H)
def recover_gncg(t: LoopedTaggedGraph) -> NcGraph:
    """
    Удалить единицу, соединить все пары нетегированных вершин,
    снять теги, перейти к дополнению.
    """
    loops = t.loops()
    if len(loops) != 1:
        raise InvalidInputError(f"Ожидалась ровно одна петля, найдено {len(loops)}")
    identity = loops[0]

    # Шаг 1: удаляем единицу
    keep = [v for v in range(t.n) if v != identity]
    index = {v: i for i, v in enumerate(keep)}
    keep_mask = mask_of(keep)
    adj = [mask_of(index[u] for u in iter_bits(t.adj[v] & keep_mask)) for v in keep]

    # Шаг 2: все рёбра между нетегированными вершинами
    untagged = mask_of(i for i, v in enumerate(keep) if not t.is_tagged(v))
    for i in iter_bits(untagged):
        adj[i] |= untagged & ~(1 << i)

    # Шаги 3 и 4: снимаем теги и берём дополнение
    graph = SimpleGraph(tuple(t.labels[v] for v in keep), tuple(adj)).complement()
    orders = tuple(t.orders[v] for v in keep) if t.orders is not None else tuple(0 for _ in keep)
    in_h = tuple(t.is_tagged(v) for v in keep)
    return NcGraph(graph, tuple(keep), orders, in_h, t.n, t.tagged.bit_count())


# Сравнение тегированных графов при заданной биекции вершин
def tagged_equal(
    t1: LoopedTaggedGraph, t2: LoopedTaggedGraph, mapping: Sequence[int] | None = None
) -> bool:
    """mapping[i] — образ вершины i графа t1 в t2; по умолчанию тождественное."""
    if t1.n != t2.n:
        return False
    image = list(mapping) if mapping is not None else list(range(t1.n))
    for i in range(t1.n):
        if t1.is_tagged(i) != t2.is_tagged(image[i]):
            return False
        if mask_of(image[u] for u in iter_bits(t1.adj[i])) != t2.adj[image[i]]:
            return False
    return True


# ─── EPPO-группы ──────────────────────────────────────────────────


# Граф X(n, m): K_n без рёбер K_m
def x_graph(n: int, m: int, prefix: str = "") -> SimpleGraph:
    """Первые n − m вершин соединены со всеми, последние m попарно несмежны."""
    if not 0 <= m <= n:
        raise InvalidInputError(f"X(n, m) требует 0 ≤ m ≤ n, получено n={n}, m={m}")
    core = n - m
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if u < core]
    return SimpleGraph.from_edges(n, edges, [f"{prefix}{i}" for i in range(n)])


# Параметры (p, n_p, m_p) для EPPO-группы
def eppo_components(G: FiniteGroup, H: SubgroupRef) -> list[tuple[int, int, int]]:
    if not is_eppo(G):
        raise InvalidInputError(f"Группа {G.name} не является EPPO-группой")
    result = []
    for p, _ in factorize(G.order):
        omega_g = [x for x in G.elements() if x and theta(G.orders[x]) == {p}]
        n_p = len(omega_g)
        m_p = sum(1 for x in omega_g if not H.contains(x))
        result.append((p, n_p, m_p))
    return result


def disjoint_union(graphs: Sequence[SimpleGraph]) -> SimpleGraph:
    labels: list[str] = []
    adj: list[int] = []
    offset = 0
    for g in graphs:
        labels.extend(g.labels)
        adj.extend(row << offset for row in g.adj)
        offset += g.n
    return SimpleGraph(tuple(labels), tuple(adj))


# Предсказание Γ_{G,H} для EPPO-группы
def eppo_prediction(G: FiniteGroup, H: SubgroupRef) -> SimpleGraph:
    return disjoint_union(
        [x_graph(n_p, m_p, prefix=f"{p}:") for p, n_p, m_p in eppo_components(G, H)]
    )


# Следствие о связности в исходной формулировке
def eppo_connectivity_literal(G: FiniteGroup, H: SubgroupRef) -> bool:
    """H содержит Ω_p(G) для всех простых, кроме ровно одного."""
    return sum(1 for _, _, m_p in eppo_components(G, H) if m_p > 0) == 1


# Связность без учёта изолированных вершин, проверенная по X(n_p, m_p)
def eppo_connectivity_nonisolated(G: FiniteGroup, H: SubgroupRef) -> bool:
    """H — p-группа: рёбра есть только в одной компоненте X(n_p, m_p)."""
    eppo_components(G, H)
    return len(theta(H.order)) <= 1


def eppo_connectivity_strict(G: FiniteGroup, H: SubgroupRef) -> bool:
    eppo_components(G, H)
    return len(theta(G.order)) == 1


# ─── Граф Грюнберга–Кегеля и граф коммутирования ──────────────────


# Граф Грюнберга–Кегеля
def gk_graph(G: FiniteGroup) -> SimpleGraph:
    """p~q, если порядок некоторого элемента делится на pq."""
    primes = [p for p, _ in factorize(G.order)]
    orders = set(G.orders)
    edges = [
        (i, j)
        for i, p in enumerate(primes)
        for j in range(i + 1, len(primes))
        if any(o % (p * primes[j]) == 0 for o in orders)
    ]
    return SimpleGraph.from_edges(len(primes), edges, [str(p) for p in primes])


# Граф коммутирования
def commuting_graph(G: FiniteGroup) -> SimpleGraph:
    Z = centre(G)
    vertices = [x for x in G.elements() if not Z.contains(x)]
    edges = [
        (i, j)
        for i, x in enumerate(vertices)
        for j in range(i + 1, len(vertices))
        if G.multiply(x, vertices[j]) == G.multiply(vertices[j], x)
    ]
    return SimpleGraph.from_edges(len(vertices), edges, [G.element_name(x) for x in vertices])


# Связность без учёта изолированных вершин
def is_connected_ignoring_isolated(graph: SimpleGraph) -> bool:
    active = [v for v in range(graph.n) if graph.adj[v]]
    if not active:
        return True
    return len(graph.induced(active).components()) == 1

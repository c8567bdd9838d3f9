"""
Простые графы на битовых масках смежности и алгоритмы распознавания:
форма графа, расщепляемые, хордальные и бесклешнёвые графы, редукция
близнецов, отсечение вершин, поиск нечётных дыр и антидыр, совершенность
и изоморфизм малых графов.

Вершины — индексы 0..n-1, смежность вершины v — целое число, где бит u
установлен, если есть ребро v–u.
"""

import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from config import COST_GUARDS, PRUNE_CROSS_CHECK
from utils.validators import InvalidInputError, require_within_guard

logger = logging.getLogger(__name__)


# Перебор установленных битов маски
def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


# ─── Граф ─────────────────────────────────────────────────────────


@dataclass(frozen=True)
class SimpleGraph:
    """Неориентированный граф без петель; adj[v] — битовая маска соседей v."""

    labels: tuple[str, ...]
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.adj):
            raise InvalidInputError("Число меток не совпадает с числом вершин")
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise InvalidInputError(f"Петля в вершине {v}")
            if row >> len(self.adj):
                raise InvalidInputError(f"Сосед вершины {v} вне графа")

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None
    ) -> "SimpleGraph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise InvalidInputError(f"Петля в вершине {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        names = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(set(names)) != len(names):
            raise InvalidInputError("Метки вершин не уникальны")
        return cls(names, tuple(adj))

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "SimpleGraph":
        nodes = sorted(g.nodes)
        index = {v: i for i, v in enumerate(nodes)}
        return cls.from_edges(
            len(nodes),
            ((index[u], index[v]) for u, v in g.edges if u != v),
            [str(v) for v in nodes],
        )

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def degree_sequence(self) -> list[int]:
        return sorted(self.degrees(), reverse=True)

    @cached_property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def complement(self) -> "SimpleGraph":
        full = self.full_mask
        return SimpleGraph(
            self.labels, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj))
        )

    def induced(self, vertices: Iterable[int]) -> "SimpleGraph":
        """Индуцированный подграф; вершины перенумеровываются по возрастанию."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        sub_mask = mask_of(keep)
        adj = tuple(mask_of(index[u] for u in iter_bits(self.adj[v] & sub_mask)) for v in keep)
        return SimpleGraph(tuple(self.labels[v] for v in keep), adj)

    def components(self) -> list[list[int]]:
        seen = 0
        result = []
        for start in range(self.n):
            if seen >> start & 1:
                continue
            comp = 1 << start
            frontier = comp
            while frontier:
                reach = 0
                for v in iter_bits(frontier):
                    reach |= self.adj[v]
                frontier = reach & ~comp
                comp |= frontier
            seen |= comp
            result.append(list(iter_bits(comp)))
        return result

    @cached_property
    def nxgraph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g


@dataclass(frozen=True)
class ShapeFlags:
    star: bool
    path: bool
    cycle: bool
    complete: bool
    complete_bipartite: bool
    triangle_free: bool
    unicyclic: bool
    eulerian: bool

    def as_dict(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


@dataclass
class ReductionTrace:
    """Шаги редукции (оставлена, удалена, вид близнецов) в исходных индексах."""

    steps: list[tuple[int, int, str]]
    graph: SimpleGraph
    survivors: tuple[int, ...]
    representative: dict[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class Witness:
    """Индуцированная нечётная дыра (hole) или дополнение к ней (antihole)."""

    vertices: tuple[int, ...]
    kind: str


# ─── Связность и форма ────────────────────────────────────────────


def is_connected(graph: SimpleGraph) -> bool:
    if graph.n == 0:
        raise InvalidInputError("Связность не определена для пустого графа")
    return len(graph.components()) == 1


def _bipartition(graph: SimpleGraph) -> tuple[int, int] | None:
    colour: dict[int, int] = {}
    for start in range(graph.n):
        if start in colour:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for u in iter_bits(graph.adj[v]):
                if u not in colour:
                    colour[u] = 1 - colour[v]
                    stack.append(u)
                elif colour[u] == colour[v]:
                    return None
    left = sum(1 for c in colour.values() if c == 0)
    return left, graph.n - left


def is_triangle_free(graph: SimpleGraph) -> bool:
    return not any(graph.adj[u] & graph.adj[v] for u, v in graph.edges())


# Классификация формы по определениям
def classify_shape(graph: SimpleGraph) -> ShapeFlags:
    """Звезда, путь, цикл, полный, полный двудольный, без треугольников, унициклический, эйлеров."""
    n = graph.n
    if n == 0:
        raise InvalidInputError("Форма не определена для пустого графа")
    m = graph.edge_count
    degs = graph.degrees()
    comps = len(graph.components())
    connected = comps == 1

    parts = _bipartition(graph)
    complete_bipartite = (
        connected and parts is not None and min(parts) > 0 and m == parts[0] * parts[1]
    )
    return ShapeFlags(
        star=n >= 2 and connected and m == n - 1 and max(degs) == n - 1,
        path=connected and m == n - 1 and max(degs, default=0) <= 2,
        cycle=n >= 3 and connected and all(d == 2 for d in degs),
        complete=m == n * (n - 1) // 2,
        complete_bipartite=complete_bipartite,
        triangle_free=is_triangle_free(graph),
        unicyclic=m - n + comps == 1,
        eulerian=connected and all(d % 2 == 0 for d in degs),
    )


# ─── Распознавание классов ────────────────────────────────────────


# Критерий Хаммера–Симеоне по степенной последовательности
def is_split(graph: SimpleGraph) -> bool:
    d = graph.degree_sequence()
    m = 0
    for i, di in enumerate(d, start=1):
        if di >= i - 1:
            m = i
    return sum(d[:m]) == m * (m - 1) + sum(d[m:])


def is_chordal(graph: SimpleGraph) -> bool:
    """Поиск максимальной мощности с проверкой порядка исключения (networkx)."""
    if graph.n == 0:
        return True
    return nx.is_chordal(graph.nxgraph)


# Поиск клешни K_{1,3}: центр и три попарно несмежных соседа
def find_claw(graph: SimpleGraph) -> tuple[int, int, int, int] | None:
    adj = graph.adj
    for v in range(graph.n):
        nbrs = adj[v]
        for a in iter_bits(nbrs):
            rest = nbrs & ~adj[a] & ~((1 << (a + 1)) - 1)
            for b in iter_bits(rest):
                third = rest & ~adj[b] & ~((1 << (b + 1)) - 1)
                if third:
                    return v, a, b, next(iter_bits(third))
    return None


def is_claw_free(graph: SimpleGraph) -> bool:
    return find_claw(graph) is None


# Поиск индуцированной копии малого графа
def find_induced_copy(graph: SimpleGraph, pattern: SimpleGraph) -> tuple[int, ...] | None:
    """Вершины graph, образующие индуцированный подграф, изоморфный pattern."""
    matcher = GraphMatcher(graph.nxgraph, pattern.nxgraph)
    for mapping in matcher.subgraph_isomorphisms_iter():
        inverse = {p: g for g, p in mapping.items()}
        return tuple(inverse[i] for i in range(pattern.n))
    return None


# Запрещённые подграфы расщепляемых графов
SPLIT_FORBIDDEN: dict[str, SimpleGraph] = {
    "2K2": SimpleGraph.from_edges(4, [(0, 1), (2, 3)]),
    "C4": SimpleGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
    "C5": SimpleGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
}


def find_split_obstruction(graph: SimpleGraph) -> tuple[str, tuple[int, ...]] | None:
    for name, pattern in SPLIT_FORBIDDEN.items():
        found = find_induced_copy(graph, pattern)
        if found is not None:
            return name, found
    return None


# ─── Близнецы ─────────────────────────────────────────────────────


def _twin_groups(adj: Sequence[int], alive: int) -> list[tuple[str, list[int]]]:
    """Классы открытых и замкнутых близнецов среди живых вершин (размер ≥ 2)."""
    open_groups: dict[int, list[int]] = {}
    closed_groups: dict[int, list[int]] = {}
    for v in iter_bits(alive):
        nbrs = adj[v] & alive
        open_groups.setdefault(nbrs, []).append(v)
        closed_groups.setdefault(nbrs | 1 << v, []).append(v)
    groups = [("open", vs) for vs in open_groups.values() if len(vs) > 1]
    groups += [("closed", vs) for vs in closed_groups.values() if len(vs) > 1]
    return groups


def twin_classes(graph: SimpleGraph) -> list[list[int]]:
    """Разбиение вершин на классы близнецов; одиночные вершины — отдельные классы."""
    grouped = 0
    classes = []
    for _, vs in _twin_groups(graph.adj, graph.full_mask):
        classes.append(vs)
        grouped |= mask_of(vs)
    classes += [[v] for v in iter_bits(graph.full_mask & ~grouped)]
    classes.sort()
    return classes


# Оставить не больше keep вершин из каждого класса близнецов
def trim_twin_classes(graph: SimpleGraph, keep: int) -> tuple[SimpleGraph, list[int]]:
    """
    Сохраняет любой индуцированный подграф, берущий не больше keep вершин
    из одного класса. Возвращает граф и исходные индексы его вершин.
    """
    kept = sorted(v for vs in twin_classes(graph) for v in vs[:keep])
    return graph.induced(kept), kept


# Редукция близнецов
def twin_reduce(graph: SimpleGraph, rng: random.Random | None = None) -> ReductionTrace:
    """
    Удаляет по одной вершине из пар близнецов, пока они есть.
    Без rng удаляется вершина с большим индексом, при rng порядок случайный.
    """
    adj = graph.adj
    alive = graph.full_mask
    steps: list[tuple[int, int, str]] = []
    parent: dict[int, int] = {}

    while True:
        groups = _twin_groups(adj, alive)
        if not groups:
            break
        if rng is None:
            # Пара близнецов остаётся парой после удаления любых других вершин
            for kind, vs in groups:
                keeper = vs[0]
                for victim in vs[1:]:
                    steps.append((keeper, victim, kind))
                    parent[victim] = keeper
                    alive &= ~(1 << victim)
        else:
            kind, vs = rng.choice(groups)
            keeper, victim = rng.sample(vs, 2)
            steps.append((keeper, victim, kind))
            parent[victim] = keeper
            alive &= ~(1 << victim)

    survivors = tuple(iter_bits(alive))
    representative = {}
    for v in range(graph.n):
        r = v
        while r in parent:
            r = parent[r]
        representative[v] = r

    logger.debug("Редукция близнецов: %s → %s вершин", graph.n, len(survivors))
    return ReductionTrace(steps, graph.induced(survivors), survivors, representative)


# ─── Дыры и антидыры ──────────────────────────────────────────────


def _prunable(adj: Sequence[int], alive: int, v: int) -> bool:
    nbrs = adj[v] & alive
    others = alive & ~(1 << v)
    non_nbrs = others & ~nbrs
    if nbrs.bit_count() < 2 or non_nbrs.bit_count() < 2:
        return True
    # Окрестность — клика
    if all(nbrs & ~(1 << u) & ~adj[u] == 0 for u in iter_bits(nbrs)):
        return True
    # Неокрестность — независимое множество
    return all(adj[u] & non_nbrs == 0 for u in iter_bits(non_nbrs))


def prune_survivors(graph: SimpleGraph, single_pass: bool = False) -> list[int]:
    alive = graph.full_mask
    if single_pass:
        return [v for v in range(graph.n) if not _prunable(graph.adj, alive, v)]
    changed = True
    while changed:
        changed = False
        for v in iter_bits(alive):
            if _prunable(graph.adj, alive, v):
                alive &= ~(1 << v)
                changed = True
    return list(iter_bits(alive))


# Отсечение вершин, не лежащих на нечётных дырах и антидырах
def hole_prune(graph: SimpleGraph, single_pass: bool = False) -> SimpleGraph:
    """
    Удаляет до неподвижной точки вершины степени < 2, костепени < 2,
    с полной окрестностью или с пустой неокрестностью.
    При single_pass условия проверяются один раз по исходному графу.
    """
    return graph.induced(prune_survivors(graph, single_pass))


# Индуцированный цикл длины ≥ min_length
def find_induced_cycle(
    graph: SimpleGraph, min_length: int = 4, odd_only: bool = False
) -> list[int] | None:
    """
    Расширение индуцированных путей от наименьшей вершины цикла.
    Возвращает вершины цикла в порядке обхода или None.
    """
    adj = graph.adj
    n = graph.n

    def extend(path: list[int], path_mask: int, blocked: int, higher: int) -> list[int] | None:
        start, first, last = path[0], path[1], path[-1]
        candidates = adj[last] & higher & ~path_mask & ~blocked
        for w in iter_bits(candidates):
            length = len(path) + 1
            if adj[w] >> start & 1:
                if length >= min_length and (not odd_only or length % 2) and first < w:
                    return path + [w]
                continue
            found = extend(
                path + [w],
                path_mask | 1 << w,
                blocked | adj[last],
                higher,
            )
            if found:
                return found
        return None

    for s in range(n):
        higher = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)
        for v in iter_bits(adj[s] & higher):
            found = extend([s, v], 1 << s | 1 << v, 0, higher)
            if found:
                return found
    return None


def find_odd_hole_or_antihole(graph: SimpleGraph, guard: int | None = None) -> Witness | None:
    require_within_guard("perfect", graph.n, guard)
    hole = find_induced_cycle(graph, min_length=5, odd_only=True)
    if hole:
        return Witness(tuple(hole), "hole")
    antihole = find_induced_cycle(graph.complement(), min_length=5, odd_only=True)
    if antihole:
        return Witness(tuple(antihole), "antihole")
    return None


# Препятствие к совершенности в исходных индексах
def perfectness_obstruction(
    graph: SimpleGraph, cross_check: bool = PRUNE_CROSS_CHECK, guard: int | None = None
) -> Witness | None:
    """
    Редукция близнецов, отсечение и поиск нечётной дыры или антидыры.
    При cross_check поиск повторяется на графе без отсечения; при
    расхождении верным считается результат без отсечения.
    """
    trace = twin_reduce(graph)
    reduced = trace.graph
    kept = prune_survivors(reduced)
    pruned = reduced.induced(kept)

    witness = find_odd_hole_or_antihole(pruned, guard)
    if witness is not None:
        witness = Witness(tuple(trace.survivors[kept[v]] for v in witness.vertices), witness.kind)

    limit = guard if guard is not None else COST_GUARDS["perfect"]
    if cross_check and reduced.n <= limit:
        direct = find_odd_hole_or_antihole(reduced, limit)
        if (direct is None) != (witness is None):
            logger.warning(
                "Отсечение изменило ответ о совершенности: %s вершин, дыра до отсечения: %s",
                reduced.n,
                direct is not None,
            )
            witness = None
            if direct is not None:
                witness = Witness(tuple(trace.survivors[v] for v in direct.vertices), direct.kind)
    return witness


def is_perfect(graph: SimpleGraph, cross_check: bool = PRUNE_CROSS_CHECK) -> bool:
    return perfectness_obstruction(graph, cross_check) is None


# ─── Изоморфизм ───────────────────────────────────────────────────


def _neighbourhood_profile(graph: SimpleGraph) -> list[tuple[int, tuple[int, ...]]]:
    degs = graph.degrees()
    return sorted(
        (degs[v], tuple(sorted(degs[u] for u in iter_bits(graph.adj[v])))) for v in range(graph.n)
    )


def is_isomorphic(g1: SimpleGraph, g2: SimpleGraph) -> bool:
    """Отсев по степеням и мультимножествам степеней соседей, затем VF2 (networkx)."""
    require_within_guard("isomorphism", max(g1.n, g2.n))
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    if g1.degree_sequence() != g2.degree_sequence():
        return False
    if _neighbourhood_profile(g1) != _neighbourhood_profile(g2):
        return False
    return nx.is_isomorphic(g1.nxgraph, g2.nxgraph)


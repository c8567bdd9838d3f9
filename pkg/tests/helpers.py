"""Вспомогательные построения и переборные оракулы для тестов."""

from itertools import combinations

import networkx as nx

from graphcore import SimpleGraph, iter_bits
from groups import CyclicGroup, cyclic_subgroup_of_order
from ncg import NcGraph, build_gncg


def graph_of(g: nx.Graph) -> SimpleGraph:
    return SimpleGraph.from_networkx(g)


def cyclic_gncg(n: int, h: int) -> NcGraph:
    Z = CyclicGroup(n)
    return build_gncg(Z, cyclic_subgroup_of_order(n, h, Z))


def _clique_and_independent(graph: SimpleGraph) -> tuple[list[bool], list[bool]]:
    size = 1 << graph.n
    clique = [True] * size
    independent = [True] * size
    for s in range(1, size):
        low = (s & -s).bit_length() - 1
        rest = s & ~(1 << low)
        clique[s] = clique[rest] and graph.adj[low] & rest == rest
        independent[s] = independent[rest] and graph.adj[low] & rest == 0
    return clique, independent


# Совершенность по определению: ω = χ на каждом индуцированном подграфе
def perfect_by_colouring(graph: SimpleGraph) -> bool:
    size = 1 << graph.n
    _, independent = _clique_and_independent(graph)
    omega = [0] * size
    chi = [0] * size
    for s in range(1, size):
        low = (s & -s).bit_length() - 1
        rest = s & ~(1 << low)
        omega[s] = max(omega[rest], 1 + omega[rest & graph.adj[low]])
        best = graph.n + 1
        sub = rest
        while True:
            part = sub | 1 << low
            if independent[part]:
                best = min(best, 1 + chi[s & ~part])
            if sub == 0:
                break
            sub = (sub - 1) & rest
        chi[s] = best
        if omega[s] != chi[s]:
            return False
    return True


def split_by_partition(graph: SimpleGraph) -> bool:
    clique, independent = _clique_and_independent(graph)
    full = graph.full_mask
    return any(clique[k] and independent[full & ~k] for k in range(1 << graph.n))


def chordal_by_subsets(graph: SimpleGraph) -> bool:
    """Нет индуцированного цикла длины ≥ 4."""
    for k in range(4, graph.n + 1):
        for vertices in combinations(range(graph.n), k):
            sub = graph.induced(vertices)
            if all(d == 2 for d in sub.degrees()) and len(sub.components()) == 1:
                return False
    return True


def claw_free_by_triples(graph: SimpleGraph) -> bool:
    for v in range(graph.n):
        for a, b, c in combinations(iter_bits(graph.adj[v]), 3):
            if not (graph.has_edge(a, b) or graph.has_edge(a, c) or graph.has_edge(b, c)):
                return False
    return True


def atlas_graphs() -> list[SimpleGraph]:
    """Все графы на 1..7 вершинах с точностью до изоморфизма."""
    return [graph_of(g) for g in nx.graph_atlas_g() if g.number_of_nodes() > 0]


def with_planted_twins(base: nx.Graph, copies: int, rng) -> SimpleGraph:
    """Добавляет к графу открытых и замкнутых близнецов случайных вершин."""
    g = base.copy()
    for _ in range(copies):
        original = rng.choice(list(g.nodes))
        twin = max(g.nodes) + 1
        g.add_node(twin)
        g.add_edges_from((twin, u) for u in list(g.neighbors(original)) if u != twin)
        if rng.random() < 0.5:
            g.add_edge(twin, original)
    return graph_of(g)

"""
Экспорт графов в DOT и JSON и загрузка JSON обратно.
Вершины перечисляются в порядке индексов элементов, рёбра — (i, j) с i < j
в лексикографическом порядке.
"""

import json
import logging
from typing import Any, Sequence

from graphcore import SimpleGraph
from ncg import LoopedTaggedGraph, NcGraph
from utils.validators import InvalidInputError

logger = logging.getLogger(__name__)


# Описание графа для JSON и DOT
def graph_payload(
    graph: SimpleGraph,
    ids: Sequence[int],
    orders: Sequence[int],
    in_h: Sequence[bool],
    n: int,
    h: int,
    loops: Sequence[int] = (),
) -> dict[str, Any]:
    vertices = []
    for v in range(graph.n):
        vertex: dict[str, Any] = {"id": int(ids[v]), "order": int(orders[v]), "in_h": bool(in_h[v])}
        # имя элемента пишется, только если оно не совпадает с id
        if graph.labels[v] != str(ids[v]):
            vertex["name"] = graph.labels[v]
        vertices.append(vertex)
    edges = sorted([ids[u], ids[v]] for u, v in graph.edges())
    payload: dict[str, Any] = {"n": n, "h": h, "vertices": vertices, "edges": edges}
    if loops:
        payload["loops"] = sorted(ids[v] for v in loops)
    return payload


def gncg_payload(nc: NcGraph) -> dict[str, Any]:
    return graph_payload(
        nc.graph, nc.elements, nc.orders, nc.in_h, nc.group_order, nc.subgroup_order
    )


# Тегированный граф: теги идут в in_h, петли отдельным списком
def tagged_payload(t: LoopedTaggedGraph, h: int) -> dict[str, Any]:
    plain = [row & ~(1 << v) for v, row in enumerate(t.adj)]
    graph = SimpleGraph(t.labels, tuple(plain))
    orders = t.orders if t.orders is not None else [0] * t.n
    tags = [t.is_tagged(v) for v in range(t.n)]
    return graph_payload(graph, range(t.n), orders, tags, t.n, h, t.loops())


def to_json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


# Запись в формате dot
def to_dot(payload: dict[str, Any], name: str = "G") -> str:
    """Подписи вершин «id:order»; вершины из H рисуются двойным кругом."""
    lines = [f'graph "{name}" {{', "   node [shape=circle];"]
    for vertex in payload["vertices"]:
        shape = ", shape=doublecircle" if vertex["in_h"] else ""
        lines.append(f'   {vertex["id"]} [label="{vertex["id"]}:{vertex["order"]}"{shape}];')
    for v in payload.get("loops", []):
        lines.append(f"   {v} -- {v};")
    for u, v in payload["edges"]:
        lines.append(f"   {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# Загрузка графа из JSON
def load_graph_json(text: str) -> NcGraph:
    """
    Обратная операция к gncg_payload: вершины упорядочиваются по id,
    подпись вершины — поле name, а без него строковый id.
    """
    try:
        data = json.loads(text)
        vertices = sorted(data["vertices"], key=lambda v: v["id"])
        ids = [int(v["id"]) for v in vertices]
        orders = tuple(int(v["order"]) for v in vertices)
        in_h = tuple(bool(v["in_h"]) for v in vertices)
        names = [str(v.get("name", v["id"])) for v in vertices]
        n, h = int(data["n"]), int(data["h"])
        raw_edges = [(int(a), int(b)) for a, b in data["edges"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise InvalidInputError(f"Некорректный JSON графа: {exc}") from exc

    index = {vid: i for i, vid in enumerate(ids)}
    if len(index) != len(ids):
        raise InvalidInputError("Повторяющиеся id вершин")
    edges = []
    for a, b in raw_edges:
        if a >= b or a not in index or b not in index:
            raise InvalidInputError(f"Некорректное ребро [{a}, {b}]")
        edges.append((index[a], index[b]))

    graph = SimpleGraph.from_edges(len(ids), edges, names)
    return NcGraph(graph, tuple(ids), orders, in_h, n, h)


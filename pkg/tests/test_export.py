import json

import pytest

from groups import CyclicGroup, all_subgroups, catalog_group, cyclic_subgroup_of_order
from ncg import build_gncg, build_tagged_coprime
from utils.graph_export import gncg_payload, load_graph_json, tagged_payload, to_dot, to_json
from utils.table_io import format_table, load_table, parse_table, save_table
from utils.validators import InvalidInputError, TableValidationError
from tests.helpers import cyclic_gncg


# ─── Таблицы умножения ────────────────────────────────────────────


def test_table_text_round_trip():
    S3 = catalog_group("S3")
    parsed = parse_table(format_table(S3), "S3")
    assert parsed.table == S3.table
    assert parsed.names == S3.names
    assert parsed.orders == S3.orders


def test_table_without_names():
    group = parse_table("2\n\n0 1\n1 0\n")
    assert group.names == ("0", "1")
    assert group.orders == (1, 2)


@pytest.mark.parametrize(
    "text",
    ["", "2\n0 x\n1 0\n", "3\n0 1 2\n", "0\n", "2 2\n0 1\n1 0\n"],
)
def test_malformed_table_text(text):
    with pytest.raises(InvalidInputError):
        parse_table(text)


def test_table_axioms_checked_on_load():
    with pytest.raises(TableValidationError):
        parse_table("2\n0 1\n1 1\n")


def test_save_and_load(tmp_path):
    path = tmp_path / "q8.txt"
    save_table(catalog_group("Q8"), path)
    loaded = load_table(path)
    assert loaded.name == "q8"
    assert sorted(loaded.orders) == [1, 2, 4, 4, 4, 4, 4, 4]


def test_load_missing_file(tmp_path):
    with pytest.raises(InvalidInputError):
        load_table(tmp_path / "absent.txt")


# ─── Графы ────────────────────────────────────────────────────────


def test_gncg_payload():
    payload = gncg_payload(cyclic_gncg(4, 2))
    assert payload == {
        "n": 4,
        "h": 2,
        "vertices": [
            {"id": 1, "order": 4, "in_h": False},
            {"id": 2, "order": 2, "in_h": True},
            {"id": 3, "order": 4, "in_h": False},
        ],
        "edges": [[1, 2], [2, 3]],
    }


def test_dot_output():
    dot = to_dot(gncg_payload(cyclic_gncg(4, 2)), "Z4_2")
    assert dot.splitlines() == [
        'graph "Z4_2" {',
        "   node [shape=circle];",
        '   1 [label="1:4"];',
        '   2 [label="2:2", shape=doublecircle];',
        '   3 [label="3:4"];',
        "   1 -- 2;",
        "   2 -- 3;",
        "}",
    ]


def test_tagged_payload_keeps_identity_loop():
    Z = CyclicGroup(4)
    payload = tagged_payload(build_tagged_coprime(Z, cyclic_subgroup_of_order(4, 2, Z)), 2)
    assert payload["loops"] == [0]
    assert payload["edges"] == [[0, 1], [0, 2], [0, 3]]
    assert [v["in_h"] for v in payload["vertices"]] == [True, False, True, False]
    assert "   0 -- 0;" in to_dot(payload).splitlines()


@pytest.mark.parametrize("n, h", [(4, 2), (12, 6), (30, 10)])
def test_json_round_trip(n, h):
    nc = cyclic_gncg(n, h)
    loaded = load_graph_json(to_json(gncg_payload(nc)))
    assert loaded.graph == nc.graph
    assert loaded.orders == nc.orders
    assert loaded.in_h == nc.in_h
    assert (loaded.group_order, loaded.subgroup_order) == (n, h)


@pytest.mark.parametrize("name", ["S3", "Q8", "D4"])
def test_json_round_trip_keeps_element_names(name):
    G = catalog_group(name)
    for H in all_subgroups(G):
        if H.order < 2:
            continue
        nc = build_gncg(G, H)
        payload = gncg_payload(nc)
        assert any("name" in vertex for vertex in payload["vertices"])
        loaded = load_graph_json(to_json(payload))
        assert loaded.graph == nc.graph
        assert loaded.elements == nc.elements
        assert loaded.orders == nc.orders
        assert loaded.in_h == nc.in_h


def test_graph_json_rejects_duplicate_names():
    vertices = [
        {"id": 1, "order": 2, "in_h": True, "name": "a"},
        {"id": 2, "order": 2, "in_h": True, "name": "a"},
    ]
    text = json.dumps({"n": 3, "h": 3, "vertices": vertices, "edges": []})
    with pytest.raises(InvalidInputError):
        load_graph_json(text)


@pytest.mark.parametrize(
    "text",
    [
        "{",
        json.dumps({"n": 4}),
        json.dumps({"n": 4, "h": 2, "vertices": [{"id": 1, "order": 4, "in_h": False}], "edges": [[1, 1]]}),
        json.dumps({"n": 4, "h": 2, "vertices": [{"id": 1, "order": 4, "in_h": False}], "edges": [[1, 5]]}),
    ],
)
def test_bad_graph_json(text):
    with pytest.raises(InvalidInputError):
        load_graph_json(text)

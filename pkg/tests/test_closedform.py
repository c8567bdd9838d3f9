import pytest

from closedform import (
    PERFECT_FALSE,
    PERFECT_TRUE,
    UNCLASSIFIED,
    CyclicInstance,
    classify_formula,
    degree_formula,
    is_connected_formula,
    max_degree_formula,
    min_degree_formula,
)
from graphcore import is_connected
from numthy import proper_divisors_above_one
from utils.validators import InvalidInputError
from tests.helpers import cyclic_gncg


def _inst(n: int, h: int) -> CyclicInstance:
    return CyclicInstance(n, h)


@pytest.mark.parametrize("n, h, d, expected", [(6, 6, 2, 2), (4, 2, 4, 1), (12, 6, 12, 5)])
def test_degree_formula_examples(n, h, d, expected):
    assert degree_formula(_inst(n, h), d) == expected


@pytest.mark.parametrize("d", [1, 4])
def test_degree_formula_rejects_bad_order(d):
    with pytest.raises(InvalidInputError):
        degree_formula(_inst(6, 3), d)


@pytest.mark.parametrize("n, h, paper, corrected", [(6, 6, 4, 4), (6, 2, 3, 2), (4, 2, 2, 2)])
def test_max_degree_examples(n, h, paper, corrected):
    value = max_degree_formula(_inst(n, h))
    assert (value.paper_value, value.corrected_value) == (paper, corrected)


@pytest.mark.parametrize("n, h, expected", [(4, 4, 2), (8, 2, 1), (6, 6, 2), (6, 2, 0)])
def test_min_degree_examples(n, h, expected):
    assert min_degree_formula(_inst(n, h)) == expected


@pytest.mark.parametrize("n, h, expected", [(6, 6, True), (6, 2, False), (12, 6, True), (210, 30, False)])
def test_connectivity_examples(n, h, expected):
    assert is_connected_formula(_inst(n, h)) is expected


def test_classify_z4_with_z2():
    pred = classify_formula(_inst(4, 2))
    for name in ("star", "path", "triangle_free", "complete_bipartite", "split", "claw_free", "chordal", "connected"):
        assert pred.flags[name], name
    assert not pred.flags["cycle"]
    assert pred.perfect == PERFECT_TRUE


def test_classify_z6_whole():
    pred = classify_formula(_inst(6, 6))
    for name in ("split", "claw_free", "chordal", "connected"):
        assert pred.flags[name], name
    for name in ("star", "path", "cycle"):
        assert not pred.flags[name], name
    assert pred.perfect == PERFECT_TRUE
    assert pred.degree_table == {2: 2, 3: 3, 6: 4}


def test_classify_four_primes_proper_subgroup():
    pred = classify_formula(_inst(210, 30))
    assert pred.perfect == PERFECT_TRUE
    assert not pred.flags["chordal"]
    # элементы порядка 7 не смежны ни с чем
    assert not pred.flags["connected"]


def test_classify_five_primes():
    pred = classify_formula(_inst(2310, 2310))
    assert pred.perfect == PERFECT_FALSE
    assert pred.odd_hole_free == UNCLASSIFIED


def test_perfect_for_four_primes_with_square():
    assert classify_formula(_inst(420, 210)).perfect == PERFECT_FALSE
    assert classify_formula(_inst(420, 420)).perfect == UNCLASSIFIED
    assert classify_formula(_inst(2310, 30)).perfect == PERFECT_TRUE


def test_paper_flags_differ_where_expected():
    assert classify_formula(_inst(6, 2)).flags["triangle_free"]
    assert not classify_formula(_inst(6, 2)).paper_flags["triangle_free"]
    assert classify_formula(_inst(4, 4)).flags["eulerian"]
    assert not classify_formula(_inst(4, 4)).paper_flags["eulerian"]
    assert classify_formula(_inst(10, 10)).flags["split"]
    assert not classify_formula(_inst(10, 10)).paper_flags["split"]
    assert classify_formula(_inst(6, 6)).paper_flags["split"]


@pytest.mark.parametrize("n, h", [(2, 2), (6, 4), (6, 1), (0, 2)])
def test_invalid_instances(n, h):
    with pytest.raises(InvalidInputError):
        CyclicInstance(n, h)


def test_formulas_match_built_graphs():
    for n in range(3, 61):
        for h in proper_divisors_above_one(n):
            inst = _inst(n, h)
            nc = cyclic_gncg(n, h)
            degrees = nc.graph.degrees()
            for v, order in enumerate(nc.orders):
                assert degrees[v] == degree_formula(inst, order), (n, h, order)
            assert min(degrees) == min_degree_formula(inst)
            assert max(degrees) == max_degree_formula(inst).corrected_value
            assert is_connected(nc.graph) == is_connected_formula(inst)


def test_paper_max_degree_is_off_by_one_when_disconnected():
    for n in range(3, 61):
        for h in proper_divisors_above_one(n):
            inst = _inst(n, h)
            value = max_degree_formula(inst)
            gap = 0 if is_connected_formula(inst) else 1
            assert value.paper_value - value.corrected_value == gap

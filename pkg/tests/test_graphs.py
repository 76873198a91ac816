"""Weighted graphs and the brute-force matching oracle."""

import pytest

from matchgen.exprs import parse
from matchgen.graphs import (SizeCapExceeded, WeightedGraph,
                             enumerate_matchings, graph_from_json,
                             graph_to_json, matching_weight, oracle_mgf,
                             split_vertex, strip_forced)
from matchgen.rational import RationalFunction as RF


def four_cycle():
    g = WeightedGraph()
    g.add_edge("a", "b", parse("x"))
    g.add_edge("b", "c", parse("y"))
    g.add_edge("c", "d", parse("z"))
    g.add_edge("d", "a", parse("w"))
    return g


def test_four_cycle_value():
    assert oracle_mgf(four_cycle()) == parse("x*z+y*w")


def test_single_edge_and_empty():
    g = WeightedGraph()
    g.add_edge(1, 2, parse("t"))
    assert oracle_mgf(g) == parse("t")
    assert oracle_mgf(WeightedGraph()) == RF.const(1)


def test_odd_graph_has_no_matchings():
    g = WeightedGraph()
    g.add_edge(1, 2, RF.const(1))
    g.add_edge(2, 3, RF.const(1))
    assert oracle_mgf(g) == RF.const(0)
    assert enumerate_matchings(g) == []


def test_zero_weight_edge_is_absent():
    g = four_cycle()
    g.weights[frozenset(("a", "b"))] = RF.const(0)
    assert oracle_mgf(g) == parse("y*w")


def test_enumerate_matches_oracle():
    g = four_cycle()
    total = RF.const(0)
    for m in enumerate_matchings(g):
        total = total + matching_weight(g, m)
    assert total == oracle_mgf(g)


def test_size_cap():
    g = WeightedGraph(vertices=range(50))
    with pytest.raises(SizeCapExceeded):
        oracle_mgf(g)


def test_duplicate_edge_rejected():
    g = WeightedGraph()
    g.add_edge(1, 2, RF.const(1))
    with pytest.raises(ValueError):
        g.add_edge(2, 1, RF.const(2))


def test_json_round_trip():
    g = four_cycle()
    h = graph_from_json(graph_to_json(g))
    assert set(h.vertices) == set(g.vertices)
    assert h.weights == g.weights


def test_strip_forced_preserves_value():
    g = WeightedGraph()
    g.add_edge("p", "q", parse("u"))   # pendant: forced
    g.add_edge("q", "r", parse("v"))
    g.add_edge("r", "s", parse("w"))
    g.add_edge("s", "q", RF.const(0))
    before = oracle_mgf(g)
    stripped, factor = strip_forced(g)
    assert factor * oracle_mgf(stripped) == before

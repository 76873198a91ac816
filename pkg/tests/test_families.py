"""Named weight-pattern families and their closed forms."""

import pytest

from matchgen.aztec import AztecInstance, evaluate, to_graph
from matchgen.exprs import parse
from matchgen.families import (DungeonSpec, ColumnPairMatrix, checkered_closed_form,
                               checkered_count, checkered_period, dragon_unit_period,
                               dungeon_value, family_value,
                               hexsquare_closed_form, duplicate_step,
                               duplicate_value, weighted_dungeon_period_M,
                               quad_step, quad_value)
from matchgen.graphs import oracle_mgf
from matchgen.rational import FactoredRF
from matchgen.rational import RationalFunction as RF

P = "(x^6+3*x^4*y^2+3*x^2*y^4+y^6+2*x^3+2*x*y^2+1)"


def test_dungeon_d_symbolic_values():
    expected = ["1", "x^2+y^2", f"x^2*y^2*{P}", f"x^6*y^6*{P}^3"]
    for n, s in enumerate(expected):
        assert dungeon_value(DungeonSpec("D", n)) == parse(s)


def test_dungeon_d_counts():
    ones = {"x": RF.const(1), "y": RF.const(1)}
    counts = [1, 2, 13, 13 ** 3, 2 * 13 ** 5, 13 ** 8]
    for n, c in enumerate(counts):
        assert family_value("dungeon-D", n, ones) == RF.const(c)


def test_dungeon_e_counts():
    counts = [1, 2 * 13, 13 ** 3, 13 ** 5]
    for n, c in enumerate(counts):
        assert family_value("dungeon-E", n) == RF.const(c)


def test_dungeon_spec_validation():
    with pytest.raises(ValueError):
        DungeonSpec("F", 1)
    with pytest.raises(ValueError):
        DungeonSpec("D", -1)


def test_weighted_dungeon_small_orders():
    period = weighted_dungeon_period_M()
    v1, _ = evaluate(AztecInstance(1, period))
    assert v1 == parse("d*e")
    v2, _ = evaluate(AztecInstance(2, period))
    assert v2 == parse("a*b*(a*b*g*h+a*c*f*g+b*d*e*h+2*c*d*e*f)")


def quad(rows):
    return ColumnPairMatrix([[parse(x), parse(y)] for x, y in rows], "quad")


def dup(rows):
    return ColumnPairMatrix([[parse(x), parse(y)] for x, y in rows],
                          "duplicate")


def test_quad_value_matches_pipeline_and_oracle():
    t = quad([["u^2", "v^2"], ["v^2", "u^2"],
              ["w^2", "u^2"], ["u^2", "w^2"]])
    inst = t.instance()
    val = quad_value(t)
    assert val == evaluate(inst)[0]
    assert val == oracle_mgf(to_graph(inst))


def test_quad_step_lowers_order():
    t = quad([["u^2", "v^2"]] * 2 + [["v^2", "u^2"]] * 2
             + [["u^2", "u^2"]] * 2)
    r = quad_step(t)
    assert r.order == t.order - 1
    with pytest.raises(ValueError):
        quad_step(quad([["u^2", "v^2"], ["v^2", "u^2"]]))
    with pytest.raises(ValueError):
        quad_step(dup([["u", "v"]] * 4))


def test_quad_pattern_rejects_zero_entries():
    with pytest.raises(ValueError):
        quad([["u^2", "0"], ["v^2", "u^2"]])


def test_duplicate_value_matches_pipeline_and_oracle():
    t = dup([["u", "v"], ["v", "u"], ["w", "u"], ["u", "w"]])
    inst = t.instance()
    val = duplicate_value(t)
    assert val == evaluate(inst)[0]
    assert val == oracle_mgf(to_graph(inst))


def test_duplicate_step_drops_two_orders():
    t = dup([["u", "v"]] * 6)
    s = duplicate_step(t)
    assert s.order == t.order - 2
    with pytest.raises(ValueError):
        duplicate_step(dup([["u", "v"]] * 4))
    with pytest.raises(ValueError):
        duplicate_step(quad([["u", "v"]] * 6))


def test_hexsquare_closed_form():
    for m in range(8):
        got = FactoredRF.from_rf(family_value("hexsquare", m))
        assert got == FactoredRF.from_rf(hexsquare_closed_form(2 * m))


def test_hexsquare_exponent_is_not_n_times_n_plus_1():
    # at region order 4 the old exponent guess n(n+1) would give
    # (1+a^2)^6; the actual value differs
    actual = family_value("hexsquare", 2)
    assert actual != parse("1+a^2") ** 6
    assert actual == hexsquare_closed_form(4)


def test_dragon_values_and_counts():
    for n in range(4):
        assert family_value("dragon", n) == parse("1+a^2") ** (n * (n + 1))
    for n in range(1, 5):
        v, _ = evaluate(AztecInstance(2 * n, dragon_unit_period()))
        assert v == RF.const(2 ** (n * (n + 1)))


def test_checkered_seeds_and_recurrence():
    assert checkered_count(3) == RF.const(6)
    assert checkered_count(7) == RF.const(27)
    assert checkered_count(31) == RF.const(3 ** (4 * 12)) * checkered_count(1)
    for n in (1, 5, 12, 31, 44):
        q1 = checkered_closed_form(n).substitute({"q": RF.const(1)})
        assert q1 == checkered_count(n)


def test_checkered_pipeline_matches_closed_form():
    for n in range(7):
        v, _ = evaluate(AztecInstance(n, checkered_period()))
        assert v == checkered_closed_form(n)


def test_checkered_period_zero_pattern():
    p = checkered_period()
    zeros = sum(1 for row in p.entries for e in row if e.is_zero())
    assert zeros == 120


def test_family_dispatcher_errors():
    with pytest.raises(ValueError):
        family_value("nonesuch", 2)

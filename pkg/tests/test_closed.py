"""The corner-free chart against projections of fan computations."""

import pytest

from mcgverify.closed import chart, intersection_closed, is_essential, project, same_class
from mcgverify.curves import NormalCurve
from mcgverify.words import MCWord

from conftest import evaluator, registry


@pytest.mark.parametrize("g", [5, 6])
@pytest.mark.parametrize("word", ["r", "R", "t", "q", "T[a0]", "T'[b3]", "T[a4]rT'[b0]q", "qrrT[a7]R"])
def test_chart_evaluation_matches_projection(g, word):
    E, reg = evaluator(g), registry(g)
    w = MCWord.parse(word)
    for _, c in reg.filling_family():
        assert E.evaluate_chart(w, project(c)) == project(E.evaluate(w, c))


@pytest.mark.parametrize("g", [5, 7])
def test_projection_is_injective_on_the_family(g):
    reg = registry(g)
    ws = [project(c) for _, c in reg.filling_family()]
    assert len(set(ws)) == len(ws)
    assert all(is_essential(c) for _, c in reg.filling_family())


def test_peripheral_and_empty_projections():
    reg = registry(5)
    C = chart(5)
    assert C.is_peripheral((2,) * C.num_edges)
    assert same_class(reg.a(0), reg.a(0)) and not same_class(reg.a(0), reg.a(1))


def test_exact_intersections_on_chain():
    reg = registry(5)
    assert intersection_closed(reg.a(0), reg.a(1)) == 1
    assert intersection_closed(reg.a(0), reg.a(2)) == 0
    assert intersection_closed(reg.b(0), reg.a(4)) == 1

import pytest
from hypothesis import given

from tests.strategies import integer_cycles
from utils.cycle import (
    ZERO_VERTEX,
    CycleKind,
    classify_cycle,
    compare_methods,
    cycle_entry_formula,
    cycle_flowup,
    formula_flowup,
    ordered_cycle_flowup,
    split_contract,
)
from utils.exceptions import NotACycle, NotOrdered, VertexOutOfRange
from utils.flowup import build_flowup
from utils.graph import LabeledGraph
from utils.ring import INTEGERS

Z = INTEGERS


def ints(elements):
    return tuple(e.value for e in elements)


class TestClassification:
    def test_arbitrary_cycles(self, c4, c8):
        layout = classify_cycle(c4)
        assert layout.order == (1, 2, 4, 3)
        assert ints(layout.labels) == (8, 9, 6, 5)
        assert layout.classification is CycleKind.ARBITRARY
        assert classify_cycle(c8).order == (1, 5, 7, 2, 3, 4, 8, 6)

    def test_ordered_cycle(self, triangle):
        layout = classify_cycle(triangle)
        assert layout.order == (1, 2, 3)
        assert ints(layout.labels) == (2, 3, 5)
        assert layout.classification is CycleKind.ORDERED

    def test_layout_labels(self, c4):
        layout = classify_cycle(c4)
        assert layout.label(3, 4).value == 6
        assert layout.label(1, 3).value == 5
        assert layout.step(0, -1) == (3, Z.from_int(5))
        with pytest.raises(NotACycle):
            layout.label(1, 4)

    def test_not_a_cycle(self, fig1, poly7):
        for graph in (fig1, poly7):
            with pytest.raises(NotACycle):
                classify_cycle(graph)


class TestContraction:
    def test_c8_index_4(self, c8):
        contracted = split_contract(classify_cycle(c8), 4)
        assert contracted.cycle.order == (ZERO_VERTEX, 4, 8, 6)
        assert ints(contracted.cycle.labels) == (8, 9, 6, 5)
        assert contracted.zero_vertices == frozenset({1, 2, 3})
        assert contracted.forced_zeros == frozenset({5, 7})
        assert contracted.edge_provenance == ((3, 4), (4, 8), (8, 6), (6, 1))
        assert contracted.split

    def test_c8_index_6(self, c8):
        contracted = split_contract(classify_cycle(c8), 6)
        assert contracted.cycle.order == (ZERO_VERTEX, 8, 6)
        assert ints(contracted.cycle.labels) == (9, 6, 5)
        assert contracted.forced_zeros == frozenset({7})

    def test_contiguous_lower_arc_needs_no_split(self, c4):
        contracted = split_contract(classify_cycle(c4), 3)
        assert contracted.cycle.order == (ZERO_VERTEX, 4, 3)
        assert not contracted.split
        assert contracted.forced_zeros == frozenset()

    def test_index_range(self, c8):
        layout = classify_cycle(c8)
        for i in (1, 2, 9):
            with pytest.raises(VertexOutOfRange):
                split_contract(layout, i)


class TestFormula:
    def test_c8_entries(self, c8):
        layout = classify_cycle(c8)
        assert ints(cycle_entry_formula(split_contract(layout, 4)).spline) == (0, 0, 0, 8, 0, 5, 0, 17)
        assert ints(cycle_entry_formula(split_contract(layout, 6)).spline) == (0, 0, 0, 0, 0, 15, 0, 9)

    def test_matches_general_construction(self, c4, c8):
        for graph in (c4, c8):
            for i in graph.vertices():
                assert formula_flowup(graph, i) == build_flowup(graph, i)


class TestOrdered:
    def test_triangle(self, triangle):
        layout = classify_cycle(triangle)
        assert ints(ordered_cycle_flowup(layout, 2).spline) == (0, 2, 5)
        assert ints(ordered_cycle_flowup(layout, 3).spline) == (0, 0, 15)
        assert ints(ordered_cycle_flowup(layout, 1).spline) == (1, 1, 1)

    def test_hexagon(self):
        graph = LabeledGraph.build(Z, 6, [(1, 2, 4), (2, 3, 6), (3, 4, 10), (4, 5, 9), (5, 6, 8), (6, 1, 12)])
        layout = classify_cycle(graph)
        for k in graph.vertices():
            assert ordered_cycle_flowup(layout, k) == build_flowup(graph, k)

    def test_rejects_arbitrary_order(self, c4):
        with pytest.raises(NotOrdered):
            ordered_cycle_flowup(classify_cycle(c4), 2)
        with pytest.raises(NotOrdered):
            cycle_flowup(c4, 2, 'ordered')


class TestMethods:
    def test_unknown_method(self, c4):
        with pytest.raises(ValueError):
            cycle_flowup(c4, 2, 'fastest')

    def test_general_method_requires_a_cycle(self, poly7):
        with pytest.raises(NotACycle):
            cycle_flowup(poly7, 2, 'general')

    def test_compare_on_arbitrary_cycle(self, c8):
        comparison = compare_methods(c8, 4)
        assert set(comparison.results) == {'general', 'formula'}
        assert comparison.agree
        assert comparison.entries_agree

    def test_compare_on_ordered_cycle(self, triangle):
        comparison = compare_methods(triangle, 2)
        assert set(comparison.results) == {'general', 'formula', 'ordered'}
        assert comparison.agree and comparison.entries_agree


@given(integer_cycles(max_vertices=8))
def test_methods_agree_on_random_cycles(graph):
    for i in graph.vertices():
        comparison = compare_methods(graph, i)
        assert comparison.splines_ok
        assert comparison.leading_agree
        assert comparison.entries_agree


@given(integer_cycles(max_vertices=8, ordered=True))
def test_ordered_recurrence_on_random_ordered_cycles(graph):
    layout = classify_cycle(graph)
    assert layout.classification is CycleKind.ORDERED
    for k in graph.vertices():
        assert ordered_cycle_flowup(layout, k) == build_flowup(graph, k)

import json

import pytest
from hypothesis import given, strategies as st

from tests.conftest import fixture_text
from tests.strategies import integer_graphs
from utils.exceptions import (
    Disconnected,
    DuplicateEdge,
    LengthMismatch,
    ParseError,
    RingMismatch,
    SchemaError,
    SelfLoop,
    UnsupportedRing,
    VertexOutOfRange,
)
from utils.graph import (
    LabeledGraph,
    Spline,
    dump_spline,
    graph_family,
    is_spline,
    load_graph,
    load_spline,
    load_splines,
    save_graph,
    trivial_spline,
)
from utils.oracle import enumerate_splines_mod
from utils.ring import INTEGERS, RATIONAL_POLYNOMIALS, parse_elem, prime_field_polynomials

Z = INTEGERS
QX = RATIONAL_POLYNOMIALS


class TestLoading:
    def test_c4(self, c4):
        assert c4.ring == Z
        assert c4.n == 4
        assert [(e.u, e.v, e.label.value) for e in c4.edges] == [
            (1, 2, 8), (1, 3, 5), (2, 4, 9), (3, 4, 6),
        ]
        assert c4.label(4, 2) == Z.from_int(9)
        assert c4.adjacency[1] == (2, 3)
        assert c4.degree(4) == 2

    def test_edge_order_and_orientation_do_not_matter(self, c4):
        reordered = LabeledGraph.build(Z, 4, [(3, 1, 5), (4, 3, '6'), (4, 2, 9), (2, 1, '8')])
        assert reordered == c4

    def test_save_round_trip(self, c8, poly7, graph_fixture):
        for graph in (c8, poly7, graph_fixture('gf5_path.json')):
            assert load_graph(save_graph(graph)) == graph
            assert load_graph(json.dumps(save_graph(graph))) == graph

    def test_prime_field_labels_are_reduced(self, graph_fixture):
        graph = graph_fixture('gf5_path.json')
        assert graph.ring == prime_field_polynomials(5)
        assert save_graph(graph)['edges'][1]['label'] == 'x+3'

    def test_single_vertex(self):
        graph = load_graph({'ring': 'Z', 'vertices': 1, 'edges': []})
        assert graph.n == 1
        assert graph_family(graph) == 'tree'

    def test_disconnected(self, graph_fixture):
        with pytest.raises(Disconnected) as info:
            graph_fixture('disconnected.json')
        assert info.value.components == 2

    @pytest.mark.parametrize('edges,error', [
        ([(1, 1, 2)], SelfLoop),
        ([(1, 2, 2), (2, 1, 3)], DuplicateEdge),
        ([(1, 3, 2)], VertexOutOfRange),
        ([(0, 1, 2)], VertexOutOfRange),
    ])
    def test_malformed_edges(self, edges, error):
        with pytest.raises(error):
            LabeledGraph.build(Z, 2, edges)

    def test_bad_label(self):
        with pytest.raises(ParseError):
            LabeledGraph.build(QX, 2, [(1, 2, '2x')])

    @pytest.mark.parametrize('document', [
        '{"ring": "Z", "vertices": 2',
        '[]',
        {'ring': 'Z', 'edges': []},
        {'ring': 'Z', 'vertices': 0, 'edges': []},
        {'ring': 'Z', 'vertices': 2, 'edges': [{'u': 1, 'label': '3'}]},
    ])
    def test_schema_errors(self, document):
        with pytest.raises(SchemaError):
            load_graph(document)

    def test_unsupported_ring(self):
        with pytest.raises(UnsupportedRing):
            load_graph({'ring': 'Z[x,y]', 'vertices': 1, 'edges': []})


class TestSplineCondition:
    def test_fig1_spline(self, fig1):
        spline = load_spline(fixture_text('fig1_spline.json'), fig1.ring)
        check = is_spline(fig1, spline)
        assert check
        assert check.violations == ()

    def test_fig1_mutated(self, fig1):
        spline = load_spline(fixture_text('fig1_mutated.json'), fig1.ring)
        check = is_spline(fig1, spline)
        assert not check
        assert check.violations == ((1, 2), (2, 3))

    def test_zero_label_forces_equality(self):
        graph = LabeledGraph.build(Z, 2, [(1, 2, 0)])
        assert is_spline(graph, Spline.of(Z, [3, 3]))
        assert is_spline(graph, Spline.of(Z, [3, 4])).violations == ((1, 2),)

    def test_unit_label_is_no_constraint(self):
        graph = LabeledGraph.build(Z, 2, [(1, 2, -1)])
        assert is_spline(graph, Spline.of(Z, [17, -4]))

    def test_length_mismatch(self, c4):
        with pytest.raises(LengthMismatch):
            is_spline(c4, Spline.of(Z, [1, 1, 1]))

    def test_ring_mismatch(self, fig1):
        with pytest.raises(RingMismatch):
            is_spline(fig1, Spline.of(Z, [1, 1, 1]))

    def test_trivial_spline(self, c8, poly7):
        assert is_spline(c8, trivial_spline(c8, 7))
        assert is_spline(poly7, trivial_spline(poly7, parse_elem(QX, 'x^5-3')))


class TestSplineArithmetic:
    def test_module_operations(self, c4):
        f = Spline.of(Z, [0, 8, 5, 17])
        g = trivial_spline(c4, 1)
        assert is_spline(c4, f + g)
        assert is_spline(c4, f.scale(-3) - g)
        assert (f - f).is_zero
        assert str(f + g) == '(1, 9, 6, 18)'

    def test_one_based_indexing(self):
        f = Spline.of(Z, [4, 5, 6])
        assert f[1] == Z.from_int(4)
        assert f[3] == Z.from_int(6)
        with pytest.raises(IndexError):
            f[0]

    def test_dump_and_load(self):
        spline = Spline.of(QX, ['1', 'x+1', '(x+1)^2'])
        assert dump_spline(spline) == {'values': ['1', 'x+1', 'x^2+2*x+1']}
        assert load_spline(dump_spline(spline), QX) == spline

    def test_load_splines_accepts_basis_output(self):
        document = {'classes': [{'index': 1, 'values': ['1', '1']}, {'index': 2, 'values': ['0', '3']}]}
        splines = load_splines(document, Z)
        assert [str(s) for s in splines] == ['(1, 1)', '(0, 3)']
        with pytest.raises(SchemaError):
            load_splines({'members': []}, Z)


class TestGraphFamily:
    def test_families(self, c4, c8, fig1, poly7, triangle):
        assert graph_family(c4) == 'cycle'
        assert graph_family(c8) == 'cycle'
        assert graph_family(triangle) == 'cycle'
        assert graph_family(fig1) == 'tree'
        assert graph_family(poly7) == 'other'

    def test_diamond(self):
        diamond = LabeledGraph.build(Z, 4, [(1, 2, 2), (1, 3, 3), (2, 3, 5), (2, 4, 7), (3, 4, 11)])
        assert graph_family(diamond) == 'diamond'


@given(integer_graphs(max_vertices=4, max_label=4), st.data())
def test_splines_form_a_module(graph, data):
    splines = enumerate_splines_mod(graph)
    f = data.draw(st.sampled_from(splines))
    g = data.draw(st.sampled_from(splines))
    r = data.draw(st.integers(min_value=-50, max_value=50))
    assert is_spline(graph, f + g)
    assert is_spline(graph, f.scale(r))
    assert is_spline(graph, f - g.scale(r))

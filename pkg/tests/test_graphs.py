import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epicox.errors import PreconditionError
from epicox.graphs import (FiniteGraph, PointedReflexiveGraph, VertexMap,
                           all_labeled_graphs, are_isomorphic, f_reduce,
                           find_epimorphism, find_injective_hom,
                           is_homomorphism, make_pointed)

from oracles import naive_hom_exists

TRIANGLE = FiniteGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
PATH3 = FiniteGraph.from_edges(3, [(0, 1), (1, 2)])
EDGE = FiniteGraph.from_edges(2, [(0, 1)])


def graphs_strategy(max_n=4):
    def build(n, bits):
        pairs = list(itertools.combinations(range(n), 2))
        edges = [p for p, b in zip(pairs, bits) if b]
        return FiniteGraph.from_edges(n, edges)
    return st.integers(1, max_n).flatmap(
        lambda n: st.builds(build, st.just(n),
                            st.lists(st.booleans(), min_size=n * (n - 1) // 2,
                                     max_size=n * (n - 1) // 2)))


def test_from_edges_symmetric():
    g = FiniteGraph.from_edges(3, [(0, 2)])
    assert g.adjacent(0, 2) and g.adjacent(2, 0)
    assert not g.adjacent(0, 1)


def test_asymmetric_adjacency_rejected():
    adj = ((False, True, False),
           (False, False, False),
           (False, False, False))
    with pytest.raises(PreconditionError):
        FiniteGraph(3, adj, False)


def test_irreflexive_loop_rejected():
    with pytest.raises(PreconditionError):
        FiniteGraph.from_edges(2, [(0, 0)])


def test_edges_lists_each_pair_once():
    assert TRIANGLE.edges() == [(0, 1), (0, 2), (1, 2)]


def test_reflexive_closure_and_without_loops_invert():
    r = PATH3.reflexive_closure()
    assert r.reflexive and all(r.adjacent(v, v) for v in r.vertices())
    assert r.without_loops() == PATH3


def test_isolated():
    g = FiniteGraph.from_edges(3, [(0, 1)])
    assert g.is_isolated(2)
    assert not g.is_isolated(0)


def test_make_pointed_base_dominates():
    p = make_pointed(TRIANGLE.reflexive_closure())
    assert p.base == 3
    assert p.graph.n == 4
    assert all(p.graph.adjacent(p.base, v) for v in range(4))


def test_pointed_requires_reflexive():
    with pytest.raises(PreconditionError):
        PointedReflexiveGraph(TRIANGLE, 0)


class TestFReduce:
    def test_complements_the_graph(self):
        p = f_reduce(PATH3)
        # 0-2 was the only non-edge, so it is the only non-base edge now
        assert p.graph.adjacent(0, 2)
        assert not p.graph.adjacent(0, 1)
        assert not p.graph.adjacent(1, 2)

    def test_adds_loops_and_base(self):
        p = f_reduce(PATH3)
        assert p.graph.reflexive
        assert p.base == 3
        assert all(p.graph.adjacent(3, v) for v in range(4))

    def test_rejects_isolated_vertex(self):
        with pytest.raises(PreconditionError):
            f_reduce(FiniteGraph.from_edges(2, []))

    def test_rejects_reflexive_input(self):
        with pytest.raises(PreconditionError):
            f_reduce(PATH3.reflexive_closure())


def test_vertex_map_call():
    f = VertexMap(2, 3, (2, 0))
    assert f(0) == 2 and f(1) == 0


def test_is_homomorphism_respects_edges():
    f = VertexMap(2, 3, (0, 1))
    assert is_homomorphism(f, EDGE, TRIANGLE)
    g = VertexMap(2, 3, (0, 0))
    assert not is_homomorphism(g, EDGE, TRIANGLE)


@pytest.mark.parametrize("source,target,expected", [
    (EDGE, TRIANGLE, True),
    (TRIANGLE, EDGE, False),
    (PATH3, TRIANGLE, True),
    (TRIANGLE, PATH3, False),
])
def test_injective_hom_spot_checks(source, target, expected):
    assert (find_injective_hom(source, target) is not None) is expected


def test_injective_hom_matches_oracle_exhaustively():
    graphs = all_labeled_graphs(3)
    for g, h in itertools.product(graphs, repeat=2):
        got = find_injective_hom(g, h)
        assert (got is not None) == naive_hom_exists(g, h, injective=True)
        if got is not None:
            assert is_homomorphism(got, g, h)
            assert len(set(got.image)) == g.n


def test_epimorphism_matches_oracle_on_pointed_pairs():
    graphs = [make_pointed(g.reflexive_closure())
              for g in all_labeled_graphs(2, min_n=1)]
    for p, q in itertools.product(graphs, repeat=2):
        got = find_epimorphism(p, q)
        naive = False
        for image in itertools.product(range(q.n), repeat=p.n):
            if image[p.base] != q.base or set(image) != set(range(q.n)):
                continue
            f = VertexMap(p.n, q.n, image)
            if is_homomorphism(f, p.graph, q.graph):
                naive = True
                break
        assert (got is not None) == naive
        if got is not None:
            assert got.image[p.base] == q.base
            assert is_homomorphism(got, p.graph, q.graph)
            assert set(got.image) == set(range(q.n))


def test_find_epimorphism_unrestricted_mode():
    p = make_pointed(EDGE.reflexive_closure())
    got = find_epimorphism(p, p, base_preserving=False)
    assert got is not None


def test_are_isomorphic_relabeling():
    g = FiniteGraph.from_edges(3, [(0, 1)])
    h = FiniteGraph.from_edges(3, [(1, 2)])
    iso = are_isomorphic(g, h)
    assert iso is not None
    assert are_isomorphic(TRIANGLE, PATH3) is None


def test_are_isomorphic_flag_mismatch():
    assert are_isomorphic(PATH3, PATH3.reflexive_closure()) is None


def test_all_labeled_graphs_counts():
    # 2^C(n,2) per n: 1 + 1 + 2 + 8 = 12, then + 64
    assert len(all_labeled_graphs(3)) == 12
    assert len(all_labeled_graphs(4)) == 76
    assert len(all_labeled_graphs(3, min_n=1)) == 11


@given(graphs_strategy())
@settings(max_examples=60, deadline=None)
def test_f_reduce_properties(g):
    if any(g.is_isolated(v) for v in g.vertices()):
        with pytest.raises(PreconditionError):
            f_reduce(g)
        return
    p = f_reduce(g)
    assert p.graph.n == g.n + 1
    for u, v in itertools.combinations(range(g.n), 2):
        assert p.graph.adjacent(u, v) == (not g.adjacent(u, v))


@given(graphs_strategy(3), graphs_strategy(3))
@settings(max_examples=40, deadline=None)
def test_injective_search_agrees_with_oracle(g, h):
    assert (find_injective_hom(g, h) is not None) == \
        naive_hom_exists(g, h, injective=True)

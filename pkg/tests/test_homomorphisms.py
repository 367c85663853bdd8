import pytest

from epicox.construction import build_C, build_L4
from epicox.coxeter import enumerate_parabolic, evaluate, identity
from epicox.errors import FalsificationError, PreconditionError
from epicox.graphs import (FiniteGraph, VertexMap, find_epimorphism,
                           make_pointed)
from epicox.homomorphisms import (GeneratorMap, _classify_block_image,
                                  conjugate_onto, induced_k_map,
                                  is_onto_generators, lift_graph_epi,
                                  map_word, presentation_of, retraction_rho,
                                  verify_relators)

L4 = build_L4()
EDGE = FiniteGraph.from_edges(2, [(0, 1)])
TWO_POINTS = FiniteGraph.from_edges(2, [])
PATH3 = FiniteGraph.from_edges(3, [(0, 1), (1, 2)])


# --- presentations -----------------------------------------------------------


def test_l4_presentation_counts():
    p = presentation_of(L4)
    assert len(p.names) == 4
    assert len(p.relators) == 10  # 4 squares + 6 finite pairs


def test_block_system_presentation_counts():
    p = presentation_of(build_C(EDGE).matrix)
    # 8 squares, 6 finite pairs inside each block, 5 across
    assert len(p.relators) == 8 + 12 + 5


def test_presentation_relators_evaluate_to_identity():
    C = build_C(TWO_POINTS).matrix
    for rel in presentation_of(C).relators:
        assert evaluate(C, rel) == identity(C)


# --- generator maps ----------------------------------------------------------


def identity_map(C):
    return GeneratorMap(C, C, tuple(range(C.n)))


def test_identity_map_verifies():
    C = build_C(EDGE).matrix
    phi = identity_map(C)
    assert verify_relators(phi)
    assert is_onto_generators(phi)


def test_map_word_drops_collapsed_letters():
    C = L4
    phi = GeneratorMap(C, C, (0, None, 2, 3))
    assert map_word(phi, (0, 1, 2)) == (0, 2)


def test_braid_violation_detected():
    C = build_C(EDGE).matrix
    # position 2 of block 0 rerouted to position 1: braid with position 3 breaks
    images = list(range(8))
    images[1] = 0
    phi = GeneratorMap(C, C, tuple(images))
    assert not verify_relators(phi)


def test_image_size_mismatch_rejected():
    with pytest.raises(PreconditionError):
        GeneratorMap(L4, L4, (0, 1))


def test_image_index_out_of_range_rejected():
    with pytest.raises(PreconditionError):
        GeneratorMap(L4, L4, (0, 1, 2, 9))


# --- lifting graph maps ------------------------------------------------------


def lifted(source_graph, target_graph, image):
    src, tgt = build_C(source_graph), build_C(target_graph)
    f = VertexMap(source_graph.n + 1, target_graph.n + 1, image)
    return lift_graph_epi(f, src, tgt), src, tgt


def test_lift_identity_epi():
    phi, src, tgt = lifted(EDGE, EDGE, (0, 1, 2))
    assert phi.images == tuple(range(8))
    assert verify_relators(phi)
    assert is_onto_generators(phi)


def test_lift_collapse_to_base():
    # vertex 1 of the path collapses; its block maps to the identity
    phi, src, tgt = lifted(PATH3, EDGE, (0, 2, 1, 2))
    assert phi.images[4:8] == (None, None, None, None)
    assert verify_relators(phi)


def test_lift_demands_base_preservation():
    src, tgt = build_C(EDGE), build_C(EDGE)
    f = VertexMap(3, 3, (0, 2, 1))  # base goes to a class vertex
    with pytest.raises(PreconditionError):
        lift_graph_epi(f, src, tgt)


def test_lift_demands_graph_homomorphism():
    src, tgt = build_C(TWO_POINTS), build_C(EDGE)
    # 0 and 1 are non-adjacent upstairs but their images are adjacent;
    # pointed graphs are reflexive so this is still a homomorphism, and the
    # reverse direction (edge onto non-edge) must fail instead
    f = VertexMap(3, 3, (0, 1, 2))
    phi = lift_graph_epi(f, src, tgt)
    assert verify_relators(phi)
    g = VertexMap(3, 3, (0, 1, 2))
    with pytest.raises(PreconditionError):
        lift_graph_epi(g, build_C(EDGE), build_C(TWO_POINTS))


def test_retraction_keeps_two_blocks():
    sys_ = build_C(PATH3)
    rho = retraction_rho(sys_, 0, 2)
    assert verify_relators(rho)
    kept = set(sys_.block(0)) | set(sys_.block(2))
    for g in range(12):
        if g in kept:
            assert rho.images[g] == g
        else:
            assert rho.images[g] is None


def test_retraction_needs_distinct_vertices():
    with pytest.raises(PreconditionError):
        retraction_rho(build_C(PATH3), 1, 1)


# --- induced class maps ------------------------------------------------------


def test_induced_map_identity():
    sys_ = build_C(EDGE)
    phi = identity_map(sys_.matrix)
    images = induced_k_map(sys_, sys_, phi, 2, 10000)
    assert [(im.kind, im.target_vertex) for im in images] == \
        [("class", 0), ("class", 1)]


def test_induced_map_collapse():
    src, tgt = build_C(TWO_POINTS), build_C(EDGE)
    f = VertexMap(3, 3, (0, 2, 2))
    phi = lift_graph_epi(f, src, tgt)
    images = induced_k_map(src, tgt, phi, 2, 10000)
    assert images[0].kind == "class" and images[0].target_vertex == 0
    assert images[1].kind == "base"


def test_induced_map_needs_matching_endpoints():
    sys_ = build_C(EDGE)
    with pytest.raises(PreconditionError):
        induced_k_map(sys_, build_C(TWO_POINTS),
                      identity_map(sys_.matrix), 2, 10000)


def test_induced_map_rejects_relator_violation():
    sys_ = build_C(EDGE)
    images = list(range(8))
    images[1] = 0
    with pytest.raises(PreconditionError):
        induced_k_map(sys_, sys_, GeneratorMap(sys_.matrix, sys_.matrix,
                                               tuple(images)), 2, 10000)


def test_order_dichotomy_enforced():
    sys_ = build_C(EDGE)
    # two braided generators make an order-6 image: neither trivial nor full
    with pytest.raises(FalsificationError):
        _classify_block_image(sys_, (0, 1, None, None), 2, 10000)


def test_conjugate_onto_finds_inner_conjugator():
    C = build_C(EDGE).matrix
    block = frozenset(w.mat for w in enumerate_parabolic(C, range(4), 10000))
    elements = enumerate_parabolic(C, range(4), 10000)
    g = conjugate_onto(C, elements, block, 1)
    assert g is not None  # identity works


def test_conjugate_onto_distinguishes_blocks():
    C = build_C(TWO_POINTS).matrix
    first = enumerate_parabolic(C, range(4), 10000)
    second = frozenset(w.mat for w in enumerate_parabolic(C, range(4, 8), 10000))
    assert conjugate_onto(C, first, second, 2, cap=2000) is None


# --- end to end --------------------------------------------------------------


def test_lift_round_trip():
    """A pointed-graph epi lifts to a generator map whose induced class map
    is the epi again."""
    g, h = PATH3, EDGE
    src, tgt = build_C(g), build_C(h)
    p = make_pointed(g.reflexive_closure())
    q = make_pointed(h.reflexive_closure())
    epi = find_epimorphism(p, q)
    assert epi is not None
    phi = lift_graph_epi(epi, src, tgt)
    assert verify_relators(phi)
    images = induced_k_map(src, tgt, phi, 2, 10000)
    for v in range(g.n):
        if epi.image[v] == q.base:
            assert images[v].kind == "base"
        else:
            assert images[v].kind == "class"
            assert images[v].target_vertex == epi.image[v]
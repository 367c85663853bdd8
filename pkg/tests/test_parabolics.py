"""Moves between standard subgroups, and the class census over a block
system."""

import pytest

from epicox.construction import LabeledCoxeterSystem, build_C, build_L4
from epicox.coxeter import CoxeterMatrix, is_spherical, mul, simple_reflection
from epicox.errors import (EnumerationCapExceeded, FalsificationError,
                           PreconditionError)
from epicox.graphs import FiniteGraph
from epicox.parabolics import (ConjugacyClass, are_special_conjugate,
                               classify_s5_classes, conjugacy_component,
                               ks_component_candidate, ks_step)

L4 = build_L4()
EDGE = FiniteGraph.from_edges(2, [(0, 1)])
TWO_POINTS = FiniteGraph.from_edges(2, [])


def test_component_candidate_braided_neighbor():
    # s_2 braids with s_1, so they land in one opposed component
    assert ks_component_candidate(L4, frozenset({0}), 1) == frozenset({0, 1})


def test_component_candidate_commuting_neighbor():
    # s_3 commutes with s_1 and stays alone
    assert ks_component_candidate(L4, frozenset({0}), 2) == frozenset({2})


def test_step_conjugates_the_chain():
    edge = ks_step(L4, frozenset({0}), 1)
    assert edge is not None
    assert edge.target == frozenset({1})
    # conjugator times source generator equals target generator times conjugator
    nu = edge.conjugator
    lhs = mul(simple_reflection(L4, 0), nu)
    rhs = mul(nu, simple_reflection(L4, 1))
    assert lhs == rhs


def test_step_with_commuting_generator_is_a_loop():
    edge = ks_step(L4, frozenset({0}), 2)
    assert edge is not None
    assert edge.target == frozenset({0})


def test_step_requires_outside_generator():
    with pytest.raises(PreconditionError):
        ks_step(L4, frozenset({0, 1}), 1)


def test_step_blocked_by_nonspherical_component():
    sys_ = build_C(TWO_POINTS)
    C = sys_.matrix
    # from one whole block, any outside generator drags in an unbounded label
    for s in sorted(sys_.block(1)):
        assert ks_step(C, sys_.block(0), s) is None


def test_component_reaches_all_singletons():
    comp = conjugacy_component(L4, frozenset({0}), 10000)
    assert comp.members == {frozenset({i}) for i in range(4)}


def test_component_requires_spherical():
    sys_ = build_C(TWO_POINTS)
    bad = frozenset({0, 4})  # cross pair with an unbounded label
    assert not is_spherical(sys_.matrix, bad)
    with pytest.raises(PreconditionError):
        conjugacy_component(sys_.matrix, bad, 1000)


def test_special_conjugacy_of_singletons():
    assert are_special_conjugate(L4, {0}, {3}, 10000)
    assert not are_special_conjugate(L4, {0}, {0, 2}, 10000)


def test_pairs_split_by_label():
    # braided pair vs commuting pair generate groups of different orders,
    # so they cannot be special conjugate
    assert not are_special_conjugate(L4, {0, 1}, {0, 2}, 10000)


def test_class_representative_is_canonical():
    cls = ConjugacyClass.from_members({frozenset({2}), frozenset({0})})
    assert cls.representative == frozenset({0})


@pytest.mark.parametrize("graph", [EDGE, TWO_POINTS])
def test_classify_finds_one_class_per_vertex(graph):
    sys_ = build_C(graph)
    classes = classify_s5_classes(sys_, 10000)
    assert len(classes) == 2
    for v, cls in enumerate(classes):
        assert cls.members == {sys_.block(v)}


def test_classify_spots_a_broken_census():
    # a rank-8 system where everything commutes has no order-120 subgroup,
    # so the census over the two supposed blocks must fail
    flat = CoxeterMatrix.from_labels(
        8, [(i, j, 2) for i in range(8) for j in range(i + 1, 8)])
    fake = LabeledCoxeterSystem(flat, TWO_POINTS)
    with pytest.raises(FalsificationError):
        classify_s5_classes(fake, 10000)


def test_classify_respects_cap():
    with pytest.raises(EnumerationCapExceeded):
        classify_s5_classes(build_C(EDGE), 60)

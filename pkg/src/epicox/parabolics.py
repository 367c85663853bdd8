"""Conjugacy of standard subgroups via labelled steps between generator
subsets.

A step out of a subset I along an outside generator s looks at the component
K of s inside I + s in the opposed diagram.  When K is spherical, the product
of the two longest elements (of K minus s, then of K) conjugates the subgroup
on I onto the subgroup on another subset J of the same size; when K is not
spherical there is no step.  Two spherical subsets carry conjugate subgroups
exactly when they are linked by such steps, so breadth-first closure over all
labels computes the whole conjugacy class of a subset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .construction import LabeledCoxeterSystem, op_graph
from .coxeter import (DEFAULT_ENUM_CAP, CoxeterMatrix, GroupElement,
                      enumerate_parabolic, invert, is_spherical,
                      longest_element, mul, simple_reflection)
from .errors import (EnumerationCapExceeded, FalsificationError,
                     InternalInconsistencyError, PreconditionError)


@dataclass(frozen=True)
class KSEdge:
    source: frozenset[int]
    label: int
    conjugator: GroupElement
    target: frozenset[int]


@dataclass(frozen=True)
class ConjugacyClass:
    members: frozenset[frozenset[int]]
    representative: frozenset[int]

    @staticmethod
    def from_members(members) -> ConjugacyClass:
        members = frozenset(frozenset(x) for x in members)
        if not members:
            raise PreconditionError("a class needs at least one member")
        rep = min(members, key=lambda s: tuple(sorted(s)))
        return ConjugacyClass(members, rep)


def ks_component_candidate(C: CoxeterMatrix, subset, s: int) -> frozenset[int]:
    """Component of s in the opposed diagram induced on subset + s."""
    nodes = frozenset(subset) | {s}
    op = op_graph(C)
    comp = {s}
    frontier = [s]
    while frontier:
        x = frontier.pop()
        for y in nodes:
            if y not in comp and op.adjacent(x, y):
                comp.add(y)
                frontier.append(y)
    return frozenset(comp)


def ks_step(C: CoxeterMatrix, subset, s: int) -> KSEdge | None:
    """One conjugation step out of the subset along s, or None when the
    relevant component is not spherical.

    The conjugator is checked generator by generator: it must fix every
    generator outside the component and send each one inside to some simple
    reflection.  Anything else is an internal error, not a soft failure.
    """
    I = frozenset(subset)
    if s in I:
        raise PreconditionError(f"generator {s} already belongs to the subset")
    if not (0 <= s < C.n):
        raise PreconditionError(f"generator index {s} out of range")
    K = ks_component_candidate(C, I, s)
    if not is_spherical(C, K):
        return None
    nu = mul(longest_element(C, K - {s}), longest_element(C, K))
    nu_inv = invert(C, nu)
    target = set(I - K)
    for i in sorted(I - K):
        si = simple_reflection(C, i)
        if mul(mul(nu_inv, si), nu) != si:
            raise InternalInconsistencyError(
                f"conjugator moved generator {i} outside the component")
    for i in sorted(I & K):
        conj = mul(mul(nu_inv, simple_reflection(C, i)), nu)
        for j in range(C.n):
            if conj == simple_reflection(C, j):
                target.add(j)
                break
        else:
            raise InternalInconsistencyError(
                f"conjugate of generator {i} is not a simple reflection")
    J = frozenset(target)
    if len(J) != len(I):
        raise InternalInconsistencyError(
            f"step changed subset size: {sorted(I)} -> {sorted(J)}")
    return KSEdge(I, s, nu, J)


def conjugacy_component(C: CoxeterMatrix, subset,
                        cap: int = DEFAULT_ENUM_CAP) -> ConjugacyClass:
    """Breadth-first closure of a spherical subset under steps along every
    outside generator."""
    I = frozenset(subset)
    if not is_spherical(C, I):
        raise PreconditionError("component exploration needs a spherical subset")
    members = {I}
    queue = [I]
    while queue:
        X = queue.pop(0)
        for s in range(C.n):
            if s in X:
                continue
            edge = ks_step(C, X, s)
            if edge is not None and edge.target not in members:
                if len(members) + 1 > cap:
                    raise EnumerationCapExceeded(
                        f"conjugacy component exceeded cap {cap}")
                members.add(edge.target)
                queue.append(edge.target)
    return ConjugacyClass.from_members(members)


def are_special_conjugate(C: CoxeterMatrix, left, right,
                          cap: int = DEFAULT_ENUM_CAP) -> bool:
    """Whether two spherical subsets carry conjugate standard subgroups."""
    L, R = frozenset(left), frozenset(right)
    for sub in (L, R):
        if not is_spherical(C, sub):
            raise PreconditionError("conjugacy test needs spherical subsets")
    if len(L) != len(R):
        return False
    return R in conjugacy_component(C, L, cap).members


def _abelian(C: CoxeterMatrix, subset) -> bool:
    gens = [simple_reflection(C, i) for i in sorted(subset)]
    return all(mul(a, b) == mul(b, a)
               for a, b in itertools.combinations(gens, 2))


def classify_s5_classes(system: LabeledCoxeterSystem,
                        cap: int = DEFAULT_ENUM_CAP) -> list[ConjugacyClass]:
    """Conjugacy classes of the order-120 nonabelian standard subgroups.

    Scans every spherical generator subset of size at most 4, keeps the ones
    whose subgroup has order 120 and is nonabelian, and groups them into
    conjugacy components.  For a block system these must come out as one
    singleton class per graph vertex, in vertex order; any other outcome is
    reported as evidence against the construction, loudly.
    """
    C = system.matrix
    hits = []
    for size in range(1, 5):
        for T in itertools.combinations(range(C.n), size):
            sub = frozenset(T)
            if not is_spherical(C, sub):
                continue
            order = len(enumerate_parabolic(C, sub, cap))
            if order == 120 and not _abelian(C, sub):
                hits.append(sub)
    expected = [system.block(v) for v in range(system.vertex_count)]
    if set(hits) != set(expected):
        raise FalsificationError(
            "census mismatch: order-120 nonabelian subsets are "
            f"{sorted(tuple(sorted(h)) for h in hits)}, expected one per block")
    classes = []
    covered = set()
    for T in expected:
        if T in covered:
            continue
        comp = conjugacy_component(C, T, cap)
        covered |= comp.members
        classes.append(comp)
    for comp, T in zip(classes, expected):
        if comp.members != {T}:
            raise FalsificationError(
                f"block {sorted(T)} is conjugate to {sorted(map(sorted, comp.members))}; "
                "blocks were expected to be pairwise non-conjugate")
    if len(classes) != system.vertex_count:
        raise FalsificationError("class count differs from vertex count")
    return classes

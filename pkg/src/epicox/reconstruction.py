"""Rebuilding a graph from its block system.

Vertices of the rebuilt graph are the conjugacy classes of order-120
nonabelian standard subgroups (one per block).  Two classes get an edge when
the designated even involutions of the two blocks commute, which happens
exactly for adjacent source vertices.  For pairs without a commuting
witness, a bounded sweep corroborates the expected picture: inside the
subsystem on the two blocks, nothing of small length outside the first
block's subgroup commutes with any of its even involutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .construction import (BLOCK_SIZE, LabeledCoxeterSystem, alt_involution,
                           build_C)
from .coxeter import (DEFAULT_ENUM_CAP, CoxeterMatrix, Word, ball_levels,
                      enumerate_parabolic, evaluate, identity, invert,
                      length, mul)
from .errors import FalsificationError, PreconditionError
from .graphs import (FiniteGraph, PointedReflexiveGraph, VertexMap,
                     make_pointed)
from .parabolics import ConjugacyClass, classify_s5_classes

DEFAULT_RADIUS = 6


@dataclass
class KGraph:
    graph: FiniteGraph
    classes: tuple[ConjugacyClass, ...]
    witnesses: dict[tuple[int, int], tuple[Word, Word]]


def commuting_witness(system: LabeledCoxeterSystem, s: int,
                      t: int) -> tuple[Word, Word] | None:
    """The pair of block involution words if they commute, else None."""
    if s == t:
        raise PreconditionError("witness needs two distinct vertices")
    C = system.matrix
    wa, wb = alt_involution(system, s), alt_involution(system, t)
    a, b = evaluate(C, wa), evaluate(C, wb)
    comm = mul(mul(a, b), mul(invert(C, a), invert(C, b)))
    if comm == identity(C):
        return wa, wb
    return None


def _two_block_submatrix(system: LabeledCoxeterSystem, s: int,
                         t: int) -> CoxeterMatrix:
    order = sorted(system.block(s)) + sorted(system.block(t))
    sub = system.matrix.submatrix(order)
    # canonical names so structurally equal pairs share a cache entry
    return CoxeterMatrix(sub.n, sub.m, tuple(f"g{i}" for i in range(sub.n)))


@lru_cache(maxsize=None)
def _centralizer_core(sub: CoxeterMatrix, radius: int) -> bool:
    first_block = frozenset(range(BLOCK_SIZE))
    s5 = enumerate_parabolic(sub, first_block)
    s5_mats = {w.mat for w in s5}
    idn = identity(sub)
    invs = [w for w in s5
            if w != idn and mul(w, w) == idn and length(sub, w) % 2 == 0]
    if radius == 0 or not invs:
        return True
    inv_np = [np.array(w.mat, dtype=np.int64) for w in invs]
    for level in ball_levels(sub, radius)[1:]:
        outside = []
        for a in level:
            mat = tuple(tuple(int(x) for x in row) for row in a)
            if mat not in s5_mats:
                outside.append(a)
        if not outside:
            continue
        X = np.stack(outside)
        if X.dtype == object:
            for a in inv_np:
                ao = a.astype(object)
                for idx in range(X.shape[0]):
                    if (X[idx].dot(ao) == ao.dot(X[idx])).all():
                        return False
        else:
            for a in inv_np:
                eq = np.matmul(X, a) == np.matmul(a, X)
                if eq.all(axis=(1, 2)).any():
                    return False
    return True


def bounded_centralizer_check(system: LabeledCoxeterSystem, s: int, t: int,
                              radius: int = DEFAULT_RADIUS) -> bool:
    """In the subsystem on the blocks of s and t: does every element of
    length <= radius that commutes with some even involution of the first
    block already lie in that block's subgroup?

    True means no violation up to the radius (vacuously so at radius 0).
    Intended for non-adjacent s, t; calling it on an adjacent pair is allowed
    and demonstrates a violation, since the other block's involution commutes
    while lying outside.
    """
    if s == t:
        raise PreconditionError("centralizer check needs two distinct vertices")
    if radius < 0:
        raise PreconditionError("radius must be nonnegative")
    return _centralizer_core(_two_block_submatrix(system, s, t), radius)


def k_graph(graph: FiniteGraph, radius: int = DEFAULT_RADIUS,
            cap: int = DEFAULT_ENUM_CAP) -> KGraph:
    """Class graph of the block system of the input graph.

    Reflexive by construction; an off-diagonal edge is present exactly when
    a commuting witness exists.  Every witnessless pair must additionally
    pass the bounded centralizer sweep, otherwise the construction itself is
    in doubt and we abort loudly.
    """
    system = build_C(graph)
    classes = tuple(classify_s5_classes(system, cap))
    n = len(classes)
    adj = [[u == v for v in range(n)] for u in range(n)]
    witnesses: dict[tuple[int, int], tuple[Word, Word]] = {}
    for s in range(n):
        for t in range(s + 1, n):
            wit = commuting_witness(system, s, t)
            if wit is not None:
                adj[s][t] = adj[t][s] = True
                witnesses[(s, t)] = wit
            else:
                if not bounded_centralizer_check(system, s, t, radius):
                    raise FalsificationError(
                        f"vertices {s},{t}: no commuting witness, yet some "
                        f"element of length <= {radius} commutes with an even "
                        "involution from outside its block subgroup")
    g = FiniteGraph(n, tuple(tuple(row) for row in adj), reflexive=True)
    return KGraph(g, classes, witnesses)


def k_pointed(graph: FiniteGraph, radius: int = DEFAULT_RADIUS,
              cap: int = DEFAULT_ENUM_CAP) -> PointedReflexiveGraph:
    """Class graph with a fresh dominating base adjoined."""
    return make_pointed(k_graph(graph, radius, cap).graph)


def verify_reconstruction(graph: FiniteGraph, radius: int = DEFAULT_RADIUS,
                          cap: int = DEFAULT_ENUM_CAP,
                          kg: KGraph | None = None) -> VertexMap:
    """Check vertex -> class-of-its-block is an isomorphism onto the class
    graph and return it.  Adjacency is compared in both directions against
    the reflexive closure of the input."""
    if kg is None:
        kg = k_graph(graph, radius, cap)
    system = build_C(graph)
    refl = graph.reflexive_closure()
    image = []
    for v in range(graph.n):
        block = system.block(v)
        matches = [i for i, cls in enumerate(kg.classes)
                   if cls.representative == block]
        if len(matches) != 1:
            raise FalsificationError(
                f"block of vertex {v} matches {len(matches)} classes")
        image.append(matches[0])
    if len(set(image)) != kg.graph.n:
        raise FalsificationError("vertex-to-class map is not a bijection")
    for u in range(graph.n):
        for v in range(graph.n):
            if refl.adjacent(u, v) != kg.graph.adjacent(image[u], image[v]):
                raise FalsificationError(
                    f"adjacency mismatch at ({u},{v}) under reconstruction")
    return VertexMap(graph.n, kg.graph.n, tuple(image))

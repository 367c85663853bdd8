"""Presentations, generator-shaped maps, lifts of graph maps, and the
induced map on class vertices.

A generator map sends each source generator either to a target generator or
to the identity.  That is exactly the shape produced by lifting a
base-preserving map of pointed graphs: position i of the block of v goes to
position i of the block of f(v), or to the identity when f collapses v to
the base.  Checking the source relators in the target decides whether the
assignment extends to a group homomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .construction import LabeledCoxeterSystem
from .coxeter import (DEFAULT_ENUM_CAP, INFINITE, CoxeterMatrix, GroupElement,
                      Word, ball, close_under_multiplication,
                      enumerate_parabolic, evaluate, identity, invert, mul,
                      simple_reflection)
from .errors import (EnumerationCapExceeded, FalsificationError,
                     InternalInconsistencyError, PreconditionError)
from .graphs import VertexMap, is_homomorphism, make_pointed
from .parabolics import classify_s5_classes
from .reconstruction import DEFAULT_RADIUS

IMAGE_CLOSURE_CAP = 240
CONJUGATOR_BALL_CAP = 50_000


@dataclass(frozen=True)
class Presentation:
    names: tuple[str, ...]
    relators: tuple[Word, ...]


def presentation_of(C: CoxeterMatrix) -> Presentation:
    """Squares of the generators plus one alternating relator per finite
    off-diagonal label."""
    relators = [(i, i) for i in range(C.n)]
    for i in range(C.n):
        for j in range(i + 1, C.n):
            m = C.m[i][j]
            if m != INFINITE:
                relators.append((i, j) * m)
    pres = Presentation(C.names, tuple(relators))
    idn = identity(C)
    for rel in pres.relators:
        if evaluate(C, rel) != idn:
            raise InternalInconsistencyError(
                f"relator {rel} does not evaluate to the identity")
    return pres


def presentation_to_text(p: Presentation) -> str:
    lines = ["generators: " + " ".join(p.names)]
    for rel in p.relators:
        if len(rel) == 2 and rel[0] == rel[1]:
            lines.append(f"{p.names[rel[0]]}^2")
        else:
            i, j = rel[0], rel[1]
            lines.append(f"({p.names[i]} {p.names[j]})^{len(rel) // 2}")
    return "\n".join(lines) + "\n"


def presentation_to_json_dict(p: Presentation) -> dict:
    return {"generators": list(p.names),
            "relators": [[p.names[i] for i in rel] for rel in p.relators]}


def presentation_from_json_dict(d: dict) -> Presentation:
    try:
        names = tuple(str(x) for x in d["generators"])
        index = {name: i for i, name in enumerate(names)}
        relators = tuple(tuple(index[str(x)] for x in rel)
                         for rel in d["relators"])
    except (KeyError, TypeError) as exc:
        raise PreconditionError(f"malformed presentation JSON: {exc}") from exc
    return Presentation(names, relators)


@dataclass(frozen=True)
class GeneratorMap:
    """Per-generator assignment; None sends a generator to the identity."""
    source: CoxeterMatrix
    target: CoxeterMatrix
    images: tuple[int | None, ...]

    def __post_init__(self):
        if len(self.images) != self.source.n:
            raise PreconditionError("need one image per source generator")
        for x in self.images:
            if x is not None and not (0 <= x < self.target.n):
                raise PreconditionError(f"image index {x} out of range")


def map_word(phi: GeneratorMap, word) -> Word:
    return tuple(phi.images[i] for i in word if phi.images[i] is not None)


def verify_relators(phi: GeneratorMap) -> bool:
    """Do all source relators evaluate to the identity in the target?"""
    idn = identity(phi.target)
    for rel in presentation_of(phi.source).relators:
        if evaluate(phi.target, map_word(phi, rel)) != idn:
            return False
    return True


def is_onto_generators(phi: GeneratorMap) -> bool:
    hit = {x for x in phi.images if x is not None}
    return hit == set(range(phi.target.n))


def lift_graph_epi(f: VertexMap, source_system: LabeledCoxeterSystem,
                   target_system: LabeledCoxeterSystem) -> GeneratorMap:
    """Lift a base-preserving map of pointed graphs to a generator map.

    The pointed graphs are the systems' graphs made reflexive with the base
    appended last (the make_pointed convention), so f must have sizes n+1
    and m+1 and send index n to index m.  Position i of the block of v maps
    to position i of the block of f(v), or to the identity when f(v) is the
    base.
    """
    src_p = make_pointed(source_system.graph.reflexive_closure())
    tgt_p = make_pointed(target_system.graph.reflexive_closure())
    if f.source_size != src_p.n or f.target_size != tgt_p.n:
        raise PreconditionError("map sizes do not match the pointed graphs")
    if f.image[src_p.base] != tgt_p.base:
        raise PreconditionError("map does not preserve the base vertex")
    if not is_homomorphism(f, src_p.graph, tgt_p.graph):
        raise PreconditionError("map is not a homomorphism of pointed graphs")
    images: list[int | None] = []
    for g in range(source_system.matrix.n):
        v, pos = source_system.block_of(g)
        fv = f.image[v]
        if fv == tgt_p.base:
            images.append(None)
        else:
            images.append(target_system.generator(fv, pos))
    phi = GeneratorMap(source_system.matrix, target_system.matrix,
                       tuple(images))
    if not verify_relators(phi):
        raise InternalInconsistencyError(
            "lift of a graph homomorphism failed relator verification")
    return phi


def retraction_rho(system: LabeledCoxeterSystem, s: int,
                   t: int) -> GeneratorMap:
    """Endomorphism keeping the blocks of s and t and killing the rest."""
    if s == t:
        raise PreconditionError("retraction needs two distinct vertices")
    keep = system.block(s) | system.block(t)
    images = tuple(g if g in keep else None
                   for g in range(system.matrix.n))
    phi = GeneratorMap(system.matrix, system.matrix, images)
    if not verify_relators(phi):
        raise InternalInconsistencyError("retraction failed relator check")
    return phi


def conjugate_onto(C: CoxeterMatrix, elements, target_set: frozenset,
                   radius: int, cap: int = CONJUGATOR_BALL_CAP) -> GroupElement | None:
    """Search the length ball for g with g^-1 * elements * g equal to the
    target matrix set.  Returns the first conjugator found, or None."""
    elements = list(elements)
    idn = identity(C)
    probe = next((w for w in elements if w != idn), None)
    for g in ball(C, radius, cap=cap):
        gi = invert(C, g)
        if probe is not None and mul(mul(gi, probe), g).mat not in target_set:
            continue
        if frozenset(mul(mul(gi, w), g).mat for w in elements) == target_set:
            return g
    return None


@dataclass(frozen=True)
class ClassImage:
    source_vertex: int
    kind: str  # "class" | "base" | "undetermined"
    target_vertex: int | None = None


@lru_cache(maxsize=None)
def _target_class_sets(target_system: LabeledCoxeterSystem,
                       cap: int) -> tuple[frozenset, ...]:
    """Matrix sets of the block subgroups, after class census checks."""
    classify_s5_classes(target_system, cap)
    tgt = target_system.matrix
    return tuple(
        frozenset(w.mat for w in
                  enumerate_parabolic(tgt, target_system.block(u), cap))
        for u in range(target_system.vertex_count))


@lru_cache(maxsize=None)
def _classify_block_image(target_system: LabeledCoxeterSystem,
                          gen_images: tuple, radius: int,
                          cap: int) -> tuple[str, int | None]:
    """Classify the subgroup generated by the given target generators.

    The answer depends only on the target side, so it is cached across
    maps; distinct source blocks with the same images share an entry.
    """
    tgt = target_system.matrix
    tgt_sets = _target_class_sets(target_system, cap)
    mats = [simple_reflection(tgt, j) for j in gen_images if j is not None]
    group = close_under_multiplication(mats, tgt.n, IMAGE_CLOSURE_CAP)
    order = len(group)
    if order <= 2:
        return "base", None
    if order != 120:
        raise FalsificationError(
            f"a block image has order {order}, which violates the "
            "order dichotomy {1, 2, 120} for block quotients")
    gset = frozenset(w.mat for w in group)
    for u, S in enumerate(tgt_sets):
        if S == gset:
            return "class", u
    try:
        for u, S in enumerate(tgt_sets):
            if conjugate_onto(tgt, group, S, radius) is not None:
                return "class", u
    except EnumerationCapExceeded:
        pass
    return "undetermined", None


def induced_k_map(source_system: LabeledCoxeterSystem,
                  target_system: LabeledCoxeterSystem,
                  phi: GeneratorMap,
                  radius: int = DEFAULT_RADIUS,
                  cap: int = DEFAULT_ENUM_CAP) -> tuple[ClassImage, ...]:
    """Where each source class vertex goes under a relator-respecting map.

    Per source vertex: enumerate the image of its block subgroup.  Order 1
    or 2 means the class collapses to the base point.  Order 120 should be a
    target block subgroup: matched directly, then by a conjugator search
    over the length ball as a fallback, and reported as undetermined if the
    search is exhausted.  Any other order contradicts the simplicity
    dichotomy for quotients of the block group and aborts loudly.
    """
    if phi.source != source_system.matrix or phi.target != target_system.matrix:
        raise PreconditionError("map endpoints do not match the systems")
    if not verify_relators(phi):
        raise PreconditionError("map does not respect the source relators")
    out = []
    for v in range(source_system.vertex_count):
        gen_images = tuple(phi.images[g]
                           for g in sorted(source_system.block(v)))
        kind, u = _classify_block_image(target_system, gen_images,
                                        radius, cap)
        out.append(ClassImage(v, kind, u))
    return tuple(out)


# --- serialization --------------------------------------------------------
#
# JSON: {"images": [<target generator name> or "e", ...]} in source
# generator order.

IDENTITY_MARK = "e"


def gen_map_to_json_dict(phi: GeneratorMap) -> dict:
    return {"images": [IDENTITY_MARK if x is None else phi.target.names[x]
                       for x in phi.images]}


def gen_map_from_json_dict(d: dict, source: CoxeterMatrix,
                           target: CoxeterMatrix) -> GeneratorMap:
    try:
        raw = list(d["images"])
    except (KeyError, TypeError) as exc:
        raise PreconditionError(f"malformed map JSON: {exc}") from exc
    index = {name: i for i, name in enumerate(target.names)}
    images: list[int | None] = []
    for x in raw:
        if x == IDENTITY_MARK:
            images.append(None)
        elif x in index:
            images.append(index[x])
        else:
            raise PreconditionError(f"unknown target generator {x!r}")
    return GeneratorMap(source, target, tuple(images))

"""Finite graphs, homomorphism search, and the complement-plus-base reduction.

Graphs are immutable: a vertex count plus a symmetric boolean adjacency
matrix.  Irreflexive graphs forbid self-loops, reflexive graphs carry all of
them.  A pointed graph is a reflexive graph together with a base vertex
adjacent to every vertex.

The reduction ``f_reduce`` sends an irreflexive graph without isolated
vertices to the complement with all loops added plus one fresh dominating
base vertex.  Injective homomorphisms between the originals then correspond
to surjective homomorphisms between the reduced graphs in the reverse
direction, which is what the acceptance suite checks exhaustively on small
instances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import PreconditionError


@dataclass(frozen=True)
class FiniteGraph:
    n: int
    adj: tuple[tuple[bool, ...], ...]
    reflexive: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise PreconditionError("vertex count must be nonnegative")
        if len(self.adj) != self.n or any(len(row) != self.n for row in self.adj):
            raise PreconditionError("adjacency matrix shape does not match n")
        for u in range(self.n):
            for v in range(u, self.n):
                if self.adj[u][v] != self.adj[v][u]:
                    raise PreconditionError(f"adjacency not symmetric at ({u},{v})")
        for v in range(self.n):
            if self.reflexive and not self.adj[v][v]:
                raise PreconditionError(f"reflexive graph missing loop at {v}")
            if not self.reflexive and self.adj[v][v]:
                raise PreconditionError(f"irreflexive graph has loop at {v}")

    @staticmethod
    def from_edges(n: int, edges, reflexive: bool = False) -> FiniteGraph:
        adj = [[False] * n for _ in range(n)]
        if reflexive:
            for v in range(n):
                adj[v][v] = True
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u},{v}) out of range")
            if u == v and not reflexive:
                raise PreconditionError(f"loop at {u} in an irreflexive graph")
            adj[u][v] = True
            adj[v][u] = True
        return FiniteGraph(n, tuple(tuple(row) for row in adj), reflexive)

    def adjacent(self, u: int, v: int) -> bool:
        return self.adj[u][v]

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        """Edges between distinct vertices, as sorted pairs.  Loops of a
        reflexive graph are implied by the flag and not listed."""
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if self.adj[u][v]]

    def is_isolated(self, v: int) -> bool:
        return not any(self.adj[v][u] for u in range(self.n) if u != v)

    def reflexive_closure(self) -> FiniteGraph:
        if self.reflexive:
            return self
        adj = tuple(tuple(x or (u == v) for v, x in enumerate(row))
                    for u, row in enumerate(self.adj))
        return FiniteGraph(self.n, adj, reflexive=True)

    def without_loops(self) -> FiniteGraph:
        if not self.reflexive:
            return self
        adj = tuple(tuple(x and (u != v) for v, x in enumerate(row))
                    for u, row in enumerate(self.adj))
        return FiniteGraph(self.n, adj, reflexive=False)


@dataclass(frozen=True)
class PointedReflexiveGraph:
    graph: FiniteGraph
    base: int

    def __post_init__(self):
        if not self.graph.reflexive:
            raise PreconditionError("pointed graphs must be reflexive")
        if not (0 <= self.base < self.graph.n):
            raise PreconditionError("base vertex out of range")
        for v in self.graph.vertices():
            if not self.graph.adjacent(self.base, v):
                raise PreconditionError(f"base not adjacent to vertex {v}")

    @property
    def n(self) -> int:
        return self.graph.n


@dataclass(frozen=True)
class VertexMap:
    source_size: int
    target_size: int
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.source_size:
            raise PreconditionError("image length does not match source size")
        for x in self.image:
            if not (0 <= x < self.target_size):
                raise PreconditionError(f"image value {x} out of range")

    def __call__(self, v: int) -> int:
        return self.image[v]


def make_pointed(g: FiniteGraph) -> PointedReflexiveGraph:
    """Adjoin a fresh base vertex (index n) adjacent to everything."""
    if not g.reflexive:
        raise PreconditionError("make_pointed expects a reflexive graph")
    n = g.n
    adj = [list(row) + [True] for row in g.adj]
    adj.append([True] * (n + 1))
    return PointedReflexiveGraph(
        FiniteGraph(n + 1, tuple(tuple(r) for r in adj), reflexive=True), n)


def f_reduce(g: FiniteGraph) -> PointedReflexiveGraph:
    """Complement the graph, add all loops, and adjoin a dominating base.

    Requires an irreflexive input without isolated vertices; isolation would
    make the base fail to be the unique dominating vertex, which the reverse
    translation of homomorphisms relies on.
    """
    if g.reflexive:
        raise PreconditionError("f_reduce expects an irreflexive graph")
    for v in g.vertices():
        if g.is_isolated(v):
            raise PreconditionError(f"vertex {v} is isolated")
    n = g.n
    adj = [[u == v or not g.adj[u][v] for v in range(n)] + [True]
           for u in range(n)]
    adj.append([True] * (n + 1))
    return PointedReflexiveGraph(
        FiniteGraph(n + 1, tuple(tuple(r) for r in adj), reflexive=True), n)


def is_homomorphism(f: VertexMap, source: FiniteGraph, target: FiniteGraph) -> bool:
    if f.source_size != source.n or f.target_size != target.n:
        raise PreconditionError("map sizes do not match the graphs")
    for u in range(source.n):
        for v in range(u, source.n):
            if source.adj[u][v] and not target.adj[f.image[u]][f.image[v]]:
                return False
    return True


def is_surjective(f: VertexMap) -> bool:
    return set(f.image) == set(range(f.target_size))


def find_injective_hom(source: FiniteGraph, target: FiniteGraph) -> VertexMap | None:
    """First injective edge-preserving map in lexicographic order, or None.

    Backtracking over partial injections; both graphs must be irreflexive.
    """
    if source.reflexive or target.reflexive:
        raise PreconditionError("injective search expects irreflexive graphs")
    if source.n > target.n:
        return None
    image: list[int] = []
    used = [False] * target.n

    def extend(v: int) -> bool:
        if v == source.n:
            return True
        for w in range(target.n):
            if used[w]:
                continue
            if any(source.adj[u][v] and not target.adj[image[u]][w]
                   for u in range(v)):
                continue
            image.append(w)
            used[w] = True
            if extend(v + 1):
                return True
            used[w] = False
            image.pop()
        return False

    if extend(0):
        return VertexMap(source.n, target.n, tuple(image))
    return None


def _unwrap(g) -> tuple[FiniteGraph, int | None]:
    if isinstance(g, PointedReflexiveGraph):
        return g.graph, g.base
    return g, None


def find_epimorphism(source, target, base_preserving: bool | None = None) -> VertexMap | None:
    """First surjective homomorphism from source onto target, or None.

    Both arguments are reflexive graphs or both are pointed graphs.  For
    pointed inputs the search restricts to base-preserving maps by default;
    pass ``base_preserving=False`` to search all onto homomorphisms (useful
    when the target base is forced anyway, as for reduced graphs).
    """
    sg, sb = _unwrap(source)
    tg, tb = _unwrap(target)
    if (sb is None) != (tb is None):
        raise PreconditionError("mixed pointed and unpointed inputs")
    if not (sg.reflexive and tg.reflexive):
        raise PreconditionError("epimorphism search expects reflexive graphs")
    if base_preserving is None:
        base_preserving = sb is not None
    if base_preserving and sb is None:
        raise PreconditionError("base-preserving search needs pointed inputs")
    if sg.n < tg.n:
        return None

    image: list[int] = []
    use_count = [0] * tg.n

    def extend(v: int, missing: int) -> bool:
        if v == sg.n:
            return missing == 0
        if missing > sg.n - v:
            return False
        candidates = (tb,) if (base_preserving and v == sb) else range(tg.n)
        for w in candidates:
            if any(sg.adj[u][v] and not tg.adj[image[u]][w] for u in range(v)):
                continue
            image.append(w)
            use_count[w] += 1
            if extend(v + 1, missing - (use_count[w] == 1)):
                return True
            use_count[w] -= 1
            image.pop()
        return False

    if extend(0, tg.n):
        return VertexMap(sg.n, tg.n, tuple(image))
    return None


def are_isomorphic(g: FiniteGraph, h: FiniteGraph) -> VertexMap | None:
    """Brute-force isomorphism search, intended for graphs of at most a
    handful of vertices."""
    if g.n != h.n or g.reflexive != h.reflexive:
        return None
    image: list[int] = []
    used = [False] * h.n

    def extend(v: int) -> bool:
        if v == g.n:
            return True
        for w in range(h.n):
            if used[w]:
                continue
            if any(g.adj[u][v] != h.adj[image[u]][w] for u in range(v)):
                continue
            image.append(w)
            used[w] = True
            if extend(v + 1):
                return True
            used[w] = False
            image.pop()
        return False

    if extend(0):
        return VertexMap(g.n, h.n, tuple(image))
    return None


# --- file formats ---------------------------------------------------------
#
# Text: first data line "n <count> [reflexive|irreflexive] [base <i>]",
# then one "e <u> <v>" line per edge, 0-indexed.  Blank lines and lines
# starting with "#" are skipped.  Loops are implied by the reflexive flag
# and never listed.  JSON mirrors the same fields.


def graph_to_text(g) -> str:
    fg, base = _unwrap(g)
    head = f"n {fg.n} " + ("reflexive" if fg.reflexive else "irreflexive")
    if base is not None:
        head += f" base {base}"
    lines = [head] + [f"e {u} {v}" for u, v in fg.edges()]
    return "\n".join(lines) + "\n"


def graph_from_text(text: str):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise PreconditionError("empty graph description")
    head = lines[0].split()
    if len(head) < 2 or head[0] != "n":
        raise PreconditionError("first line must be 'n <count> ...'")
    try:
        n = int(head[1])
    except ValueError as exc:
        raise PreconditionError("vertex count is not an integer") from exc
    reflexive = False
    base = None
    rest = head[2:]
    while rest:
        tok = rest.pop(0)
        if tok == "reflexive":
            reflexive = True
        elif tok == "irreflexive":
            reflexive = False
        elif tok == "base":
            if not rest:
                raise PreconditionError("'base' needs a vertex index")
            base = int(rest.pop(0))
            reflexive = True
        else:
            raise PreconditionError(f"unknown header token {tok!r}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "e":
            raise PreconditionError(f"bad edge line {ln!r}")
        u, v = int(parts[1]), int(parts[2])
        if u == v:
            if not reflexive:
                raise PreconditionError(f"loop at {u} in an irreflexive graph")
            continue
        edges.append((u, v))
    fg = FiniteGraph.from_edges(n, edges, reflexive)
    if base is not None:
        return PointedReflexiveGraph(fg, base)
    return fg


def graph_to_json_dict(g) -> dict:
    fg, base = _unwrap(g)
    d = {"n": fg.n, "edges": [[u, v] for u, v in fg.edges()],
         "reflexive": fg.reflexive}
    if base is not None:
        d["base"] = base
    return d


def graph_from_json_dict(d: dict):
    try:
        n = int(d["n"])
        edges = [(int(u), int(v)) for u, v in d.get("edges", [])]
        reflexive = bool(d.get("reflexive", False))
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"malformed graph JSON: {exc}") from exc
    base = d.get("base")
    if base is not None:
        reflexive = True
    edges = [e for e in edges if e[0] != e[1]] if reflexive else edges
    fg = FiniteGraph.from_edges(n, edges, reflexive)
    if base is not None:
        return PointedReflexiveGraph(fg, int(base))
    return fg


def all_labeled_graphs(max_n: int, min_n: int = 0) -> list[FiniteGraph]:
    """Every labeled irreflexive graph with min_n..max_n vertices, in a
    deterministic order.  Grows as 2^C(n,2); meant for small n."""
    out = []
    for n in range(min_n, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for picks in itertools.product([False, True], repeat=len(pairs)):
            edges = [p for p, take in zip(pairs, picks) if take]
            out.append(FiniteGraph.from_edges(n, edges))
    return out

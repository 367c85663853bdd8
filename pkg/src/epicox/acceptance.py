"""The nine acceptance criteria, runnable as a library.

Each criterion is a function returning (passed, detail).  Where a criterion
checks a derived quantity, the check runs against an independent brute-force
oracle implemented here (plain breadth-first distances, naive enumeration of
all vertex maps) rather than against the code path under test.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from . import coxeter
from .construction import build_C, build_L4, verify_L4_is_S5
from .coxeter import (enumerate_parabolic, evaluate, identity, is_spherical,
                      length, longest_element, mul, mul_gen, preserves_form,
                      reduced_word)
from .errors import FalsificationError
from .graphs import (FiniteGraph, all_labeled_graphs, f_reduce,
                     find_epimorphism, find_injective_hom, make_pointed,
                     VertexMap)
from .homomorphisms import (induced_k_map, is_onto_generators, lift_graph_epi,
                            verify_relators)
from .parabolics import (conjugacy_component, ks_component_candidate, ks_step)
from .reconstruction import (bounded_centralizer_check, commuting_witness,
                             k_graph, verify_reconstruction)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    detail: str

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (f"criterion {self.number} [{self.name}]: {verdict} "
                f"({self.seconds:.2f}s) {self.detail}")


@dataclass(frozen=True)
class AcceptanceConfig:
    radius: int = 6
    enum_cap: int = coxeter.DEFAULT_ENUM_CAP


# --- oracles ---------------------------------------------------------------


def _bfs_distances(C, subset):
    """Word-length of every element of a finite standard subgroup, by plain
    breadth-first search over generator multiplication."""
    idn = identity(C)
    dist = {idn.mat: 0}
    frontier = [idn]
    d = 0
    while frontier:
        nxt = []
        d += 1
        for w in frontier:
            for i in sorted(subset):
                cand = mul_gen(C, w, i)
                if cand.mat not in dist:
                    dist[cand.mat] = d
                    nxt.append(cand)
        frontier = nxt
    return dist


def _naive_hom_exists(source, target, injective=False, onto=False):
    """Exhaustive check over all vertex maps.  Loops count as edges."""
    for image in itertools.product(range(target.n), repeat=source.n):
        if injective and len(set(image)) != source.n:
            continue
        if onto and set(image) != set(range(target.n)):
            continue
        ok = all(not source.adj[u][v] or target.adj[image[u]][image[v]]
                 for u in range(source.n) for v in range(u, source.n))
        if ok:
            return True
    return False


def _reduction_instances():
    """All labeled irreflexive graphs with <= 3 vertices and no isolated
    vertex."""
    return [g for g in all_labeled_graphs(3)
            if not any(g.is_isolated(v) for v in g.vertices())]


def _base_preserving_epis(src_p, tgt_p):
    """Every base-preserving onto homomorphism between two pointed graphs,
    by naive enumeration."""
    sg, tg = src_p.graph, tgt_p.graph
    out = []
    others = [v for v in range(sg.n) if v != src_p.base]
    for picks in itertools.product(range(tg.n), repeat=len(others)):
        image = [0] * sg.n
        image[src_p.base] = tgt_p.base
        for v, w in zip(others, picks):
            image[v] = w
        if set(image) != set(range(tg.n)):
            continue
        ok = all(not sg.adj[u][v] or tg.adj[image[u]][image[v]]
                 for u in range(sg.n) for v in range(u, sg.n))
        if ok:
            out.append(VertexMap(sg.n, tg.n, tuple(image)))
    return out


# --- criteria --------------------------------------------------------------


def criterion_1(config: AcceptanceConfig):
    report = verify_L4_is_S5(config.enum_cap)
    ok = (report.order == 120 and report.nonabelian
          and report.even_order == 60 and report.even_is_subgroup
          and report.even_is_simple)
    return ok, (f"order={report.order} nonabelian={report.nonabelian} "
                f"even order={report.even_order} simple={report.even_is_simple}")


def criterion_2(config: AcceptanceConfig):
    C = build_L4()
    dist = _bfs_distances(C, range(4))
    w0 = longest_element(C, range(4))
    bfs_len = dist[w0.mat]
    max_len = max(dist.values())
    top = [m for m, d in dist.items() if d == max_len]
    square_ok = mul(w0, w0) == identity(C)
    engine_len = length(C, w0)
    ok = (bfs_len == 10 and max_len == 10 and len(top) == 1
          and top[0] == w0.mat and square_ok and engine_len == 10)
    return ok, (f"BFS length={bfs_len} engine length={engine_len} "
                f"unique top={len(top) == 1} square=identity: {square_ok}")


def criterion_3(config: AcceptanceConfig):
    graphs = _reduction_instances()
    pairs = 0
    for g in graphs:
        for h in graphs:
            inj_search = find_injective_hom(g, h) is not None
            inj_naive = _naive_hom_exists(g, h, injective=True)
            fg, fh = f_reduce(g), f_reduce(h)
            # onto map from the reduced h down to the reduced g
            epi_found = find_epimorphism(fh, fg, base_preserving=False)
            epi_naive = _naive_hom_exists(fh.graph, fg.graph, onto=True)
            epi_search = epi_found is not None
            if not (inj_search == inj_naive == epi_search == epi_naive):
                return False, (f"mismatch on pair {g.edges()} vs {h.edges()}: "
                               f"inj {inj_search}/{inj_naive} "
                               f"epi {epi_search}/{epi_naive}")
            if epi_found is not None and epi_found.image[fh.base] != fg.base:
                return False, "an onto map between reduced graphs moved the base"
            pairs += 1
    return True, f"{len(graphs)} graphs, {pairs} ordered pairs agree"


def criterion_4(config: AcceptanceConfig):
    shapes = {"edge": FiniteGraph.from_edges(2, [(0, 1)]),
              "two points": FiniteGraph.from_edges(2, [])}
    checked = 0
    for name, g in shapes.items():
        system = build_C(g)
        C = system.matrix
        for v in range(2):
            block = system.block(v)
            for s in range(C.n):
                if s in block:
                    continue
                K = ks_component_candidate(C, block, s)
                if is_spherical(C, K):
                    return False, (f"{name}: component for block {v} along "
                                   f"generator {s} is spherical")
                if ks_step(C, block, s) is not None:
                    return False, f"{name}: unexpected step out of block {v}"
                checked += 1
            comp = conjugacy_component(C, block, config.enum_cap)
            if comp.members != {block}:
                return False, f"{name}: block {v} is not alone in its class"
    return True, f"{checked} outgoing candidates all non-spherical"


def criterion_5(config: AcceptanceConfig):
    pairs = 0
    for g in all_labeled_graphs(4):
        system = build_C(g)
        for s in range(g.n):
            for t in range(g.n):
                if s == t:
                    continue
                wit = commuting_witness(system, s, t)
                if (wit is not None) != g.adjacent(s, t):
                    return False, (f"graph {g.edges()} on {g.n} vertices: "
                                   f"witness for ({s},{t}) is "
                                   f"{wit is not None}, adjacency {g.adjacent(s, t)}")
                pairs += 1
    return True, f"{pairs} ordered pairs across all graphs on <= 4 vertices"


def criterion_6(config: AcceptanceConfig):
    g = FiniteGraph.from_edges(2, [])
    system = build_C(g)
    sub = system.matrix.submatrix(sorted(system.block(0)) + sorted(system.block(1)))
    s5 = enumerate_parabolic(sub, range(4), config.enum_cap)
    idn = identity(sub)
    invs = [w for w in s5
            if w != idn and mul(w, w) == idn and length(sub, w) % 2 == 0]
    if len(invs) != 15:
        return False, f"expected 15 even involutions, found {len(invs)}"
    ok = bounded_centralizer_check(system, 0, 1, config.radius)
    note = ""
    if config.radius == 0:
        note = " (warning: radius 0, check is vacuous)"
    return ok, f"radius {config.radius}, 15 even involutions, no violation{note}"


def criterion_7(config: AcceptanceConfig):
    count = 0
    for g in all_labeled_graphs(3):
        iso = verify_reconstruction(g, config.radius, config.enum_cap)
        if tuple(iso.image) != tuple(range(g.n)):
            return False, f"unexpected class order for graph {g.edges()}"
        count += 1
    return True, f"{count} graphs reconstructed and verified both ways"


@dataclass
class PairOutcome:
    source_index: int
    target_index: int
    epi_count: int
    ok: bool
    message: str


@dataclass
class TheoremReport:
    graph_count: int
    pair_outcomes: list[PairOutcome]

    @property
    def passed(self) -> bool:
        return all(p.ok for p in self.pair_outcomes)

    @property
    def total_epis(self) -> int:
        return sum(p.epi_count for p in self.pair_outcomes)


def theorem_report(max_vertices: int, radius: int, cap: int,
                   inject_fault: bool = False) -> TheoremReport:
    """For every ordered pair of reflexive graphs with at most max_vertices
    vertices and every base-preserving epimorphism f between their pointed
    versions: lift f, check relators and generator surjectivity, and check
    the induced class map reproduces f through the reconstruction
    isomorphisms.

    inject_fault corrupts the first liftable map to prove the relator check
    can fail; the corrupted pair is reported as a failure.
    """
    graphs = all_labeled_graphs(max_vertices)
    cache = {}
    for idx, g in enumerate(graphs):
        system = build_C(g)
        kg = k_graph(g, radius, cap)
        verify_reconstruction(g, radius, cap, kg=kg)
        cache[idx] = (g, system, make_pointed(g.reflexive_closure()))
    outcomes = []
    fault_pending = inject_fault
    for i, (g1, sys1, p1) in cache.items():
        for j, (g2, sys2, p2) in cache.items():
            epis = _base_preserving_epis(p1, p2)
            ok = True
            message = "ok"
            for f in epis:
                phi = lift_graph_epi(f, sys1, sys2)
                if fault_pending:
                    corrupted = _corrupt(phi, sys1, sys2, f)
                    if corrupted is not None:
                        fault_pending = False
                        ok = False
                        if verify_relators(corrupted):
                            message = "fault injection not detected"
                        else:
                            message = ("injected relator fault detected "
                                       "(expected failure)")
                        break
                if not verify_relators(phi):
                    ok, message = False, f"relators failed for {f.image}"
                    break
                if not is_onto_generators(phi):
                    ok, message = False, f"lift of onto map missed generators: {f.image}"
                    break
                images = induced_k_map(sys1, sys2, phi, radius, cap)
                for v in range(g1.n):
                    want_base = f.image[v] == p2.base
                    got = images[v]
                    if want_base and got.kind != "base":
                        ok, message = False, f"vertex {v} should collapse, got {got.kind}"
                        break
                    if not want_base and (got.kind != "class"
                                          or got.target_vertex != f.image[v]):
                        ok, message = False, (f"vertex {v} maps to {got}, "
                                              f"expected class {f.image[v]}")
                        break
                if not ok:
                    break
            outcomes.append(PairOutcome(i, j, len(epis), ok, message))
    return TheoremReport(len(graphs), outcomes)


def _corrupt(phi, sys1, sys2, f):
    """Reroute one block's position-2 image to position 1, which breaks the
    braid relator with position 3 whenever the block survives."""
    for v in range(sys1.vertex_count):
        g2 = sys1.generator(v, 2)
        if phi.images[g2] is not None:
            fv = f.image[v]
            images = list(phi.images)
            images[g2] = sys2.generator(fv, 1)
            from .homomorphisms import GeneratorMap
            return GeneratorMap(phi.source, phi.target, tuple(images))
    return None


def criterion_8(config: AcceptanceConfig):
    report = theorem_report(3, config.radius, config.enum_cap)
    bad = [p for p in report.pair_outcomes if not p.ok]
    if bad:
        p = bad[0]
        return False, f"pair {p.source_index}->{p.target_index}: {p.message}"
    return True, (f"{report.graph_count} graphs, "
                  f"{len(report.pair_outcomes)} ordered pairs, "
                  f"{report.total_epis} epimorphisms all verified")


def criterion_9(config: AcceptanceConfig):
    """Form preservation and reduced-word roundtrip for every element of
    every finite standard subgroup the other criteria touch: the 4-chain,
    and every spherical subset of size <= 4 in every block system on at
    most 3 vertices."""
    systems = [build_L4()]
    systems += [build_C(g).matrix for g in all_labeled_graphs(3)]
    elements = 0
    for C in systems:
        union = {}
        top = min(C.n, 4)
        for size in range(1, top + 1):
            for T in itertools.combinations(range(C.n), size):
                if not is_spherical(C, T):
                    continue
                for w in enumerate_parabolic(C, T, config.enum_cap):
                    union[w.mat] = w
        for w in union.values():
            if not preserves_form(C, w):
                return False, f"form violation in rank {C.n} system"
            if evaluate(C, reduced_word(C, w)) != w:
                return False, f"roundtrip failure in rank {C.n} system"
        elements += len(union)
    return True, f"{elements} distinct elements across {len(systems)} systems"


CRITERIA = [
    (1, "one-block group structure", criterion_1),
    (2, "longest element of the 4-chain", criterion_2),
    (3, "reduction equivalence", criterion_3),
    (4, "blocks are conjugacy-isolated", criterion_4),
    (5, "commuting involutions mirror adjacency", criterion_5),
    (6, "bounded centralizer sweep", criterion_6),
    (7, "reconstruction isomorphism", criterion_7),
    (8, "lifted maps induce the original map", criterion_8),
    (9, "engine invariants on touched subgroups", criterion_9),
]


def run_criterion(number: int, config: AcceptanceConfig) -> CriterionResult:
    entry = next(e for e in CRITERIA if e[0] == number)
    start = time.monotonic()
    try:
        passed, detail = entry[2](config)
    except FalsificationError as exc:
        passed, detail = False, f"falsification: {exc}"
    elapsed = time.monotonic() - start
    return CriterionResult(number, entry[1], passed, elapsed, detail)


def run_all(config: AcceptanceConfig | None = None) -> list[CriterionResult]:
    config = config or AcceptanceConfig()
    return [run_criterion(num, config) for num, _, _ in CRITERIA]

"""Command line front end.

Exit codes: 0 success, 1 internal inconsistency, 2 bad input or resource
cap, 3 a checked mathematical claim failed on the given instance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import coxeter
from .acceptance import AcceptanceConfig, CRITERIA, run_criterion, theorem_report
from .construction import build_C, verify_L4_is_S5
from .coxeter import coxeter_to_json_dict
from .errors import (EnumerationCapExceeded, FalsificationError,
                     InternalInconsistencyError, PreconditionError)
from .graphs import (FiniteGraph, f_reduce, graph_from_json_dict,
                     graph_from_text, graph_to_json_dict, graph_to_text)
from .homomorphisms import (presentation_of, presentation_to_json_dict,
                            presentation_to_text)
from .parabolics import classify_s5_classes
from .reconstruction import DEFAULT_RADIUS, k_graph

ENUM_CAP_ENV = "EPICOX_ENUM_CAP"

# one block's subgroup has 120 elements; anything useful holds two
MIN_ENUM_CAP = 240


@dataclass(frozen=True)
class RunConfig:
    max_vertices: int = 2
    radius: int = DEFAULT_RADIUS
    enum_cap: int = coxeter.DEFAULT_ENUM_CAP
    fmt: str = "text"

    def __post_init__(self):
        if self.max_vertices < 0:
            raise PreconditionError("max_vertices must be nonnegative")
        if self.radius < 0:
            raise PreconditionError("radius must be nonnegative")
        if self.enum_cap < MIN_ENUM_CAP:
            raise PreconditionError(
                f"enum_cap below {MIN_ENUM_CAP} cannot hold two blocks")
        if self.fmt not in ("text", "json"):
            raise PreconditionError(f"unknown format {self.fmt!r}")


def effective_enum_cap(config: RunConfig) -> int:
    """The enumeration cap actually used.  The environment variable wins
    over the configured value and is allowed below the configured floor,
    so deliberately tiny caps can be exercised."""
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return config.enum_cap
    try:
        value = int(raw)
    except ValueError as exc:
        raise PreconditionError(
            f"{ENUM_CAP_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise PreconditionError(f"{ENUM_CAP_ENV} must be positive")
    return value


def _config_from_args(args) -> RunConfig:
    radius = getattr(args, "radius", None)
    max_vertices = getattr(args, "max_vertices", None)
    enum_cap = getattr(args, "enum_cap", None)
    return RunConfig(
        max_vertices=2 if max_vertices is None else max_vertices,
        radius=DEFAULT_RADIUS if radius is None else radius,
        enum_cap=coxeter.DEFAULT_ENUM_CAP if enum_cap is None else enum_cap,
        fmt="json" if getattr(args, "json", False) else "text",
    )


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc}") from exc


def _load_irreflexive_graph(path: str) -> FiniteGraph:
    text = _read_source(path)
    if text.lstrip().startswith("{"):
        try:
            g = graph_from_json_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise PreconditionError(f"bad JSON in {path}: {exc}") from exc
    else:
        g = graph_from_text(text)
    if not isinstance(g, FiniteGraph) or g.reflexive:
        raise PreconditionError(
            "this command needs a plain irreflexive graph")
    return g


def _emit(text: str, out_path: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- subcommands -----------------------------------------------------------


def _cmd_reduce_f(args) -> int:
    config = _config_from_args(args)
    g = _load_irreflexive_graph(args.graph)
    pointed = f_reduce(g)
    if config.fmt == "json":
        _emit(json.dumps(graph_to_json_dict(pointed), indent=2), args.output)
    else:
        _emit(graph_to_text(pointed), args.output)
    return 0


def _cmd_emit_presentation(args) -> int:
    config = _config_from_args(args)
    g = _load_irreflexive_graph(args.graph)
    pres = presentation_of(build_C(g).matrix)
    if config.fmt == "json":
        _emit(json.dumps(presentation_to_json_dict(pres), indent=2),
              args.output)
    else:
        _emit(presentation_to_text(pres), args.output)
    return 0


def _cmd_build_coxeter(args) -> int:
    config = _config_from_args(args)
    g = _load_irreflexive_graph(args.graph)
    C = build_C(g).matrix
    if config.fmt == "json":
        _emit(json.dumps(coxeter_to_json_dict(C), indent=2), args.output)
        return 0
    lines = [f"rank {C.n}", "generators: " + " ".join(C.names),
             "finite labels (all unlisted pairs are unbounded):"]
    for i in range(C.n):
        for j in range(i + 1, C.n):
            m = C.label(i, j)
            if m != coxeter.INFINITE:
                lines.append(f"  {C.names[i]} {C.names[j]} {m}")
    _emit("\n".join(lines), args.output)
    return 0


def _cmd_ks_classes(args) -> int:
    config = _config_from_args(args)
    g = _load_irreflexive_graph(args.graph)
    system = build_C(g)
    cap = effective_enum_cap(config)
    classes = classify_s5_classes(system, cap)
    names = system.matrix.names
    if config.fmt == "json":
        payload = {"classes": [
            sorted(sorted(names[i] for i in member) for member in cls.members)
            for cls in classes]}
        _emit(json.dumps(payload, indent=2), args.output)
        return 0
    lines = []
    for v, cls in enumerate(classes):
        parts = sorted("{" + ",".join(sorted(names[i] for i in member)) + "}"
                       for member in cls.members)
        lines.append(f"class {v}: " + " ".join(parts))
    _emit("\n".join(lines), args.output)
    return 0


def _cmd_k_graph(args) -> int:
    config = _config_from_args(args)
    g = _load_irreflexive_graph(args.graph)
    cap = effective_enum_cap(config)
    kg = k_graph(g, config.radius, cap)
    names = build_C(g).matrix.names

    def word_names(word):
        return [names[i] for i in word]

    if config.fmt == "json":
        payload = graph_to_json_dict(kg.graph)
        payload["witnesses"] = {
            f"{u}-{v}": [word_names(wa), word_names(wb)]
            for (u, v), (wa, wb) in sorted(kg.witnesses.items())}
        _emit(json.dumps(payload, indent=2), args.output)
        return 0
    lines = [graph_to_text(kg.graph).rstrip("\n")]
    for (u, v), (wa, wb) in sorted(kg.witnesses.items()):
        lines.append(f"w {u} {v}: " + " ".join(word_names(wa))
                     + " | " + " ".join(word_names(wb)))
    _emit("\n".join(lines), args.output)
    return 0


def _cmd_verify_l4(args) -> int:
    config = _config_from_args(args)
    report = verify_L4_is_S5(effective_enum_cap(config))
    print(f"order {report.order}")
    print(f"nonabelian {report.nonabelian}")
    print(f"even subgroup order {report.even_order}")
    print(f"even subgroup closed {report.even_is_subgroup}")
    print(f"even subgroup simple {report.even_is_simple}")
    return 0


def _cmd_check_theorem(args) -> int:
    config = _config_from_args(args)
    cap = effective_enum_cap(config)
    report = theorem_report(config.max_vertices, config.radius, cap,
                            inject_fault=args.inject_fault)
    print(f"graphs: {report.graph_count}")
    print(f"ordered pairs: {len(report.pair_outcomes)}")
    print(f"epimorphisms: {report.total_epis}")
    failures = [p for p in report.pair_outcomes if not p.ok]
    for p in failures:
        print(f"pair {p.source_index} -> {p.target_index}: {p.message}")
    if failures:
        print("verdict: FAIL")
        return 3
    print("verdict: PASS")
    return 0


def _cmd_acceptance(args) -> int:
    config = _config_from_args(args)
    acc = AcceptanceConfig(radius=config.radius,
                           enum_cap=effective_enum_cap(config))
    known = [num for num, _, _ in CRITERIA]
    numbers = args.criterion or known
    for num in numbers:
        if num not in known:
            raise PreconditionError(f"no criterion {num}; have {known}")
    results = [run_criterion(num, acc) for num in numbers]
    for res in results:
        print(res.line())
    if all(res.passed for res in results):
        return 0
    if any("falsification" in res.detail for res in results if not res.passed):
        return 3
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="epicox",
        description="finite-graph reduction through right-angled-ish "
                    "reflection groups, with verification tooling")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, needs_graph=True):
        if needs_graph:
            p.add_argument("graph",
                           help="graph file (text or JSON), '-' for stdin")
        p.add_argument("-o", "--output", default=None,
                       help="write to this file instead of stdout")
        p.add_argument("--json", action="store_true",
                       help="emit JSON instead of text")

    p = sub.add_parser("reduce-f",
                       help="complement the graph, add loops and a "
                            "dominating base vertex")
    add_io(p)
    p.set_defaults(func=_cmd_reduce_f)

    p = sub.add_parser("emit-presentation",
                       help="print the reflection presentation of the "
                            "block system over a graph")
    add_io(p)
    p.set_defaults(func=_cmd_emit_presentation)

    p = sub.add_parser("build-coxeter",
                       help="print the label matrix of the block system")
    add_io(p)
    p.set_defaults(func=_cmd_build_coxeter)

    p = sub.add_parser("ks-classes",
                       help="conjugacy classes of the block subgroups")
    add_io(p)
    p.add_argument("--enum-cap", type=int, default=None)
    p.set_defaults(func=_cmd_ks_classes)

    p = sub.add_parser("k-graph",
                       help="reconstruct the graph from the block system")
    add_io(p)
    p.add_argument("--radius", type=int, default=None,
                   help="centralizer sweep radius (default 6)")
    p.add_argument("--enum-cap", type=int, default=None)
    p.set_defaults(func=_cmd_k_graph)

    p = sub.add_parser("verify-l4",
                       help="check the one-block group is the expected "
                            "order-120 group with a simple even half")
    p.add_argument("--enum-cap", type=int, default=None)
    p.set_defaults(func=_cmd_verify_l4)

    p = sub.add_parser("check-theorem",
                       help="lift every onto map between small graphs and "
                            "check the round trip")
    p.add_argument("--max-vertices", type=int, default=2)
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--enum-cap", type=int, default=None)
    p.add_argument("--inject-fault", action="store_true",
                   help="corrupt one lifted map to confirm the relator "
                            "check can fail")
    p.set_defaults(func=_cmd_check_theorem)

    p = sub.add_parser("acceptance", help="run the acceptance criteria")
    p.add_argument("--criterion", type=int, action="append", default=None,
                   help="run only this criterion (repeatable)")
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--enum-cap", type=int, default=None)
    p.set_defaults(func=_cmd_acceptance)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except EnumerationCapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 2
    except FalsificationError as exc:
        print(f"claim falsified: {exc}", file=sys.stderr)
        return 3
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Print word-length ball sizes for the block system over a graph.

Useful for eyeballing how fast the centralizer sweep grows with radius
before committing to one.

    python scripts/ball_growth.py --vertices 2 --edges "" --radius 6
    python scripts/ball_growth.py --vertices 2 --edges "0-1" --radius 5
"""

import argparse
import sys
import time

from epicox.construction import build_C
from epicox.coxeter import ball_levels
from epicox.graphs import FiniteGraph


def parse_edges(text: str):
    if not text.strip():
        return []
    out = []
    for part in text.split(","):
        u, v = part.strip().split("-")
        out.append((int(u), int(v)))
    return out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--vertices", type=int, default=2)
    ap.add_argument("--edges", default="", help='e.g. "0-1,1-2"')
    ap.add_argument("--radius", type=int, default=6)
    ap.add_argument("--cap", type=int, default=None,
                    help="abort past this many elements")
    args = ap.parse_args()

    g = FiniteGraph.from_edges(args.vertices, parse_edges(args.edges))
    system = build_C(g)
    print(f"system rank {system.matrix.n} over {args.vertices} vertices")
    start = time.monotonic()
    levels = ball_levels(system.matrix, args.radius, cap=args.cap)
    total = 0
    for r, level in enumerate(levels):
        total += len(level)
        print(f"radius {r:2d}: {len(level):8d} new, {total:8d} total")
    print(f"{time.monotonic() - start:.2f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())

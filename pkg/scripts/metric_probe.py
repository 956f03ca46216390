#!/usr/bin/env python3
"""Probe: does the plain norm/inner-product coloring already determine the
orthogonal group?  Open question; this records outcomes per fixture and
asserts nothing.

Usage: python3 scripts/metric_probe.py [--edge-only | --vertex-only]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from polysym.autgroup import automorphisms  # noqa: E402
from polysym.colorings import Coloring, LabeledGraph  # noqa: E402
from polysym.fixtures import FIXTURES  # noqa: E402
from polysym.oracle import brute_force_group  # noqa: E402
from polysym.reconstruct import build_artifacts  # noqa: E402


def main() -> None:
    parser = argparse.ArgumentParser()
    variant = parser.add_mutually_exclusive_group()
    variant.add_argument("--edge-only", action="store_true")
    variant.add_argument("--vertex-only", action="store_true")
    args = parser.parse_args()

    print(f"{'fixture':20s} {'aut(metric)':>12s} {'orthogonal':>11s}  verdict")
    for name, factory in FIXTURES.items():
        poly = factory()
        art = build_artifacts(poly)
        col = art.met_coloring
        if args.edge_only:
            col = Coloring(vertex=(0,) * poly.n, edge=dict(col.edge))
        elif args.vertex_only:
            col = Coloring(vertex=col.vertex, edge={e: 0 for e in col.edge})
        auts = automorphisms(LabeledGraph(art.graph, col))
        reference = brute_force_group(poly.phi, flavor="orthogonal")
        verdict = "matches" if set(auts.perms) == reference.perm_set else "TOO COARSE"
        print(f"{name:20s} {auts.order:12d} {reference.order:11d}  {verdict}")


if __name__ == "__main__":
    main()

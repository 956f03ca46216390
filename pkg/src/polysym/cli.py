"""Batch front door: analyze polytopes, validate matrix properties, run oracles.

Machine-readable JSON goes to stdout and is byte-for-byte deterministic
for fixed inputs and flags; human chatter (including wall-clock timing)
goes to stderr and only with --verbose.

Exit codes: 0 ok, 1 failed validation property, 2 bad input document,
3 reconstruction violation, 4 search limit exceeded, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .autgroup import automorphisms, uncolored
from .colorings import LabeledGraph, orbit_coloring
from .config import DEFAULT_TOLERANCES
from .errors import (
    LimitExceeded,
    ParseError,
    PolysymError,
    TheoremViolation,
    TooManyCandidates,
    ValidationError,
)
from .geometry import EdgeGraph, load_polytope
from .izmestiev import izmestiev_matrix_fd, load_matrix_dump, verify_properties
from .oracle import Embedding, brute_force_group, embedding_group
from .reconstruct import (
    build_artifacts,
    eigenspace_criterion,
    linear_group,
    orthogonal_group,
)

PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#1170aa", "#fc7d0b",
    "#a3acb9", "#57606c", "#5fa2ce", "#c85200", "#7b848f", "#a3cce9",
    "#ffbc79", "#c8d0d9",
)


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _chatter(args, msg: str) -> None:
    if args.verbose:
        sys.stderr.write(msg + "\n")


def _tolerances(args):
    overrides = {}
    for flag, field in [("eps_geom", "geom_rel"), ("eps_color", "color_rel"),
                        ("eps_kern", "kernel"), ("eps_eig", "eig_rel"),
                        ("eps_match", "match"), ("eps_orth", "orth"),
                        ("fd_step", "fd_step")]:
        value = getattr(args, flag, None)
        if value is not None:
            overrides[field] = value
    return DEFAULT_TOLERANCES.replace(**overrides)


def _load(args, path):
    tol = _tolerances(args)
    poly = load_polytope(path, tol=tol, recenter=args.recenter)
    return poly, tol


def _input_echo(args, path, poly) -> dict:
    return {
        "path": str(path),
        "name": poly.name,
        "dimension": poly.dim,
        "n_vertices": poly.n,
        "recentered": bool(args.recenter),
    }


def _group_report(group, graph, tol) -> dict:
    doc = group.to_json_dict(tol)
    oc = orbit_coloring(graph, group.permutations())
    doc["orbit_coloring"] = oc.to_json_dict()
    return doc


def cmd_analyze(args) -> int:
    reports = []
    for path in args.paths:
        t0 = time.perf_counter()
        poly, tol = _load(args, path)
        art = build_artifacts(poly, tol)
        props = verify_properties(art.matrix, poly, tol).to_json_dict()
        report = {
            "input": _input_echo(args, path, poly),
            "facet_count": art.facets.m,
            "edge_count": len(art.graph.edges),
            "matrix_summary": {
                "spectrum": props["spectrum"],
                "kernel_dim": props["kernel_dim"],
                "property_report": props,
                "dump": art.matrix.to_json_dict(),
            },
            "colorings": {
                "izmestiev": art.izm_coloring.to_json_dict(),
                "metric": art.met_coloring.to_json_dict(),
                "product": art.prod_coloring.to_json_dict(),
            },
            "groups": {},
            "tolerances": tol.as_dict(),
        }
        if args.coloring in ("izmestiev", "both"):
            lin = linear_group(poly, tol, artifacts=art, limit=args.limit)
            report["groups"]["linear"] = _group_report(lin, art.graph, tol)
        if args.coloring in ("product", "both"):
            orth = orthogonal_group(poly, tol, artifacts=art, limit=args.limit)
            report["groups"]["orthogonal"] = _group_report(orth, art.graph, tol)
        reports.append(report)
        _chatter(args, f"{path}: analyzed in {time.perf_counter() - t0:.3f}s, "
                       f"orders { {k: v['order'] for k, v in report['groups'].items()} }")
    _emit(reports[0] if len(reports) == 1 else reports)
    return 0


def cmd_validate(args) -> int:
    poly, tol = _load(args, args.path)
    art = build_artifacts(poly, tol)
    if args.matrix:
        try:
            dump = json.loads(open(args.matrix).read())
            mat = load_matrix_dump(dump, art.graph)
        except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
            raise ParseError(f"bad matrix dump: {exc}") from exc
        source = "dump"
    else:
        mat = art.matrix
        source = "geometric"
    props = verify_properties(mat, poly, tol)
    eig_ok, lam, residual = eigenspace_criterion(mat.entries, poly.phi, tol.eig_rel)
    fd_doc: dict = {"step": tol.fd_step}
    try:
        fd = izmestiev_matrix_fd(poly, tol=tol, graph=art.graph)
        diff = float(np.max(np.abs(fd.entries - mat.entries)))
        fd_doc.update({"max_abs_diff": diff, "ok": diff <= 1e-4})
    except PolysymError as exc:
        fd_doc.update({"ok": False, "error": str(exc)})
    passed = bool(props.passed and eig_ok and fd_doc["ok"])
    _emit({
        "input": _input_echo(args, args.path, poly),
        "matrix_source": source,
        "properties": props.to_json_dict(),
        "eigenspace": {"ok": eig_ok, "eigenvalue": lam, "residual": residual},
        "fd_agreement": fd_doc,
        "passed": passed,
        "tolerances": tol.as_dict(),
    })
    return 0 if passed else 1


def _load_embedding(args):
    try:
        doc = json.loads(open(args.path).read())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read embedding: {exc}") from exc
    try:
        coords = np.asarray(doc["vertices"], dtype=float)
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad embedding document: {exc}") from exc
    edges = tuple((int(i), int(j)) for i, j in doc.get("edges", []))
    graph = EdgeGraph(len(coords), edges)
    return Embedding(graph=graph, coordinates=coords), doc.get("name")


def cmd_oracle(args) -> int:
    tol = _tolerances(args)
    if args.embedding:
        emb, name = _load_embedding(args)
        n = emb.graph.n
        if args.candidates == "graph-auts":
            if not emb.graph.edges:
                sys.stderr.write("oracle: --candidates graph-auts needs an 'edges' key\n")
                return 64
            cands = automorphisms(uncolored(emb.graph), limit=args.limit).perms
        else:
            cands = None
        group = embedding_group(emb, candidates=cands, flavor=args.flavor, tol=tol)
        echo = {"path": args.path, "name": name, "n_vertices": n, "embedding": True}
    else:
        poly, tol = _load(args, args.path)
        if args.candidates == "graph-auts":
            from .geometry import edge_graph, enumerate_facets
            graph = edge_graph(poly, enumerate_facets(poly, tol))
            cands = automorphisms(uncolored(graph), limit=args.limit).perms
        else:
            cands = None
        group = brute_force_group(poly.phi, candidates=cands, flavor=args.flavor, tol=tol)
        echo = {**_input_echo(args, args.path, poly), "embedding": False}
    _emit({
        "input": echo,
        "flavor": args.flavor,
        "candidates": args.candidates,
        "group": group.to_json_dict(tol),
        "tolerances": tol.as_dict(),
    })
    return 0


DOT_COLORINGS = ("metric", "izmestiev", "product", "orbit-linear", "orbit-orthogonal")


def cmd_export_dot(args) -> int:
    if args.coloring not in DOT_COLORINGS:
        sys.stderr.write(
            f"export-dot: unknown coloring {args.coloring!r}; "
            f"choose from {', '.join(DOT_COLORINGS)}\n")
        return 64
    poly, tol = _load(args, args.path)
    art = build_artifacts(poly, tol)
    if args.coloring == "metric":
        col = art.met_coloring
    elif args.coloring == "izmestiev":
        col = art.izm_coloring
    elif args.coloring == "product":
        col = art.prod_coloring
    else:
        flavor = args.coloring.split("-")[1]
        grp = (linear_group if flavor == "linear" else orthogonal_group)(
            poly, tol, artifacts=art, limit=args.limit)
        col = orbit_coloring(art.graph, grp.permutations())
    lines = [f"graph {poly.name or 'polytope'} {{", "  node [style=filled];"]
    for i in range(poly.n):
        lines.append(f'  v{i} [fillcolor="{PALETTE[col.vertex[i] % len(PALETTE)]}"];')
    for (i, j) in sorted(col.edge):
        c = PALETTE[col.edge[(i, j)] % len(PALETTE)]
        lines.append(f'  v{i} -- v{j} [color="{c}", penwidth=2];')
    lines.append("}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_experiment_metric(args) -> int:
    """Probe whether the isometry-invariant coloring alone already suffices.

    Compares the metric-colored edge-graph's automorphisms against the
    brute-force orthogonal group.  Records the outcome; asserts nothing.
    """
    poly, tol = _load(args, args.path)
    art = build_artifacts(poly, tol)
    col = art.met_coloring
    if args.edge_only:
        col = col.__class__(vertex=(0,) * poly.n, edge=dict(col.edge))
    elif args.vertex_only:
        col = col.__class__(vertex=col.vertex, edge={e: 0 for e in col.edge})
    auts = automorphisms(LabeledGraph(art.graph, col), limit=args.limit)
    if poly.n <= 9:
        reference = brute_force_group(poly.phi, flavor="orthogonal", tol=tol)
    else:
        cands = automorphisms(uncolored(art.graph), limit=args.limit).perms
        reference = brute_force_group(poly.phi, candidates=cands,
                                      flavor="orthogonal", tol=tol)
    extra = sorted(set(auts.perms) - reference.perm_set)
    _emit({
        "input": _input_echo(args, args.path, poly),
        "variant": ("edge-only" if args.edge_only
                    else "vertex-only" if args.vertex_only else "full"),
        "metric_aut_order": auts.order,
        "orthogonal_order": reference.order,
        "matches_orthogonal_group": not extra and auts.order == reference.order,
        "extra_automorphisms": [list(p) for p in extra],
        "tolerances": tol.as_dict(),
    })
    return 0


def _add_common(sub) -> None:
    sub.add_argument("--recenter", action="store_true",
                     help="translate vertices by minus their centroid before validating")
    sub.add_argument("--verbose", action="store_true",
                     help="human summary (and timing) on stderr")
    sub.add_argument("--limit", type=int, default=10 ** 6,
                     help="maximum group size for automorphism search")
    for flag in ("eps-geom", "eps-color", "eps-kern", "eps-eig",
                 "eps-match", "eps-orth", "fd-step"):
        sub.add_argument(f"--{flag}", type=float, default=None,
                         dest=flag.replace("-", "_"), help=f"override {flag} tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polysym",
        description="Symmetry groups of convex polytopes from vertex coordinates.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("analyze", help="full pipeline: groups, colorings, matrix report")
    p.add_argument("paths", nargs="+")
    p.add_argument("--coloring", choices=["izmestiev", "product", "both"], default="both",
                   help="restrict which group pipeline runs")
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = subs.add_parser("validate", help="matrix property suite for one polytope")
    p.add_argument("path")
    p.add_argument("--matrix", default=None,
                   help="verify a JSON matrix dump instead of the computed matrix")
    _add_common(p)
    p.set_defaults(func=cmd_validate)

    p = subs.add_parser("oracle", help="brute-force group, no colorings involved")
    p.add_argument("path")
    p.add_argument("--flavor", choices=["linear", "orthogonal"], default="linear")
    p.add_argument("--candidates", choices=["sym", "graph-auts"], default="sym")
    p.add_argument("--embedding", action="store_true",
                   help="treat input as a graph embedding; skip polytope validation")
    _add_common(p)
    p.set_defaults(func=cmd_oracle)

    p = subs.add_parser("export-dot", help="DOT drawing of a colored edge-graph")
    p.add_argument("path")
    p.add_argument("--coloring", default="izmestiev",
                   help=f"one of: {', '.join(DOT_COLORINGS)}")
    _add_common(p)
    p.set_defaults(func=cmd_export_dot)

    p = subs.add_parser("experiment-metric",
                        help="compare metric-coloring automorphisms with the orthogonal group")
    p.add_argument("path")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--edge-only", action="store_true")
    group.add_argument("--vertex-only", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_experiment_metric)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except TheoremViolation as exc:
        sys.stderr.write(f"reconstruction violation: {exc}\n")
        if exc.diagnostic:
            sys.stderr.write(json.dumps(exc.diagnostic, sort_keys=True) + "\n")
        return 3
    except (LimitExceeded, TooManyCandidates) as exc:
        sys.stderr.write(f"limit exceeded: {exc}\n")
        return 4
    except PolysymError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

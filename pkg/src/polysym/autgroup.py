"""Complete automorphism groups of vertex+edge-colored graphs.

Deterministic individualization-refinement backtracking, sized for desk
scale: every group element is materialized (downstream reconstruction
needs each one), not just generators.

Permutation conventions live here.  A permutation is an image tuple p with
p[i] = sigma(i).  Its matrix Pi has a 1 in row sigma(j), column j, so that
column j of phi @ Pi is vertex sigma(j); on a coordinate vector this means
(Pi v)[i] = v[sigma^-1(i)].  Composition (p * q)(i) = p[q(i)] matches
Pi_p @ Pi_q = Pi_{p*q}.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .colorings import Coloring, LabeledGraph
from .errors import LimitExceeded, NotAGroup
from .geometry import EdgeGraph

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def invert(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_matrix(p: Perm) -> np.ndarray:
    n = len(p)
    mat = np.zeros((n, n))
    mat[list(p), range(n)] = 1.0
    return mat


class PermutationSet:
    """A sorted, explicitly verified permutation group."""

    def __init__(self, perms, verify: bool = True):
        perms = sorted({tuple(int(x) for x in p) for p in perms})
        if not perms:
            raise NotAGroup("empty permutation set")
        self.n = len(perms[0])
        if any(len(p) != self.n or sorted(p) != list(range(self.n)) for p in perms):
            raise NotAGroup("element is not a permutation of 0..n-1")
        self.perms = tuple(perms)
        if verify:
            self._verify_group()

    @property
    def order(self) -> int:
        return len(self.perms)

    def __iter__(self):
        return iter(self.perms)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._key_set()

    def __eq__(self, other) -> bool:
        return isinstance(other, PermutationSet) and self.perms == other.perms

    def __hash__(self):
        return hash(self.perms)

    def _key_set(self):
        if not hasattr(self, "_keys"):
            self._keys = set(self.perms)
        return self._keys

    def _verify_group(self):
        n, keys = self.n, self._key_set()
        if identity_perm(n) not in keys:
            raise NotAGroup("identity missing")
        arr = np.array(self.perms, dtype=np.int64)
        inverses = np.argsort(arr, axis=1)
        if n <= 15:
            # pack each permutation into one int64 for vectorized membership
            powers = (n ** np.arange(n)).astype(np.int64)
            codes = np.sort(arr @ powers)
            if not np.all(np.isin(inverses @ powers, codes)):
                raise NotAGroup("inverse missing")
            for row in arr:
                if not np.all(np.isin(row[arr] @ powers, codes)):
                    raise NotAGroup("set not closed under composition")
        else:
            for row in inverses:
                if tuple(row.tolist()) not in keys:
                    raise NotAGroup("inverse missing")
            for p in self.perms:
                for q in self.perms:
                    if compose(p, q) not in keys:
                        raise NotAGroup("set not closed under composition")


def _neighbor_table(lg: LabeledGraph):
    nbr = [[] for _ in range(lg.graph.n)]
    for (i, j), c in lg.coloring.edge.items():
        nbr[i].append((j, c))
        nbr[j].append((i, c))
    return [tuple(sorted(x)) for x in nbr]


def _refine(n, neighbors, colors: tuple) -> tuple:
    """Stable 1-WL refinement with edge colors, canonically numbered.

    New class ids sort by (old class, neighborhood signature), so the
    output refines the input and identical inputs give identical outputs.
    """
    while True:
        sigs = []
        for v in range(n):
            nb = tuple(sorted((ec, colors[u]) for u, ec in neighbors[v]))
            sigs.append((colors[v], nb))
        ranks = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = tuple(ranks[s] for s in sigs)
        if new == colors:
            return colors
        colors = new


def color_refinement(lg: LabeledGraph) -> tuple:
    """Stable vertex partition of the colored graph (dense class ids)."""
    return _refine(lg.graph.n, _neighbor_table(lg), lg.coloring.vertex)


def _preserves(lg: LabeledGraph, sigma: Perm) -> bool:
    col = lg.coloring
    for i in range(lg.graph.n):
        if col.vertex[sigma[i]] != col.vertex[i]:
            return False
    edges = col.edge
    for (i, j), c in edges.items():
        img = (sigma[i], sigma[j]) if sigma[i] < sigma[j] else (sigma[j], sigma[i])
        if edges.get(img) != c:
            return False
    return True


def automorphisms(lg: LabeledGraph, limit: int = 10 ** 6, max_n: int = 64) -> PermutationSet:
    """All color-preserving automorphisms, verified member by member.

    Backtracking over (source, target) individualization pairs, pruned by
    refinement certificates.  Target cell: the smallest non-singleton
    class, lowest class id first; branches explored in ascending vertex
    order, output sorted, so results are deterministic.
    """
    n = lg.graph.n
    if n > max_n:
        raise LimitExceeded(f"graph has {n} > {max_n} vertices")
    neighbors = _neighbor_table(lg)
    base = _refine(n, neighbors, lg.coloring.vertex)
    found: list[Perm] = []

    def cert(colors):
        return tuple(sorted(Counter(colors).items()))

    def rec(src: tuple, tgt: tuple):
        sizes = Counter(src)
        splittable = [c for c, s in sizes.items() if s > 1]
        if not splittable:
            where = {c: v for v, c in enumerate(tgt)}
            sigma = tuple(where[src[v]] for v in range(n))
            if _preserves(lg, sigma):
                found.append(sigma)
                if len(found) > limit:
                    raise LimitExceeded(f"group larger than limit {limit}")
            return
        cls = min(splittable, key=lambda c: (sizes[c], c))
        v = min(i for i in range(n) if src[i] == cls)
        for w in range(n):
            if tgt[w] != cls:
                continue
            s2 = list(src)
            s2[v] = n
            t2 = list(tgt)
            t2[w] = n
            s2 = _refine(n, neighbors, tuple(s2))
            t2 = _refine(n, neighbors, tuple(t2))
            if cert(s2) == cert(t2):
                rec(s2, t2)

    rec(base, base)
    return PermutationSet(found, verify=True)


def orbits(group, graph: EdgeGraph):
    """Vertex orbits and edge orbits of a permutation action, by min element."""
    perms = [tuple(int(x) for x in p) for p in group]
    vorbits = _orbit_partition(list(range(graph.n)), lambda x, p: p[x], perms)
    edges = sorted(graph.edge_set)
    eorbits = _orbit_partition(
        edges, lambda e, p: tuple(sorted((p[e[0]], p[e[1]]))), perms)
    return vorbits, eorbits


def _orbit_partition(items, act, perms):
    out = []
    seen = set()
    for x in items:
        if x in seen:
            continue
        orbit = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for p in perms:
                z = act(y, p)
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        seen |= orbit
        out.append(tuple(sorted(orbit)))
    return tuple(out)


def uncolored(graph: EdgeGraph) -> LabeledGraph:
    """The graph with a single vertex color and a single edge color."""
    col = Coloring(vertex=(0,) * graph.n, edge={e: 0 for e in graph.edges})
    return LabeledGraph(graph, col)

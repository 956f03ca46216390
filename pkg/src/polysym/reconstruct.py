"""Turn colored-graph automorphisms into explicit geometric symmetries.

Each graph automorphism sigma lifts to the linear map phi @ Pi_sigma @
pinv(phi); for the colorings built here that map provably permutes the
vertex set, so acceptance failures are errors (TheoremViolation), never
silent filtering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .autgroup import automorphisms, compose
from .colorings import (
    Coloring,
    LabeledGraph,
    izmestiev_coloring,
    metric_coloring,
    product_coloring,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import NotAGroup, RankDeficient, TheoremViolation
from .geometry import EdgeGraph, FacetSystem, Polytope, edge_graph, enumerate_facets
from .izmestiev import IzmestievMatrix, izmestiev_matrix


@dataclass(frozen=True, eq=False)
class MatrixGroup:
    """Permutations of the vertex set paired with the linear maps realizing them."""

    pairs: tuple          # ((perm, d x d ndarray), ...) sorted by perm
    flavor: str           # "linear" | "orthogonal"

    @property
    def order(self) -> int:
        return len(self.pairs)

    @property
    def perm_set(self) -> frozenset:
        return frozenset(p for p, _ in self.pairs)

    def permutations(self) -> tuple:
        return tuple(p for p, _ in self.pairs)

    def matrix_for(self, perm) -> np.ndarray:
        perm = tuple(perm)
        for p, t in self.pairs:
            if p == perm:
                return t
        raise KeyError(f"permutation {perm} not in group")

    def to_json_dict(self, tol: Tolerances = DEFAULT_TOLERANCES) -> dict:
        return {
            "flavor": self.flavor,
            "order": self.order,
            "tolerances": {"match": tol.match, "orth": tol.orth},
            "members": [
                {
                    "perm": list(p),
                    "matrix": t.tolist(),
                    "orthogonal": bool(check_orthogonal(t, tol.orth)),
                }
                for p, t in self.pairs
            ],
        }


def pseudo_inverse(phi: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Right pseudo-inverse phi.T @ (phi @ phi.T)^-1 with phi @ pinv = I."""
    phi = np.asarray(phi, dtype=float)
    d = phi.shape[0]
    gram = phi @ phi.T
    if np.linalg.matrix_rank(gram, tol=1e-12 * max(1.0, float(np.abs(gram).max()))) < d:
        raise RankDeficient("vertex matrix does not have full row rank")
    pinv = np.linalg.solve(gram, phi).T
    if np.max(np.abs(phi @ pinv - np.eye(d))) > tol.pinv:
        raise RankDeficient("pseudo-inverse residual exceeds tolerance")
    return pinv


def linear_map_from_perm(phi: np.ndarray, perm, pinv: np.ndarray | None = None) -> np.ndarray:
    """The candidate map sending vertex j to vertex perm[j] on the whole space."""
    perm = [int(x) for x in perm]
    if pinv is None:
        pinv = pseudo_inverse(phi)
    return phi[:, perm] @ pinv


def check_realizes(t: np.ndarray, perm, phi: np.ndarray, eps: float) -> bool:
    """True iff t maps every vertex j onto vertex perm[j], relatively to its norm."""
    perm = [int(x) for x in perm]
    target = phi[:, perm]
    err = np.linalg.norm(t @ phi - target, axis=0)
    norms = np.linalg.norm(target, axis=0)
    return bool(np.all(err <= eps * norms))


def check_orthogonal(t: np.ndarray, eps: float) -> bool:
    return bool(np.max(np.abs(t.T @ t - np.eye(t.shape[0]))) <= eps)


def eigenspace_criterion(a: np.ndarray, phi: np.ndarray, eps: float = 1e-8):
    """Is the row space of phi an eigenspace of the symmetric matrix a?

    Fits a single scalar lambda to a @ phi.T = lambda * phi.T by least
    squares and reports (ok, lambda, residual); ok means the residual is
    below eps relative to the scale of a @ phi.T.
    """
    a = np.asarray(a, dtype=float)
    b = a @ phi.T
    denom = float(np.sum(phi.T * phi.T))
    lam = float(np.sum(b * phi.T)) / denom
    residual = float(np.max(np.abs(b - lam * phi.T)))
    ref = max(1.0, float(np.max(np.abs(a))) * float(np.max(np.abs(phi))))
    return residual <= eps * ref, lam, residual


@dataclass(frozen=True, eq=False)
class PipelineArtifacts:
    """Everything the symmetry pipelines derive from one polytope."""

    poly: Polytope
    facets: FacetSystem
    graph: EdgeGraph
    matrix: IzmestievMatrix
    izm_coloring: Coloring
    met_coloring: Coloring
    prod_coloring: Coloring


def build_artifacts(poly: Polytope, tol: Tolerances = DEFAULT_TOLERANCES) -> PipelineArtifacts:
    facets = enumerate_facets(poly, tol)
    graph = edge_graph(poly, facets)
    matrix = izmestiev_matrix(poly, facets, graph, tol)
    izm = izmestiev_coloring(matrix, tol)
    met = metric_coloring(poly, graph, tol)
    return PipelineArtifacts(
        poly=poly, facets=facets, graph=graph, matrix=matrix,
        izm_coloring=izm, met_coloring=met,
        prod_coloring=product_coloring(izm, met),
    )


def _realize_group(poly: Polytope, graph: EdgeGraph, coloring: Coloring, flavor: str,
                   tol: Tolerances, limit: int) -> MatrixGroup:
    lg = LabeledGraph(graph, coloring)
    try:
        perms = automorphisms(lg, limit=limit)
    except NotAGroup as exc:
        raise TheoremViolation(f"automorphism search returned a non-group: {exc}") from exc
    phi = poly.phi
    pinv = pseudo_inverse(phi, tol)
    pairs = []
    for sigma in perms:
        t = linear_map_from_perm(phi, sigma, pinv)
        if not check_realizes(t, sigma, phi, tol.match):
            raise TheoremViolation(
                f"{flavor} reconstruction failed: automorphism {sigma} is not realized "
                "by its reconstructed map",
                diagnostic={"perm": sigma, "matrix": t.tolist(),
                            "polytope": poly.name, "tolerance": tol.match})
        if flavor == "orthogonal" and not check_orthogonal(t, tol.orth):
            raise TheoremViolation(
                f"orthogonal reconstruction failed: map for {sigma} is not orthogonal",
                diagnostic={"perm": sigma, "matrix": t.tolist(),
                            "polytope": poly.name, "tolerance": tol.orth})
        pairs.append((sigma, t))
    return MatrixGroup(pairs=tuple(pairs), flavor=flavor)


def linear_group(poly: Polytope, tol: Tolerances = DEFAULT_TOLERANCES,
                 artifacts: PipelineArtifacts | None = None,
                 limit: int = 10 ** 6) -> MatrixGroup:
    """All invertible linear maps fixing the polytope, via the spectral coloring."""
    art = artifacts or build_artifacts(poly, tol)
    return _realize_group(poly, art.graph, art.izm_coloring, "linear", tol, limit)


def orthogonal_group(poly: Polytope, tol: Tolerances = DEFAULT_TOLERANCES,
                     artifacts: PipelineArtifacts | None = None,
                     limit: int = 10 ** 6) -> MatrixGroup:
    """All orthogonal maps fixing the polytope, via the product coloring."""
    art = artifacts or build_artifacts(poly, tol)
    return _realize_group(poly, art.graph, art.prod_coloring, "orthogonal", tol, limit)


def verify_homomorphism(group: MatrixGroup, eps: float) -> bool:
    """Check t(p) @ t(q) == t(p*q) for all pairs; the perm map is injective."""
    lookup = {p: t for p, t in group.pairs}
    for p, tp in group.pairs:
        for q, tq in group.pairs:
            r = compose(p, q)
            if r not in lookup:
                return False
            if np.max(np.abs(tp @ tq - lookup[r])) > eps:
                return False
    return True

"""Exception hierarchy shared across the package."""


class PolysymError(Exception):
    """Base class for all errors raised by polysym."""


class ParseError(PolysymError):
    """Input document is malformed or structurally inconsistent."""


class ValidationError(PolysymError):
    """Vertex data violates a polytope invariant (names the violated one)."""


class DegenerateGeometry(PolysymError):
    """Geometry is inconsistent with a valid full-dimensional polytope."""


class DimensionMismatch(PolysymError):
    """A derived face does not have the expected affine dimension."""


class Unbounded(PolysymError):
    """Shifted-facet dual region left the trust region (no bounded vertex set)."""


class SingularAngle(PolysymError):
    """Two adjacent vertices are collinear with the origin."""


class KernelResidual(PolysymError):
    """The vertex-matrix kernel condition failed beyond tolerance."""


class DomainMismatch(PolysymError):
    """Two colorings live on different graphs."""


class NotAGroup(PolysymError):
    """A permutation set fails the closure/identity/inverse checks."""


class LimitExceeded(PolysymError):
    """Automorphism search exceeded the configured size bound."""


class TooManyCandidates(PolysymError):
    """Brute-force candidate stream would be too large to enumerate."""


class RankDeficient(PolysymError):
    """Vertex matrix does not have full row rank."""


class TheoremViolation(PolysymError):
    """A colored-graph automorphism failed to produce a geometric symmetry.

    This never happens for correct input; it signals a quantization,
    tolerance, or geometry bug and carries a diagnostic payload.
    """

    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}


class NumericalInstability(PolysymError):
    """A step-halving consistency check failed (combinatorial flip suspected)."""

"""Exception types raised by the package.

Every error raised on bad input or a violated precondition derives from
KnotmorseError, so callers can catch the whole family at once.  AssertionError
is reserved for internal cross-checks that should be unreachable from valid
input (the CLI maps it to the invariant-violation exit code).
"""

from __future__ import annotations

__all__ = [
    "KnotmorseError",
    "MalformedSyntax",
    "ArcMultiplicityError",
    "EmptyDiagram",
    "NonPlanarCode",
    "ColouringConflict",
    "NotAcyclic",
    "NotAdmissible",
    "InvalidForest",
    "NotSpanning",
    "NotPerfectAdmissible",
    "NotALeaf",
    "LeafOfAmbient",
    "ResourceLimit",
]


class KnotmorseError(Exception):
    """Base class for all package errors."""


class MalformedSyntax(KnotmorseError):
    """PD text does not consist of well-formed X(a,b,c,d) crossings."""


class ArcMultiplicityError(KnotmorseError):
    """Some arc label does not occur exactly twice in the code."""


class EmptyDiagram(KnotmorseError):
    """The code contains no crossings."""


class NonPlanarCode(KnotmorseError):
    """Face tracing does not close up into a sphere (Euler check fails)."""


class ColouringConflict(KnotmorseError):
    """Chequerboard 2-colouring of the faces is inconsistent."""


class NotAcyclic(KnotmorseError):
    """The matching supports a monochromatic loop."""


class NotAdmissible(KnotmorseError):
    """The state leaves no unmatched region of some colour."""


class InvalidForest(KnotmorseError):
    """Edge/root data does not describe an orthogonal rooted forest pair."""


class NotSpanning(KnotmorseError):
    """The given edge set is not a spanning tree of its colour graph."""


class NotPerfectAdmissible(KnotmorseError):
    """The operation needs a perfect admissible state and was given less."""


class NotALeaf(KnotmorseError):
    """The designated edge is not a leaf of the subgraph."""


class LeafOfAmbient(KnotmorseError):
    """No admissible target position exists in the ambient rotation."""


class ResourceLimit(KnotmorseError):
    """A configured size cap was exceeded before the computation started."""

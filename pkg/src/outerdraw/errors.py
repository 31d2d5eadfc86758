"""Exception hierarchy shared by every module of the package.

Each exception carries an ``exit_code`` used by the command line front end.
"""

from __future__ import annotations


class OuterdrawError(Exception):
    """Base class of all errors raised by the package."""

    exit_code = 1


class InvalidInput(OuterdrawError):
    """Malformed input such as loops, duplicate edges or bad vertex ids."""

    exit_code = 1


# graph_core
class NotOuterplanar(OuterdrawError):
    exit_code = 2


class NotBiconnected(OuterdrawError):
    exit_code = 2


class EmptyOrTrivial(OuterdrawError):
    exit_code = 1


class NotBipartite(OuterdrawError):
    exit_code = 2


# decomposition
class EdgeNotOnOuterFace(OuterdrawError):
    exit_code = 1


# layout
class AngleTooLarge(OuterdrawError):
    exit_code = 4


class InfeasiblePlacement(OuterdrawError):
    """Placement failed; ``fragments`` keeps the chain drawings finished before the failure."""

    exit_code = 4

    def __init__(self, message: str = "", fragments: list | None = None) -> None:
        super().__init__(message)
        self.fragments = list(fragments or [])


class WedgeTooNarrow(OuterdrawError):
    exit_code = 4


class NotQuadrangulated(OuterdrawError):
    exit_code = 1


class PlacementDegenerate(OuterdrawError):
    exit_code = 4


# generators
class SizeLimit(OuterdrawError):
    exit_code = 1


class NonPositiveDelta(OuterdrawError):
    exit_code = 1


class EpsilonOutOfRange(OuterdrawError):
    exit_code = 1


# analysis
class DegenerateTriangle(OuterdrawError):
    exit_code = 3


class EmbeddingViolated(OuterdrawError):
    exit_code = 3


class NotNestedFamily(OuterdrawError):
    exit_code = 1


# validation
class ZeroLengthEdge(OuterdrawError):
    exit_code = 3


class NotFanPendant(OuterdrawError):
    exit_code = 1

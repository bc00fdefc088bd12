"""Exception taxonomy for the repind toolkit.

Every error raised on purpose by this package derives from RepindError so
callers (and the CLI) can tell validation failures apart from genuine bugs.
"""

from __future__ import annotations


class RepindError(Exception):
    """Base class for all toolkit errors."""


# -- graph construction and serialization ----------------------------------

class DuplicateNode(RepindError):
    """A (type, label) pair was inserted twice into one graph."""


class InvalidEdge(RepindError):
    """Self-loop or an edge endpoint that does not exist."""


class NodeNotFound(RepindError):
    """A node id or (type, label) reference that resolves to nothing."""


class ParseError(RepindError):
    """Malformed TSV input. Carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


# -- transformations --------------------------------------------------------

class TransformError(RepindError):
    """Base class for rewrite precondition failures."""


class NotInvertible(TransformError):
    """Input graph violates the forward rewrite's invertibility precondition."""


class MalformedStar(TransformError):
    """A star node without exactly one film, one actor and one character."""


class MalformedGroup(TransformError):
    """A group node without exactly one hub and at least one leaf."""


class AmbiguousMembership(TransformError):
    """A member node with other than exactly one anchor of a required type."""


class NoEquivalentMetaPath(TransformError):
    """The meta-path cannot be rewritten under the given transformation."""


# -- similarity -------------------------------------------------------------

class UnknownType(RepindError):
    """A node type named in a meta-path or binding has no nodes in the graph."""


class GraphTooLarge(RepindError):
    """Graph exceeds the configured size cap of an all-pairs computation."""


class AsymmetricMetaPath(RepindError):
    """PathSim requires the meta-path to equal its own reverse."""


class TypeMismatch(RepindError):
    """Query node type does not match the meta-path's endpoint type."""


# -- metrics ----------------------------------------------------------------

class MismatchedGroundSets(RepindError):
    """Full-list Kendall comparison over lists with different element sets."""


class LengthMismatch(RepindError):
    """Top-k Kendall comparison over lists of different lengths."""


# -- harness ----------------------------------------------------------------

class ConfigError(RepindError):
    """Experiment configuration failed validation."""

"""Input validation helpers shared across modules."""

from __future__ import annotations

from typing import Sequence

from .exceptions import NodeNotFound
from .graph import TypedGraph


def check_in_range(name: str, value: float, low: float, high: float,
                   inclusive: bool = True) -> None:
    """Raise ValueError unless low < value < high (or <= with inclusive)."""
    ok = (low <= value <= high) if inclusive else (low < value < high)
    if not ok:
        op = "<=" if inclusive else "<"
        raise ValueError(f"{name} must satisfy {low} {op} value {op} {high}, got {value}")


def check_positive_int(name: str, value: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


def parse_metapath(mp) -> tuple[str, ...]:
    """Normalize a meta-path to a tuple of type names.

    Accepts a sequence of type strings, a comma-separated string
    ("A,P,C,P,A"), or a compact string of single-character types ("APCPA").
    """
    if isinstance(mp, str):
        steps = tuple(mp.split(",")) if "," in mp else tuple(mp)
    elif isinstance(mp, Sequence):
        steps = tuple(mp)
    else:
        raise ValueError(f"cannot interpret meta-path {mp!r}")
    if len(steps) < 2:
        raise ValueError(f"meta-path needs at least 2 types, got {steps!r}")
    for t in steps:
        if not isinstance(t, str) or not t:
            raise ValueError(f"meta-path step {t!r} is not a type name")
    return steps


def format_metapath(steps: Sequence[str]) -> str:
    """Compact form when every type is a single character, else comma form."""
    if all(len(t) == 1 for t in steps):
        return "".join(steps)
    return ",".join(steps)


def resolve_node(g: TypedGraph, ref) -> int:
    """Resolve a node reference: an id, a (type, label) pair, or "type:label"."""
    if isinstance(ref, int) and not isinstance(ref, bool):
        g.node(ref)
        return ref
    if isinstance(ref, str):
        ntype, sep, label = ref.partition(":")
        if not sep:
            raise NodeNotFound(f"node reference {ref!r} is not of the form type:label")
        return g.require(ntype, label)
    if isinstance(ref, tuple) and len(ref) == 2:
        return g.require(ref[0], ref[1])
    raise NodeNotFound(f"cannot interpret node reference {ref!r}")

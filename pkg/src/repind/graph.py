"""Typed, labeled, undirected simple graphs with a canonical TSV form.

A node is identified externally by its (type, label) pair, which must be
unique within a graph, and internally by a dense integer id assigned in
insertion order. Self-loops are rejected and re-adding an existing edge is a
no-op, so the edge set is always a set of unordered pairs. All neighbor and
per-type queries return label-sorted results: every traversal of a given
graph is deterministic regardless of insertion order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterator

from .exceptions import DuplicateNode, InvalidEdge, NodeNotFound, ParseError

# Characters that would break the line-oriented TSV format.
_BAD_IN_LABEL = ("\t", "\n", "\r")
_BAD_IN_TYPE = ("\t", "\n", "\r", ":")


@dataclass(frozen=True)
class Node:
    """A graph node: dense integer id plus the (type, label) identity."""

    id: int
    ntype: str
    label: str

    @property
    def key(self) -> tuple[str, str]:
        """The (type, label) pair that identifies this node across graphs."""
        return (self.ntype, self.label)


class TypedGraph:
    """Undirected simple graph whose nodes carry a type and a unique label.

    Construction is single-writer; once built, the graph is treated as
    immutable and may be shared freely across threads for read-only queries.
    """

    def __init__(self) -> None:
        self._nodes: list[Node] = []
        self._by_key: dict[tuple[str, str], int] = {}
        self._adj: list[set[int]] = []
        self._n_edges = 0

    # -- construction --------------------------------------------------

    def add_node(self, ntype: str, label: str) -> int:
        """Insert a node and return its id.

        Raises:
            DuplicateNode: if (ntype, label) is already present.
            ValueError: if the type or label is empty or contains characters
                that the TSV serialization cannot represent.
        """
        if not ntype or any(ch in ntype for ch in _BAD_IN_TYPE):
            raise ValueError(f"invalid node type {ntype!r}")
        if not label or any(ch in label for ch in _BAD_IN_LABEL):
            raise ValueError(f"invalid node label {label!r}")
        key = (ntype, label)
        if key in self._by_key:
            raise DuplicateNode(f"node {ntype}:{label} already present")
        nid = len(self._nodes)
        self._nodes.append(Node(nid, ntype, label))
        self._by_key[key] = nid
        self._adj.append(set())
        return nid

    def add_edge(self, u: int, v: int) -> None:
        """Insert the unordered edge {u, v}. Re-adding is a no-op.

        Raises:
            InvalidEdge: on a self-loop or a missing endpoint.
        """
        if not (0 <= u < len(self._nodes)) or not (0 <= v < len(self._nodes)):
            raise InvalidEdge(f"edge ({u}, {v}) references a missing node")
        if u == v:
            raise InvalidEdge(f"self-loop on node {self._fmt(u)}")
        if v not in self._adj[u]:
            self._adj[u].add(v)
            self._adj[v].add(u)
            self._n_edges += 1

    def ensure_node(self, ntype: str, label: str) -> int:
        """Return the id for (ntype, label), inserting the node if absent."""
        nid = self._by_key.get((ntype, label))
        return nid if nid is not None else self.add_node(ntype, label)

    # -- lookup ---------------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return len(self._nodes)

    @property
    def n_edges(self) -> int:
        return self._n_edges

    def node(self, nid: int) -> Node:
        if not (0 <= nid < len(self._nodes)):
            raise NodeNotFound(f"no node with id {nid}")
        return self._nodes[nid]

    def nodes(self) -> Iterator[Node]:
        """All nodes in id (insertion) order."""
        return iter(self._nodes)

    def find(self, ntype: str, label: str) -> int | None:
        """Id for (ntype, label), or None."""
        return self._by_key.get((ntype, label))

    def require(self, ntype: str, label: str) -> int:
        """Id for (ntype, label); raises NodeNotFound if absent."""
        nid = self._by_key.get((ntype, label))
        if nid is None:
            raise NodeNotFound(f"no node {ntype}:{label}")
        return nid

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < len(self._nodes) and v in self._adj[u]

    def degree(self, nid: int) -> int:
        self.node(nid)
        return len(self._adj[nid])

    def neighbors(self, nid: int, type_filter: str | None = None) -> list[int]:
        """Neighbor ids in label-ascending order, optionally one type only."""
        self.node(nid)
        out = [
            v for v in self._adj[nid]
            if type_filter is None or self._nodes[v].ntype == type_filter
        ]
        out.sort(key=self._sort_key)
        return out

    def nodes_of_type(self, ntype: str) -> list[int]:
        """Ids of all nodes of one type, label-sorted."""
        out = [n.id for n in self._nodes if n.ntype == ntype]
        out.sort(key=self._sort_key)
        return out

    def types(self) -> list[str]:
        """Sorted list of the node types present."""
        return sorted({n.ntype for n in self._nodes})

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) id pairs with u < v, in id order."""
        for u in range(len(self._nodes)):
            for v in self._adj[u]:
                if u < v:
                    yield (u, v)

    def copy(self) -> "TypedGraph":
        g = TypedGraph()
        for n in self._nodes:
            g.add_node(n.ntype, n.label)
        for u, v in self.edges():
            g.add_edge(u, v)
        return g

    def __repr__(self) -> str:
        return f"TypedGraph(nodes={self.n_nodes}, edges={self.n_edges})"

    # -- helpers ---------------------------------------------------------

    def _sort_key(self, nid: int):
        n = self._nodes[nid]
        return (n.label, n.ntype)

    def _fmt(self, nid: int) -> str:
        n = self._nodes[nid]
        return f"{n.ntype}:{n.label}"


def graph_equal(g1: TypedGraph, g2: TypedGraph) -> bool:
    """True iff the two graphs hold identical information.

    Nodes are compared by (type, label) and edges by their endpoint keys;
    internal ids and insertion order are irrelevant.
    """
    keys1 = {n.key for n in g1.nodes()}
    keys2 = {n.key for n in g2.nodes()}
    if keys1 != keys2:
        return False
    return _edge_keys(g1) == _edge_keys(g2)


def _edge_keys(g: TypedGraph) -> set[tuple[tuple[str, str], tuple[str, str]]]:
    out = set()
    for u, v in g.edges():
        a, b = g.node(u).key, g.node(v).key
        out.add((a, b) if a <= b else (b, a))
    return out


# -- TSV serialization -------------------------------------------------------
#
# One record per line, UTF-8:
#     N<TAB><type><TAB><label>            node declaration
#     E<TAB><t1>:<label1><TAB><t2>:<label2>   edge declaration
#     # ...                               comment
# Canonical save order: all N lines sorted by (type, label), then all E lines
# sorted by endpoint keys with the smaller endpoint first. Loading requires
# nodes to be declared before any edge references them.


def to_tsv(g: TypedGraph) -> str:
    """Render the canonical, byte-deterministic TSV form."""
    lines = []
    for n in sorted(g.nodes(), key=lambda n: n.key):
        lines.append(f"N\t{n.ntype}\t{n.label}")
    edge_rows = []
    for u, v in g.edges():
        a, b = g.node(u).key, g.node(v).key
        if b < a:
            a, b = b, a
        edge_rows.append((a, b))
    edge_rows.sort()
    for (t1, l1), (t2, l2) in edge_rows:
        lines.append(f"E\t{t1}:{l1}\t{t2}:{l2}")
    return "".join(line + "\n" for line in lines)


def from_tsv(text: str) -> TypedGraph:
    """Parse the TSV form. Raises ParseError with the offending line number."""
    g = TypedGraph()
    seen_edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw or raw.startswith("#"):
            continue
        fields = raw.split("\t")
        tag = fields[0]
        if tag == "N":
            if len(fields) != 3:
                raise ParseError(lineno, f"expected N<TAB>type<TAB>label, got {raw!r}")
            try:
                g.add_node(fields[1], fields[2])
            except (DuplicateNode, ValueError) as exc:
                raise ParseError(lineno, str(exc)) from exc
        elif tag == "E":
            if len(fields) != 3:
                raise ParseError(lineno, f"expected E<TAB>endpoint<TAB>endpoint, got {raw!r}")
            u = _resolve_endpoint(g, fields[1], lineno)
            v = _resolve_endpoint(g, fields[2], lineno)
            if u == v:
                raise ParseError(lineno, f"self-loop on {fields[1]}")
            pair = (u, v) if u < v else (v, u)
            if pair in seen_edges:
                raise ParseError(lineno, f"duplicate edge {fields[1]} -- {fields[2]}")
            seen_edges.add(pair)
            g.add_edge(u, v)
        else:
            raise ParseError(lineno, f"unknown record tag {tag!r}")
    return g


def _resolve_endpoint(g: TypedGraph, token: str, lineno: int) -> int:
    ntype, sep, label = token.partition(":")
    if not sep:
        raise ParseError(lineno, f"endpoint {token!r} is not of the form type:label")
    nid = g.find(ntype, label)
    if nid is None:
        raise ParseError(lineno, f"unknown node reference {token!r}")
    return nid


def save_graph(g: TypedGraph, out: str | IO[bytes]) -> None:
    """Write the canonical TSV form to a path or binary stream."""
    data = to_tsv(g).encode("utf-8")
    if isinstance(out, (str, bytes)):
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        out.write(data)


def load_graph(src: str | IO[bytes]) -> TypedGraph:
    """Read a graph from a path or binary stream in the TSV format."""
    if isinstance(src, (str, bytes)):
        with open(src, "rb") as fh:
            data = fh.read()
    else:
        data = src.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return from_tsv(data)

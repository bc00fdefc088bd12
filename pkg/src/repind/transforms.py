"""Invertible structural rewrites between equivalent graph representations.

Three rewrite pairs are provided, each named after the representation style
it produces, plus an identity transform:

* ``freebase``  — triangle_to_star / star_to_triangle: every (film, actor,
  character) triangle is replaced by a fresh degree-3 star node.
* ``sigmod``    — group_neighbors / ungroup: the leaf neighbors of every hub
  are detached and re-attached behind one fresh per-hub group node.
* ``l3s``       — reify_copair / unreify: one fresh reified node per distinct
  (anchor1, anchor2) pair, linked to both anchors and to every member; the
  original edges are kept, so the inverse is pure deletion.

Fresh nodes get labels "~1", "~2", ... numbered in the label-sorted order of
the pattern matches, so transformed graphs serialize deterministically.

Each rewrite pair is also packaged as a scikit-learn style transformer
(``transform`` / ``inverse_transform``); the classes are stateless, so
``fit`` only validates and calling ``transform`` directly is fine.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin

from .exceptions import (
    AmbiguousMembership,
    MalformedGroup,
    MalformedStar,
    NoEquivalentMetaPath,
    NotInvertible,
    UnknownType,
)
from .graph import TypedGraph, graph_equal
from .validation import parse_metapath

FRESH_PREFIX = "~"


def _check_distinct(**bindings: str) -> None:
    for role, t in bindings.items():
        if not isinstance(t, str) or not t:
            raise ValueError(f"binding {role} must be a non-empty type name, got {t!r}")
    values = list(bindings.values())
    if len(set(values)) != len(values):
        raise ValueError(f"bound types must be distinct, got {bindings}")


def _check_fresh_type_unused(g: TypedGraph, fresh: str, role: str) -> None:
    if g.nodes_of_type(fresh):
        raise UnknownType(
            f"{role} type {fresh!r} already occurs in the graph; "
            f"it must be unused so fresh nodes cannot collide"
        )


# -- freebase: triangles <-> stars -------------------------------------------

def _find_triangles(g: TypedGraph, film: str, actor: str,
                    character: str) -> list[tuple[int, int, int]]:
    # Scan films label-sorted, neighbors label-sorted: match order is the
    # (film, actor, character) label sort, which fixes fresh-node numbering.
    triangles = []
    for f in g.nodes_of_type(film):
        actors = g.neighbors(f, actor)
        characters = g.neighbors(f, character)
        for a in actors:
            for c in characters:
                if g.has_edge(a, c):
                    triangles.append((f, a, c))
    return triangles


def triangle_to_star(g: TypedGraph, film: str = "F", actor: str = "A",
                     character: str = "C", star: str = "S") -> TypedGraph:
    """Replace every (film, actor, character) triangle by a fresh star node.

    Every edge between two nodes of the three bound types must lie in at
    least one such triangle, otherwise the rewrite would lose it and the
    inverse could not reconstruct the input.

    Raises:
        NotInvertible: some edge among the bound types is in no triangle.
        UnknownType: the star type already occurs in the graph.
        ValueError: bound types are not distinct.
    """
    _check_distinct(film=film, actor=actor, character=character, star=star)
    _check_fresh_type_unused(g, star, "star")
    triangles = _find_triangles(g, film, actor, character)

    covered: set[tuple[int, int]] = set()
    for f, a, c in triangles:
        for u, v in ((f, a), (f, c), (a, c)):
            covered.add((u, v) if u < v else (v, u))

    inner = {film, actor, character}
    for u, v in g.edges():
        if g.node(u).ntype in inner and g.node(v).ntype in inner:
            if (u, v) not in covered:
                raise NotInvertible(
                    f"edge {g.node(u).ntype}:{g.node(u).label} -- "
                    f"{g.node(v).ntype}:{g.node(v).label} is not covered by any "
                    f"({film},{actor},{character}) triangle"
                )

    out = TypedGraph()
    for n in g.nodes():
        out.add_node(n.ntype, n.label)
    for u, v in g.edges():
        if (u, v) not in covered:
            out.add_edge(u, v)
    for i, (f, a, c) in enumerate(triangles, start=1):
        s = out.add_node(star, f"{FRESH_PREFIX}{i}")
        out.add_edge(s, f)
        out.add_edge(s, a)
        out.add_edge(s, c)
    return out


def star_to_triangle(g: TypedGraph, film: str = "F", actor: str = "A",
                     character: str = "C", star: str = "S") -> TypedGraph:
    """Inverse of triangle_to_star: contract each star back to its triangle.

    Raises:
        MalformedStar: a star node whose neighborhood is not exactly one
            film, one actor and one character.
    """
    _check_distinct(film=film, actor=actor, character=character, star=star)
    triangles = []
    for s in g.nodes_of_type(star):
        nbrs = g.neighbors(s)
        films = [v for v in nbrs if g.node(v).ntype == film]
        actors = [v for v in nbrs if g.node(v).ntype == actor]
        characters = [v for v in nbrs if g.node(v).ntype == character]
        if len(nbrs) != 3 or len(films) != 1 or len(actors) != 1 or len(characters) != 1:
            raise MalformedStar(
                f"star {star}:{g.node(s).label} must have exactly one {film}, "
                f"one {actor} and one {character} neighbor, got degree {len(nbrs)}"
            )
        triangles.append((films[0], actors[0], characters[0]))

    out = TypedGraph()
    id_map: dict[int, int] = {}
    for n in g.nodes():
        if n.ntype != star:
            id_map[n.id] = out.add_node(n.ntype, n.label)
    for u, v in g.edges():
        if u in id_map and v in id_map:
            out.add_edge(id_map[u], id_map[v])
    for f, a, c in triangles:
        # Shared edges (one edge in two triangles) dedup via add_edge no-op.
        out.add_edge(id_map[f], id_map[a])
        out.add_edge(id_map[f], id_map[c])
        out.add_edge(id_map[a], id_map[c])
    return out


# -- sigmod: hub-leaf edges <-> per-hub group node ----------------------------

def group_neighbors(g: TypedGraph, hub: str = "P", leaf: str = "A",
                    group: str = "G") -> TypedGraph:
    """Route every hub's leaf edges through one fresh per-hub group node.

    Hubs without leaf neighbors are left alone. Always invertible.

    Raises:
        UnknownType: the group type already occurs in the graph.
    """
    _check_distinct(hub=hub, leaf=leaf, group=group)
    _check_fresh_type_unused(g, group, "group")

    grouped = []  # (hub id, leaf ids), hub label order fixes fresh numbering
    for h in g.nodes_of_type(hub):
        leaves = g.neighbors(h, leaf)
        if leaves:
            grouped.append((h, leaves))

    out = TypedGraph()
    for n in g.nodes():
        out.add_node(n.ntype, n.label)
    hub_leaf = {hub, leaf}
    for u, v in g.edges():
        if {g.node(u).ntype, g.node(v).ntype} == hub_leaf:
            continue
        out.add_edge(u, v)
    for i, (h, leaves) in enumerate(grouped, start=1):
        gr = out.add_node(group, f"{FRESH_PREFIX}{i}")
        out.add_edge(gr, h)
        for leaf_id in leaves:
            out.add_edge(gr, leaf_id)
    return out


def ungroup(g: TypedGraph, hub: str = "P", leaf: str = "A",
            group: str = "G") -> TypedGraph:
    """Inverse of group_neighbors: contract group nodes to direct edges.

    Raises:
        MalformedGroup: a group node without exactly one hub neighbor and
            at least one leaf neighbor, or with neighbors of other types.
    """
    _check_distinct(hub=hub, leaf=leaf, group=group)
    contractions = []
    for gr in g.nodes_of_type(group):
        nbrs = g.neighbors(gr)
        hubs = [v for v in nbrs if g.node(v).ntype == hub]
        leaves = [v for v in nbrs if g.node(v).ntype == leaf]
        if len(hubs) != 1 or not leaves or len(hubs) + len(leaves) != len(nbrs):
            raise MalformedGroup(
                f"group {group}:{g.node(gr).label} must link exactly one {hub} "
                f"and at least one {leaf}, got degree {len(nbrs)}"
            )
        contractions.append((hubs[0], leaves))

    out = TypedGraph()
    id_map: dict[int, int] = {}
    for n in g.nodes():
        if n.ntype != group:
            id_map[n.id] = out.add_node(n.ntype, n.label)
    for u, v in g.edges():
        if u in id_map and v in id_map:
            out.add_edge(id_map[u], id_map[v])
    for h, leaves in contractions:
        for leaf_id in leaves:
            out.add_edge(id_map[h], id_map[leaf_id])
    return out


# -- l3s: reify (anchor1, anchor2) co-occurrence ------------------------------

def reify_copair(g: TypedGraph, anchor1: str = "C", anchor2: str = "Y",
                 member: str = "P", reified: str = "R") -> TypedGraph:
    """Add one reified node per distinct (anchor1, anchor2) pair of members.

    Each member must touch exactly one anchor of each type. The reified node
    links to both anchors and to every member of the pair. Nothing is
    removed, so the inverse is pure deletion of the reified nodes.

    Raises:
        AmbiguousMembership: a member with other than exactly one anchor1
            or anchor2 neighbor.
        UnknownType: the reified type already occurs in the graph.
    """
    _check_distinct(anchor1=anchor1, anchor2=anchor2, member=member, reified=reified)
    _check_fresh_type_unused(g, reified, "reified")

    pairs: dict[tuple[int, int], list[int]] = {}
    for m in g.nodes_of_type(member):
        a1 = g.neighbors(m, anchor1)
        a2 = g.neighbors(m, anchor2)
        if len(a1) != 1 or len(a2) != 1:
            raise AmbiguousMembership(
                f"member {member}:{g.node(m).label} has {len(a1)} {anchor1}- and "
                f"{len(a2)} {anchor2}-neighbors, expected exactly 1 of each"
            )
        pairs.setdefault((a1[0], a2[0]), []).append(m)

    def pair_key(item):
        (c, y), _ = item
        return (g.node(c).label, g.node(y).label)

    out = g.copy()
    for i, ((c, y), members) in enumerate(sorted(pairs.items(), key=pair_key), start=1):
        r = out.add_node(reified, f"{FRESH_PREFIX}{i}")
        out.add_edge(r, c)
        out.add_edge(r, y)
        for m in members:
            out.add_edge(r, m)
    return out


def unreify(g: TypedGraph, anchor1: str = "C", anchor2: str = "Y",
            member: str = "P", reified: str = "R") -> TypedGraph:
    """Inverse of reify_copair: delete every reified-type node."""
    _check_distinct(anchor1=anchor1, anchor2=anchor2, member=member, reified=reified)
    out = TypedGraph()
    id_map: dict[int, int] = {}
    for n in g.nodes():
        if n.ntype != reified:
            id_map[n.id] = out.add_node(n.ntype, n.label)
    for u, v in g.edges():
        if u in id_map and v in id_map:
            out.add_edge(id_map[u], id_map[v])
    return out


# -- meta-path translation ----------------------------------------------------

def _translate_steps(steps: tuple[str, ...], rules: dict[tuple[str, str], str],
                     fresh: str) -> tuple[str, ...]:
    if fresh in steps:
        raise NoEquivalentMetaPath(
            f"meta-path {steps} mentions the fresh type {fresh!r}, which cannot "
            f"occur on the source side of this transformation"
        )
    out = [steps[0]]
    for x, y in zip(steps, steps[1:]):
        mid = rules.get((x, y) if x <= y else (y, x))
        if mid is not None:
            out.append(mid)
        out.append(y)
    return tuple(out)


def _collapse_steps(steps: tuple[str, ...], fresh: str) -> tuple[str, ...]:
    if steps[0] == fresh or steps[-1] == fresh:
        raise NoEquivalentMetaPath(
            f"meta-path {steps} starts or ends with the fresh type {fresh!r}"
        )
    out = tuple(t for t in steps if t != fresh)
    if len(out) < 2:
        raise NoEquivalentMetaPath(f"meta-path {steps} collapses to fewer than 2 types")
    return out


# -- scikit-learn style transformer wrappers ----------------------------------

class _Rewrite(BaseEstimator, TransformerMixin):
    """Base for the stateless graph-rewrite transformers.

    ``fit`` validates the bindings and, when a graph is given, the rewrite's
    precondition; it stores nothing, so ``transform`` works unfitted too.
    """

    name = "abstract"
    metapath_exact = True

    def fit(self, graph: TypedGraph | None = None, y=None):
        if graph is not None:
            self.transform(graph)
        return self

    def transform(self, graph: TypedGraph) -> TypedGraph:
        raise NotImplementedError

    def inverse_transform(self, graph: TypedGraph) -> TypedGraph:
        raise NotImplementedError

    def translate_metapath(self, mp) -> tuple[str, ...]:
        """Rewrite a source-side meta-path for the transformed graph."""
        steps = parse_metapath(mp)
        return _translate_steps(steps, self._step_rules(), self._fresh_type())

    def inverted(self) -> "InvertedRewrite":
        """The inverse rewrite as a transformer (for family closure)."""
        return InvertedRewrite(base=self)

    def _step_rules(self) -> dict[tuple[str, str], str]:
        raise NotImplementedError

    def _fresh_type(self) -> str:
        raise NotImplementedError


class TriangleToStar(_Rewrite):
    """(film, actor, character) triangles to fresh star nodes.

    The translated meta-path routes every step between two bound movie types
    through the star type; path counts are generally NOT preserved (one actor
    playing several characters in a film multiplies the star routes), hence
    ``metapath_exact`` is False.
    """

    name = "freebase"
    metapath_exact = False

    def __init__(self, film: str = "F", actor: str = "A",
                 character: str = "C", star: str = "S"):
        self.film = film
        self.actor = actor
        self.character = character
        self.star = star

    def transform(self, graph: TypedGraph) -> TypedGraph:
        return triangle_to_star(graph, self.film, self.actor, self.character, self.star)

    def inverse_transform(self, graph: TypedGraph) -> TypedGraph:
        return star_to_triangle(graph, self.film, self.actor, self.character, self.star)

    def _step_rules(self):
        kinds = [self.film, self.actor, self.character]
        rules = {}
        for i, x in enumerate(kinds):
            for y in kinds[i:]:
                rules[(x, y) if x <= y else (y, x)] = self.star
        return rules

    def _fresh_type(self):
        return self.star


class GroupNeighbors(_Rewrite):
    """Hub-leaf edges to per-hub group nodes; path counts preserved 1:1."""

    name = "sigmod"
    metapath_exact = True

    def __init__(self, hub: str = "P", leaf: str = "A", group: str = "G"):
        self.hub = hub
        self.leaf = leaf
        self.group = group

    def transform(self, graph: TypedGraph) -> TypedGraph:
        return group_neighbors(graph, self.hub, self.leaf, self.group)

    def inverse_transform(self, graph: TypedGraph) -> TypedGraph:
        return ungroup(graph, self.hub, self.leaf, self.group)

    def _step_rules(self):
        key = (self.hub, self.leaf) if self.hub <= self.leaf else (self.leaf, self.hub)
        return {key: self.group}

    def _fresh_type(self):
        return self.group


class ReifyCopair(_Rewrite):
    """Reified (anchor1, anchor2) pair nodes; member-anchor1 steps route
    through the reified type with path counts preserved 1:1."""

    name = "l3s"
    metapath_exact = True

    def __init__(self, anchor1: str = "C", anchor2: str = "Y",
                 member: str = "P", reified: str = "R"):
        self.anchor1 = anchor1
        self.anchor2 = anchor2
        self.member = member
        self.reified = reified

    def transform(self, graph: TypedGraph) -> TypedGraph:
        return reify_copair(graph, self.anchor1, self.anchor2, self.member, self.reified)

    def inverse_transform(self, graph: TypedGraph) -> TypedGraph:
        return unreify(graph, self.anchor1, self.anchor2, self.member, self.reified)

    def _step_rules(self):
        a, b = self.member, self.anchor1
        key = (a, b) if a <= b else (b, a)
        return {key: self.reified}

    def _fresh_type(self):
        return self.reified


class IdentityTransform(_Rewrite):
    """No-op rewrite; the baseline for the experiment harness."""

    name = "identity"
    metapath_exact = True

    def transform(self, graph: TypedGraph) -> TypedGraph:
        return graph.copy()

    def inverse_transform(self, graph: TypedGraph) -> TypedGraph:
        return graph.copy()

    def translate_metapath(self, mp) -> tuple[str, ...]:
        return parse_metapath(mp)


class InvertedRewrite(_Rewrite):
    """View of a rewrite with forward and inverse directions swapped.

    Meta-paths translate by deleting the fresh type from the step sequence,
    undoing the base rewrite's insertions.
    """

    def __init__(self, base: _Rewrite):
        self.base = base

    @property
    def name(self) -> str:  # type: ignore[override]
        return f"{self.base.name}_inverse"

    @property
    def metapath_exact(self) -> bool:  # type: ignore[override]
        return self.base.metapath_exact

    def transform(self, graph: TypedGraph) -> TypedGraph:
        return self.base.inverse_transform(graph)

    def inverse_transform(self, graph: TypedGraph) -> TypedGraph:
        return self.base.transform(graph)

    def translate_metapath(self, mp) -> tuple[str, ...]:
        return _collapse_steps(parse_metapath(mp), self.base._fresh_type())

    def inverted(self) -> _Rewrite:
        return self.base


class TransformationFamily:
    """A set of transformations closed under taking inverses."""

    def __init__(self, members):
        self.members = tuple(members)

    def closure(self) -> "TransformationFamily":
        by_name = {m.name: m for m in self.members}
        for m in self.members:
            inv = m.inverted()
            by_name.setdefault(inv.name, inv)
        return TransformationFamily(by_name.values())

    def names(self) -> list[str]:
        return sorted(m.name for m in self.members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


TRANSFORM_CLASSES = {
    "freebase": TriangleToStar,
    "sigmod": GroupNeighbors,
    "l3s": ReifyCopair,
    "identity": IdentityTransform,
}


def make_transform(name: str, **bindings) -> _Rewrite:
    """Instantiate a rewrite by registry name with optional type bindings."""
    try:
        cls = TRANSFORM_CLASSES[name]
    except KeyError:
        raise ValueError(
            f"unknown transformation {name!r}; known: {sorted(TRANSFORM_CLASSES)}"
        ) from None
    return cls(**bindings)


def verify_roundtrip(g: TypedGraph, t: _Rewrite) -> bool:
    """True iff applying t forward then backward reproduces g exactly."""
    return graph_equal(t.inverse_transform(t.transform(g)), g)

"""Graph builders shared across test modules."""

from __future__ import annotations

import random

from repind import TypedGraph

# The 14-node movie fixture: three films, their actors, and the characters
# played, with film-actor, film-character and actor-character edges per
# casting. H.Christensen appears in two films; Darth Vader is played by two
# actors; the H.Christensen / Anakin+Vader castings share edges.
MOVIE_CASTINGS = [
    ("Jumper", "H.Christensen", "David Rice"),
    ("Jumper", "J.Bell", "Griffin"),
    ("Star Wars III", "H.Christensen", "Anakin Skywalker"),
    ("Star Wars III", "H.Christensen", "Darth Vader"),
    ("Star Wars V", "D.Prowse", "Darth Vader"),
    ("Star Wars V", "F.Oz", "Yoda"),
    ("Star Wars V", "H.Ford", "Han Solo"),
]


def casting_graph(castings) -> TypedGraph:
    """Triangle-form movie graph from (film, actor, character) rows."""
    g = TypedGraph()
    for f, a, c in castings:
        fi = g.ensure_node("F", f)
        ai = g.ensure_node("A", a)
        ci = g.ensure_node("C", c)
        g.add_edge(fi, ai)
        g.add_edge(fi, ci)
        g.add_edge(ai, ci)
    return g


def build_movie_graph() -> TypedGraph:
    return casting_graph(MOVIE_CASTINGS)


def build_two_char_graph() -> TypedGraph:
    # one film, one actor playing two characters, a second actor sharing
    # a character with the first
    return casting_graph([
        ("f1", "a1", "c1"),
        ("f1", "a1", "c2"),
        ("f1", "a2", "c1"),
    ])


def random_graph(rng: random.Random, n: int, edge_prob: float,
                 ntype: str = "N") -> TypedGraph:
    """Untyped-flavor random graph (single node type) for numeric oracles."""
    g = TypedGraph()
    for i in range(n):
        g.add_node(ntype, f"n{i}")
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_prob:
                g.add_edge(u, v)
    return g


def random_tripartite(rng: random.Random, na: int, nb: int, nc: int,
                      edge_prob: float) -> TypedGraph:
    """Random A-B and B-C bipartite layers, for meta-path counting."""
    g = TypedGraph()
    a_ids = [g.add_node("A", f"a{i}") for i in range(na)]
    b_ids = [g.add_node("B", f"b{i}") for i in range(nb)]
    c_ids = [g.add_node("C", f"c{i}") for i in range(nc)]
    for u in a_ids:
        for v in b_ids:
            if rng.random() < edge_prob:
                g.add_edge(u, v)
    for u in b_ids:
        for v in c_ids:
            if rng.random() < edge_prob:
                g.add_edge(u, v)
    return g

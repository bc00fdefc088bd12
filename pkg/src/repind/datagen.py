"""Seeded synthetic graph generators.

Two shapes, mirroring the movie and bibliography schemas the transformations
are written for:

* movie graphs (types A=actor, F=film, C=character): every casting of an
  actor in a film creates a fresh character node, so each (actor, film) pair
  closes an (F, A, C) triangle and the output is triangle-covered by
  construction. With ``multi_character_prob`` an actor gets a second fresh
  character in the same film, the motif that makes star-form path counts
  diverge from triangle-form ones.
* bibliography graphs (types A=author, P=paper, C=conference, Y=year): each
  paper gets 1..k authors, exactly one conference and exactly one year, so
  the grouping and reification preconditions always hold. Paper-paper
  citation edges are optional; no transformation touches them.

Actor and author popularity follows preferential attachment so that
similarity rankings are non-degenerate. All randomness comes from one
``random.Random(seed)``; identical params give byte-identical graphs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import TypedGraph
from .validation import check_in_range, check_positive_int


@dataclass(frozen=True)
class GenParams:
    """Generator knobs. Movie and bibliography fields coexist; each
    generator reads only its own."""

    seed: int = 0
    # movie graph
    n_actors: int = 200
    n_films: int = 300
    cast_size: tuple[int, int] = (3, 8)
    multi_character_prob: float = 0.05
    # bibliography graph
    n_authors: int = 200
    n_confs: int = 15
    n_years: int = 10
    n_papers: int = 600
    authors_per_paper: tuple[int, int] = (1, 5)
    citation_prob: float = 0.0

    def validate(self) -> "GenParams":
        for name in ("n_actors", "n_films", "n_authors", "n_confs",
                     "n_years", "n_papers"):
            check_positive_int(name, getattr(self, name))
        for name in ("cast_size", "authors_per_paper"):
            lo, hi = getattr(self, name)
            check_positive_int(f"{name}[0]", lo)
            check_positive_int(f"{name}[1]", hi)
            if lo > hi:
                raise ValueError(f"{name} range is empty: {lo} > {hi}")
        check_in_range("multi_character_prob", self.multi_character_prob, 0.0, 1.0)
        check_in_range("citation_prob", self.citation_prob, 0.0, 1.0)
        return self


def _draw_preferential(rng: random.Random, pool: list[int],
                       taken: set[int], universe: list[int]) -> int:
    # Rejection-sample from the attachment pool; after too many collisions
    # fall back to a uniform draw over whatever is still free.
    for _ in range(30):
        pick = pool[rng.randrange(len(pool))]
        if pick not in taken:
            return pick
    free = [u for u in universe if u not in taken]
    return free[rng.randrange(len(free))]


def gen_imdb(params: GenParams) -> TypedGraph:
    """Movie-shaped graph; always satisfies the triangle-cover precondition."""
    p = params.validate()
    rng = random.Random(p.seed)
    g = TypedGraph()
    actors = [g.add_node("A", f"a{i:05d}") for i in range(1, p.n_actors + 1)]
    films = [g.add_node("F", f"f{i:05d}") for i in range(1, p.n_films + 1)]
    pool = list(actors)  # one entry per casting; seeds preferential attachment
    n_chars = 0

    def cast(actor: int, film: int) -> None:
        nonlocal n_chars
        n_chars += 1
        ch = g.add_node("C", f"c{n_chars:06d}")
        g.add_edge(actor, film)
        g.add_edge(actor, ch)
        g.add_edge(film, ch)
        pool.append(actor)

    lo, hi = p.cast_size
    for f in films:
        size = rng.randint(lo, min(hi, p.n_actors))
        taken: set[int] = set()
        for _ in range(size):
            a = _draw_preferential(rng, pool, taken, actors)
            taken.add(a)
            cast(a, f)
            if rng.random() < p.multi_character_prob:
                cast(a, f)  # second character, same (actor, film) pair
    return g


def gen_dblp(params: GenParams) -> TypedGraph:
    """Bibliography-shaped graph; every paper has exactly one conference and
    one year, so grouping and reification always apply."""
    p = params.validate()
    rng = random.Random(p.seed)
    g = TypedGraph()
    authors = [g.add_node("A", f"a{i:05d}") for i in range(1, p.n_authors + 1)]
    confs = [g.add_node("C", f"conf{i:03d}") for i in range(1, p.n_confs + 1)]
    years = [g.add_node("Y", str(1970 + i)) for i in range(p.n_years)]
    pool = list(authors)
    papers: list[int] = []

    lo, hi = p.authors_per_paper
    for i in range(1, p.n_papers + 1):
        paper = g.add_node("P", f"p{i:05d}")
        n_auth = rng.randint(lo, min(hi, p.n_authors))
        taken: set[int] = set()
        for _ in range(n_auth):
            a = _draw_preferential(rng, pool, taken, authors)
            taken.add(a)
            g.add_edge(paper, a)
            pool.append(a)
        g.add_edge(paper, confs[rng.randrange(len(confs))])
        g.add_edge(paper, years[rng.randrange(len(years))])
        if papers and rng.random() < p.citation_prob:
            g.add_edge(paper, papers[rng.randrange(len(papers))])
        papers.append(paper)
    return g


GENERATORS = {"imdb": gen_imdb, "dblp": gen_dblp}

SIZE_PRESETS: dict[str, dict[str, dict]] = {
    "imdb": {
        "small": dict(n_actors=60, n_films=90, cast_size=(2, 5)),
        "medium": dict(n_actors=200, n_films=300, cast_size=(3, 8)),
        "large": dict(n_actors=500, n_films=900, cast_size=(3, 8)),
    },
    "dblp": {
        "small": dict(n_authors=80, n_papers=240, n_confs=8, n_years=8),
        "medium": dict(n_authors=500, n_papers=2000, n_confs=15, n_years=10),
        "large": dict(n_authors=1500, n_papers=6000, n_confs=15, n_years=12),
    },
}


def generate(kind: str, params: GenParams) -> TypedGraph:
    """Dispatch to a generator by kind name ("imdb" or "dblp")."""
    try:
        gen = GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown generator kind {kind!r}; known: {sorted(GENERATORS)}") from None
    return gen(params)

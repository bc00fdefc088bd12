import pytest

from repind import (
    GENERATORS,
    SIZE_PRESETS,
    GenParams,
    gen_dblp,
    gen_imdb,
    generate,
    graph_equal,
    to_tsv,
)


class TestGenParams:
    def test_defaults_valid(self):
        GenParams().validate()

    @pytest.mark.parametrize("kwargs", [
        {"n_actors": 0}, {"n_films": -1}, {"n_papers": 0},
        {"cast_size": (0, 3)}, {"cast_size": (5, 2)},
        {"authors_per_paper": (2, 1)},
        {"multi_character_prob": 1.5}, {"citation_prob": -0.1},
    ])
    def test_invalid_rejected(self, kwargs):
        with pytest.raises(ValueError):
            GenParams(**kwargs).validate()


class TestImdb:
    def params(self, **kwargs):
        base = dict(seed=3, n_actors=20, n_films=30, cast_size=(2, 4),
                    multi_character_prob=0.1)
        base.update(kwargs)
        return GenParams(**base)

    def test_deterministic_to_the_byte(self):
        g1 = gen_imdb(self.params())
        g2 = gen_imdb(self.params())
        assert to_tsv(g1) == to_tsv(g2)

    def test_seed_changes_output(self):
        assert not graph_equal(gen_imdb(self.params(seed=1)),
                               gen_imdb(self.params(seed=2)))

    def test_node_counts(self):
        g = gen_imdb(self.params())
        assert len(g.nodes_of_type("A")) == 20
        assert len(g.nodes_of_type("F")) == 30
        # one fresh character per casting
        n_castings = len(g.nodes_of_type("C"))
        assert 30 * 2 <= n_castings  # at least min cast size per film

    def test_every_casting_is_a_triangle(self):
        g = gen_imdb(self.params())
        for c in g.nodes_of_type("C"):
            nbrs = g.neighbors(c)
            kinds = sorted(g.node(v).ntype for v in nbrs)
            assert kinds == ["A", "F"]
            assert g.has_edge(nbrs[0], nbrs[1])

    def test_every_film_actor_edge_in_a_triangle(self):
        g = gen_imdb(self.params())
        for u, v in g.edges():
            tu, tv = g.node(u).ntype, g.node(v).ntype
            if {tu, tv} == {"A", "F"}:
                shared = set(g.neighbors(u, "C")) & set(g.neighbors(v, "C"))
                assert shared, "film-actor edge without a character"

    def test_multi_character_castings_occur(self):
        g = gen_imdb(self.params(n_films=80, multi_character_prob=0.3))
        doubled = 0
        for a in g.nodes_of_type("A"):
            for f in g.neighbors(a, "F"):
                chars = set(g.neighbors(a, "C")) & set(g.neighbors(f, "C"))
                if len(chars) > 1:
                    doubled += 1
        assert doubled > 0

    def test_popularity_is_skewed(self):
        g = gen_imdb(self.params(n_actors=40, n_films=120))
        degrees = sorted(len(g.neighbors(a, "F")) for a in g.nodes_of_type("A"))
        # preferential attachment: the busiest actor far above the median
        assert degrees[-1] >= 2 * max(degrees[len(degrees) // 2], 1)


class TestDblp:
    def params(self, **kwargs):
        base = dict(seed=5, n_authors=25, n_papers=60, n_confs=5, n_years=4,
                    authors_per_paper=(1, 4), citation_prob=0.2)
        base.update(kwargs)
        return GenParams(**base)

    def test_deterministic_to_the_byte(self):
        assert to_tsv(gen_dblp(self.params())) == to_tsv(gen_dblp(self.params()))

    def test_node_counts_and_year_labels(self):
        g = gen_dblp(self.params())
        assert len(g.nodes_of_type("A")) == 25
        assert len(g.nodes_of_type("P")) == 60
        assert len(g.nodes_of_type("C")) == 5
        assert [g.node(y).label for y in g.nodes_of_type("Y")] == [
            "1970", "1971", "1972", "1973",
        ]

    def test_per_paper_shape(self):
        g = gen_dblp(self.params())
        for paper in g.nodes_of_type("P"):
            assert len(g.neighbors(paper, "C")) == 1
            assert len(g.neighbors(paper, "Y")) == 1
            assert 1 <= len(g.neighbors(paper, "A")) <= 4

    def test_citations_within_bounds(self):
        g = gen_dblp(self.params())
        cited = sum(
            1 for u, v in g.edges()
            if g.node(u).ntype == "P" and g.node(v).ntype == "P"
        )
        assert 0 < cited <= 60

    def test_no_citations_by_default(self):
        g = gen_dblp(self.params(citation_prob=0.0))
        for u, v in g.edges():
            assert {g.node(u).ntype, g.node(v).ntype} != {"P"}


class TestDispatch:
    def test_generate_by_kind(self):
        g = generate("imdb", GenParams(seed=0, n_actors=5, n_films=5,
                                       cast_size=(1, 2)))
        assert g.nodes_of_type("F")
        with pytest.raises(ValueError, match="unknown generator"):
            generate("bogus", GenParams())

    def test_presets_cover_both_kinds(self):
        assert set(SIZE_PRESETS) == set(GENERATORS) == {"imdb", "dblp"}
        for kind, presets in SIZE_PRESETS.items():
            assert set(presets) == {"small", "medium", "large"}
            for overrides in presets.values():
                GenParams(**overrides).validate()

    def test_preset_scale_is_ordered(self):
        small = generate("dblp", GenParams(seed=1, **SIZE_PRESETS["dblp"]["small"]))
        medium = generate("dblp", GenParams(seed=1, **SIZE_PRESETS["dblp"]["medium"]))
        assert small.n_nodes < medium.n_nodes

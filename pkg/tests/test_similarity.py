import random

import numpy as np
import pytest
from sklearn.exceptions import NotFittedError

from repind import (
    AlgorithmParams,
    AsymmetricMetaPath,
    GraphTooLarge,
    NodeNotFound,
    PathSim,
    RandomWalkWithRestart,
    SimRank,
    TypedGraph,
    TypeMismatch,
    UnknownType,
    path_count,
    pathsim_scores,
    rank_topk,
    rwr_scores,
    rwr_scores_with_trace,
    simrank_all,
)
from oracles import count_walks, rwr_solve, simrank_naive
from util import random_graph, random_tripartite


class TestParams:
    def test_defaults_valid(self):
        AlgorithmParams().validate()

    @pytest.mark.parametrize("kwargs", [
        {"restart_prob": 0.0}, {"restart_prob": 1.0}, {"restart_prob": -0.1},
        {"simrank_decay": 0.0}, {"simrank_decay": 1.0},
        {"simrank_iters": 0}, {"simrank_iters": True},
        {"simrank_max_nodes": 0}, {"rwr_max_iters": 0}, {"rwr_tol": 0.0},
        {"rwr_tol": -1e-9},
    ])
    def test_out_of_range_rejected(self, kwargs):
        with pytest.raises(ValueError):
            AlgorithmParams(**kwargs).validate()


class TestRwr:
    def test_scores_are_a_distribution(self, movie_graph):
        r = rwr_scores(movie_graph, 0)
        assert r.shape == (14,)
        assert np.all(r >= 0)
        assert abs(r.sum() - 1.0) < 1e-9

    def test_query_scores_highest(self, movie_graph):
        q = movie_graph.require("F", "Jumper")
        r = rwr_scores(movie_graph, q)
        assert r.argmax() == q

    @pytest.mark.parametrize("seed", range(30))
    def test_matches_dense_solve(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(3, 25), rng.uniform(0.05, 0.4))
        q = rng.randrange(g.n_nodes)
        c = rng.uniform(0.05, 0.5)
        got = rwr_scores(g, q, AlgorithmParams(restart_prob=c))
        want = rwr_solve(g, q, c)
        assert np.max(np.abs(got - want)) < 1e-8

    def test_dangling_mass_returns_to_query(self):
        g = TypedGraph()
        a = g.add_node("N", "a")
        b = g.add_node("N", "b")
        g.add_node("N", "isolated")
        g.add_edge(a, b)
        r = rwr_scores(g, a)
        assert abs(r.sum() - 1.0) < 1e-9
        assert np.max(np.abs(r - rwr_solve(g, a, 0.15))) < 1e-8

    def test_trace_shows_convergence(self, movie_graph):
        params = AlgorithmParams(rwr_tol=1e-10)
        _, deltas = rwr_scores_with_trace(movie_graph, 0, params)
        assert deltas[-1] < 1e-10
        assert len(deltas) < 1000
        # geometric-ish decay: strictly below the first delta from midway on
        assert all(d < deltas[0] for d in deltas[len(deltas) // 2:])

    def test_iteration_cap_respected(self, movie_graph):
        params = AlgorithmParams(rwr_tol=1e-300, rwr_max_iters=7)
        _, deltas = rwr_scores_with_trace(movie_graph, 0, params)
        assert len(deltas) == 7

    def test_bad_query_rejected(self, movie_graph):
        with pytest.raises(NodeNotFound):
            rwr_scores(movie_graph, 99)

    def test_empty_graph_rejected(self):
        with pytest.raises((ValueError, NodeNotFound)):
            rwr_scores(TypedGraph(), 0)


class TestSimrank:
    @pytest.mark.parametrize("seed", range(30))
    def test_matches_naive_recurrence(self, seed):
        rng = random.Random(1000 + seed)
        g = random_graph(rng, rng.randint(2, 8), rng.uniform(0.2, 0.7))
        decay = rng.choice([0.6, 0.8])
        iters = rng.choice([3, 7, 10])
        got = simrank_all(g, AlgorithmParams(simrank_decay=decay, simrank_iters=iters))
        want = simrank_naive(g, decay, iters)
        worst = max(
            abs(got[u, v] - want[(u, v)])
            for u in range(g.n_nodes) for v in range(g.n_nodes)
        )
        assert worst < 1e-12

    def test_basic_matrix_shape(self, movie_graph):
        S = simrank_all(movie_graph)
        assert S.shape == (14, 14)
        assert np.allclose(np.diag(S), 1.0)
        assert np.allclose(S, S.T)
        assert np.all(S >= 0) and np.all(S <= 1 + 1e-12)

    def test_isolated_node_similarity_zero(self):
        g = TypedGraph()
        a = g.add_node("N", "a")
        b = g.add_node("N", "b")
        g.add_node("N", "isolated")
        g.add_edge(a, b)
        S = simrank_all(g)
        assert S[2, 0] == 0.0 and S[2, 1] == 0.0 and S[2, 2] == 1.0

    def test_size_cap(self, movie_graph):
        with pytest.raises(GraphTooLarge):
            simrank_all(movie_graph, AlgorithmParams(simrank_max_nodes=5))


class TestPathCount:
    def test_movie_actor_film_actor_counts(self, movie_graph):
        g = movie_graph
        table = path_count(g, "AFA")
        hc = g.require("A", "H.Christensen")
        jb = g.require("A", "J.Bell")
        dp = g.require("A", "D.Prowse")
        fo = g.require("A", "F.Oz")
        # H.Christensen appears in two films, so two self-walks
        assert table.count(hc, hc) == 2
        assert table.count(hc, jb) == 1
        assert table.count(hc, dp) == 0
        assert table.count(dp, fo) == 1

    def test_longer_metapath(self, movie_graph):
        g = movie_graph
        # actor-character-actor: shared characters
        table = path_count(g, ("A", "C", "A"))
        hc = g.require("A", "H.Christensen")
        dp = g.require("A", "D.Prowse")
        assert table.count(hc, dp) == 1  # both played Darth Vader

    @pytest.mark.parametrize("seed", range(20))
    @pytest.mark.parametrize("mp", [("A", "B", "A"), ("A", "B", "C", "B", "A")])
    def test_matches_walk_enumeration(self, seed, mp):
        rng = random.Random(2000 + seed)
        g = random_tripartite(rng, rng.randint(2, 6), rng.randint(2, 6),
                              rng.randint(2, 6), rng.uniform(0.2, 0.6))
        table = path_count(g, mp)
        for u in g.nodes_of_type("A"):
            for v in g.nodes_of_type("A"):
                assert table.count(u, v) == count_walks(g, mp, u, v)

    def test_unknown_type_rejected(self, movie_graph):
        with pytest.raises(UnknownType):
            path_count(movie_graph, ("A", "Z", "A"))

    def test_type_without_connecting_edges_gives_zero_counts(self, movie_graph):
        movie_graph.add_node("D", "director")
        table = path_count(movie_graph, ("A", "D", "A"))
        assert table.counts.sum() == 0


class TestPathsimScores:
    def test_fixture_fractions(self, movie_graph):
        g = movie_graph
        hc = g.require("A", "H.Christensen")
        jb = g.require("A", "J.Bell")
        dp = g.require("A", "D.Prowse")
        fo = g.require("A", "F.Oz")
        s = pathsim_scores(g, "AFA", hc)
        # 2*1 / (2 + 1): HC has two AFA self-walks, J.Bell one
        assert s[jb] == pytest.approx(2 / 3, abs=1e-15)
        assert s[dp] == 0.0
        s = pathsim_scores(g, "AFA", dp)
        assert s[fo] == pytest.approx(1.0, abs=1e-15)

    def test_zero_denominator_yields_zero(self):
        g = TypedGraph()
        a = g.add_node("A", "a")
        b = g.add_node("A", "b")
        f = g.add_node("F", "f")
        g.add_edge(b, f)
        # node a has no walks at all: every score 0, no division error
        s = pathsim_scores(g, "AFA", a)
        assert s[a] == 0.0 and s[b] == 0.0

    def test_scores_only_on_endpoint_type(self, movie_graph):
        g = movie_graph
        s = pathsim_scores(g, "AFA", g.require("A", "H.Christensen"))
        for f in g.nodes_of_type("F"):
            assert s[f] == 0.0

    def test_asymmetric_rejected(self, movie_graph):
        with pytest.raises(AsymmetricMetaPath):
            pathsim_scores(movie_graph, ("A", "F", "C"), 0)

    def test_type_mismatch_rejected(self, movie_graph):
        with pytest.raises(TypeMismatch):
            pathsim_scores(movie_graph, "AFA", movie_graph.require("F", "Jumper"))

    def test_table_reuse(self, movie_graph):
        g = movie_graph
        hc = g.require("A", "H.Christensen")
        table = path_count(g, "AFA")
        direct = pathsim_scores(g, "AFA", hc)
        reused = pathsim_scores(g, "AFA", hc, table=table)
        assert np.array_equal(direct, reused)
        with pytest.raises(ValueError):
            pathsim_scores(g, ("A", "C", "A"), hc, table=table)


class TestRankTopk:
    def test_excludes_query_and_truncates(self, movie_graph):
        g = movie_graph
        q = g.require("A", "H.Christensen")
        s = pathsim_scores(g, "AFA", q)
        top = rank_topk(s, g, q, 3)
        assert len(top) == 3
        assert all(e.node != q for e in top)
        assert top[0].label == "J.Bell"

    def test_label_tie_break(self, movie_graph):
        g = movie_graph
        q = g.require("A", "H.Christensen")
        scores = {i: 0.5 for i in g.nodes_of_type("A")}
        top = rank_topk(scores, g, q, 10)
        assert [e.label for e in top] == ["D.Prowse", "F.Oz", "H.Ford", "J.Bell"]

    def test_short_pool(self, movie_graph):
        g = movie_graph
        q = g.require("F", "Jumper")
        top = rank_topk(np.zeros(g.n_nodes), g, q, 10)
        assert [e.label for e in top] == ["Star Wars III", "Star Wars V"]

    def test_k_must_be_positive(self, movie_graph):
        with pytest.raises(ValueError):
            rank_topk(np.zeros(14), movie_graph, 0, 0)

    def test_stable_under_permuted_equal_scores(self, movie_graph):
        g = movie_graph
        q = g.require("A", "H.Christensen")
        a = rank_topk({i: 1.0 for i in g.nodes_of_type("A")}, g, q, 4)
        b = rank_topk(np.ones(g.n_nodes), g, q, 4)
        assert [e.key for e in a] == [e.key for e in b]


class TestEstimators:
    def test_rwr_estimator(self, movie_graph):
        est = RandomWalkWithRestart(restart_prob=0.15)
        assert est.fit(movie_graph) is est
        top = est.rank(("F", "Star Wars III"), k=2)
        assert {e.label for e in top} == {"Star Wars V", "Jumper"}
        # query accepted as "type:label" string and as raw id too
        assert est.rank("F:Star Wars III", k=2) == top
        assert est.rank(movie_graph.require("F", "Star Wars III"), k=2) == top

    def test_unfitted_rank_rejected(self):
        with pytest.raises(NotFittedError):
            RandomWalkWithRestart().rank(("F", "Jumper"))

    def test_simrank_estimator_matches_oracle(self, movie_graph):
        est = SimRank(decay=0.8, iters=10).fit(movie_graph)
        want = simrank_naive(movie_graph, 0.8, 10)
        q = movie_graph.require("F", "Star Wars III")
        for entry in est.rank(q, k=5):
            assert entry.score == pytest.approx(want[(q, entry.node)], abs=1e-12)

    def test_simrank_max_nodes(self, movie_graph):
        with pytest.raises(GraphTooLarge):
            SimRank(max_nodes=3).fit(movie_graph)

    def test_pathsim_estimator(self, movie_graph):
        est = PathSim(metapath="AFA").fit(movie_graph)
        top = est.rank(("A", "H.Christensen"), k=4)
        assert top[0].label == "J.Bell"
        assert top[0].score == pytest.approx(2 / 3, abs=1e-15)

    def test_pathsim_estimator_rejects_asymmetric(self, movie_graph):
        with pytest.raises(AsymmetricMetaPath):
            PathSim(metapath=("A", "F", "C")).fit(movie_graph)

    def test_get_params(self):
        assert RandomWalkWithRestart().get_params() == {
            "restart_prob": 0.15, "tol": 1e-10, "max_iters": 1000,
        }
        assert SimRank().get_params() == {
            "decay": 0.8, "iters": 10, "max_nodes": 20000,
        }
        assert PathSim().get_params() == {"metapath": "APA"}

    def test_rank_unknown_query(self, movie_graph):
        est = RandomWalkWithRestart().fit(movie_graph)
        with pytest.raises(NodeNotFound):
            est.rank(("A", "nobody"))

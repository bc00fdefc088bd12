"""Link-based similarity search over typed graphs.

Three algorithms, each exposed twice: as a plain function returning scores
over all node ids, and as a scikit-learn style estimator fitted to a graph
and then queried for rankings.

* Random walk with restart: fixed point of
  ``r <- (1-c) * (W r + e_q * dangling_mass) + c * e_q`` with W the
  column-normalized undirected adjacency; dangling columns hand their mass
  back to the query so r stays a probability distribution.
* SimRank: ``s(a,b) <- C/(|N(a)||N(b)|) * sum s(u,v)`` over neighbor pairs,
  diagonal pinned to 1, computed as a full pairwise table in matrix form.
* PathSim: normalized meta-path count ``2 M(q,y) / (M(q,q) + M(y,y))`` where
  M is the product of typed adjacency slices along the meta-path.

Rankings are restricted to the query's node type, exclude the query, and
break score ties by ascending label, so identical inputs always produce
byte-identical output.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .exceptions import (
    AsymmetricMetaPath,
    GraphTooLarge,
    TypeMismatch,
    UnknownType,
)
from .graph import TypedGraph
from .validation import (
    check_in_range,
    check_positive_int,
    parse_metapath,
    resolve_node,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlgorithmParams:
    """Numeric knobs shared by the similarity algorithms."""

    restart_prob: float = 0.15
    simrank_decay: float = 0.8
    simrank_iters: int = 10
    simrank_max_nodes: int = 20000
    rwr_tol: float = 1e-10
    rwr_max_iters: int = 1000

    def validate(self) -> "AlgorithmParams":
        check_in_range("restart_prob", self.restart_prob, 0.0, 1.0, inclusive=False)
        check_in_range("simrank_decay", self.simrank_decay, 0.0, 1.0, inclusive=False)
        check_positive_int("simrank_iters", self.simrank_iters)
        check_positive_int("simrank_max_nodes", self.simrank_max_nodes)
        check_positive_int("rwr_max_iters", self.rwr_max_iters)
        if not (self.rwr_tol > 0):
            raise ValueError(f"rwr_tol must be positive, got {self.rwr_tol}")
        return self


@dataclass(frozen=True)
class RankEntry:
    """One ranked answer."""

    node: int
    ntype: str
    label: str
    score: float

    @property
    def key(self) -> tuple[str, str]:
        return (self.ntype, self.label)


def _adjacency(g: TypedGraph) -> tuple[sp.csr_matrix, np.ndarray]:
    n = g.n_nodes
    rows, cols = [], []
    for u, v in g.edges():
        rows += (u, v)
        cols += (v, u)
    A = sp.csr_matrix(
        (np.ones(len(rows)), (rows, cols)), shape=(n, n), dtype=np.float64
    )
    deg = np.asarray(A.sum(axis=0)).ravel()
    return A, deg


def _column_normalized(A: sp.csr_matrix, deg: np.ndarray) -> sp.csr_matrix:
    inv = np.divide(1.0, deg, out=np.zeros_like(deg), where=deg > 0)
    return (A @ sp.diags(inv)).tocsr()


# -- random walk with restart -------------------------------------------------

def rwr_scores_with_trace(
    g: TypedGraph, q: int, params: AlgorithmParams | None = None
) -> tuple[np.ndarray, list[float]]:
    """RWR scores plus the L1 delta of every iteration (for convergence checks)."""
    p = (params or AlgorithmParams()).validate()
    g.node(q)  # NodeNotFound on a bad id
    if g.n_nodes == 0:
        raise ValueError("graph is empty")
    c = p.restart_prob
    A, deg = _adjacency(g)
    W = _column_normalized(A, deg)
    dangling = np.flatnonzero(deg == 0)
    e = np.zeros(g.n_nodes)
    e[q] = 1.0
    r = e.copy()
    deltas: list[float] = []
    for it in range(p.rwr_max_iters):
        spread = W @ r
        if dangling.size:
            spread = spread + e * float(r[dangling].sum())
        r_next = (1.0 - c) * spread + c * e
        delta = float(np.abs(r_next - r).sum())
        deltas.append(delta)
        r = r_next
        if delta < p.rwr_tol:
            break
    logger.debug("rwr converged for q=%d after %d iterations, last delta %.3e",
                 q, len(deltas), deltas[-1] if deltas else 0.0)
    return r, deltas


def rwr_scores(g: TypedGraph, q: int, params: AlgorithmParams | None = None) -> np.ndarray:
    """Stationary restart-walk visit probabilities from query node q."""
    return rwr_scores_with_trace(g, q, params)[0]


# -- simrank ------------------------------------------------------------------

def simrank_all(g: TypedGraph, params: AlgorithmParams | None = None) -> np.ndarray:
    """Full pairwise SimRank table after a fixed number of iterations.

    Raises:
        GraphTooLarge: node count above params.simrank_max_nodes.
    """
    p = (params or AlgorithmParams()).validate()
    n = g.n_nodes
    if n == 0:
        raise ValueError("graph is empty")
    if n > p.simrank_max_nodes:
        raise GraphTooLarge(
            f"{n} nodes exceeds the simrank_max_nodes cap of {p.simrank_max_nodes}"
        )
    A, deg = _adjacency(g)
    P = _column_normalized(A, deg)
    Pt = P.T.tocsr()
    S = np.eye(n)
    for _ in range(p.simrank_iters):
        # P^T S P, using that S stays symmetric under the update.
        S = p.simrank_decay * (Pt @ np.ascontiguousarray((Pt @ S).T))
        np.fill_diagonal(S, 1.0)
    return S


# -- pathsim ------------------------------------------------------------------

@dataclass(frozen=True)
class PathCountTable:
    """Walk counts between the endpoint types of a meta-path.

    counts[i, j] is the number of walks from row_ids[i] to col_ids[j] whose
    node-type sequence equals the meta-path. Row and column node-id lists are
    label-sorted; for a symmetric meta-path they coincide.
    """

    steps: tuple[str, ...]
    row_ids: tuple[int, ...]
    col_ids: tuple[int, ...]
    counts: np.ndarray  # int64, dense

    def count(self, u: int, v: int) -> int:
        return int(self.counts[self.row_ids.index(u), self.col_ids.index(v)])


def path_count(g: TypedGraph, mp) -> PathCountTable:
    """Pairwise meta-path walk counts via products of typed adjacency slices.

    Raises:
        UnknownType: a meta-path type with no nodes in the graph. A type
            that exists but has no edges toward the next step just yields
            zero counts.
    """
    steps = parse_metapath(mp)
    layers: list[list[int]] = []
    for t in steps:
        ids = g.nodes_of_type(t)
        if not ids:
            raise UnknownType(f"meta-path type {t!r} has no nodes in the graph")
        layers.append(ids)

    product: sp.csr_matrix | None = None
    for (t_next, ids_a, ids_b) in zip(steps[1:], layers, layers[1:]):
        pos_b = {nid: j for j, nid in enumerate(ids_b)}
        rows, cols = [], []
        for i, u in enumerate(ids_a):
            for v in g.neighbors(u, t_next):
                rows.append(i)
                cols.append(pos_b[v])
        step_slice = sp.csr_matrix(
            (np.ones(len(rows), dtype=np.int64), (rows, cols)),
            shape=(len(ids_a), len(ids_b)),
            dtype=np.int64,
        )
        product = step_slice if product is None else product @ step_slice

    assert product is not None  # len(steps) >= 2
    return PathCountTable(
        steps=steps,
        row_ids=tuple(layers[0]),
        col_ids=tuple(layers[-1]),
        counts=np.asarray(product.todense(), dtype=np.int64),
    )


def pathsim_scores(
    g: TypedGraph, mp, q: int, table: PathCountTable | None = None
) -> np.ndarray:
    """Normalized symmetric meta-path counts from q to every same-type node.

    Scores for nodes outside the endpoint type are 0. Pass a precomputed
    table to amortize the count computation over many queries.

    Raises:
        AsymmetricMetaPath: meta-path not equal to its reverse.
        TypeMismatch: q's type differs from the endpoint type.
    """
    steps = parse_metapath(mp)
    if steps != steps[::-1]:
        raise AsymmetricMetaPath(f"meta-path {steps} is not symmetric")
    qtype = g.node(q).ntype
    if qtype != steps[0]:
        raise TypeMismatch(
            f"query {g.node(q).label!r} has type {qtype!r}, meta-path expects {steps[0]!r}"
        )
    if table is None:
        table = path_count(g, steps)
    elif table.steps != steps:
        raise ValueError(f"table was computed for {table.steps}, not {steps}")
    pos = table.row_ids.index(q)
    row = table.counts[pos].astype(np.float64)
    diag = table.counts.diagonal().astype(np.float64)
    denom = diag[pos] + diag
    with np.errstate(invalid="ignore", divide="ignore"):
        vals = np.where(denom > 0, 2.0 * row / denom, 0.0)
    scores = np.zeros(g.n_nodes)
    scores[np.asarray(table.row_ids, dtype=np.intp)] = vals
    return scores


# -- ranking ------------------------------------------------------------------

def rank_topk(scores, g: TypedGraph, q: int, k: int) -> list[RankEntry]:
    """Top-k same-type nodes by score, query excluded, label tie-break.

    Accepts a dense array indexed by node id or any mapping from id to score.
    Returns fewer than k entries when the candidate pool is smaller.
    """
    check_positive_int("k", k)
    qnode = g.node(q)

    if isinstance(scores, Mapping):
        def get(i: int) -> float:
            return float(scores.get(i, 0.0))
    else:
        def get(i: int) -> float:
            return float(scores[i])

    candidates = [i for i in g.nodes_of_type(qnode.ntype) if i != q]
    # nodes_of_type is label-sorted; a stable sort on -score keeps that
    # order among ties, which is exactly the required tie-break.
    candidates.sort(key=lambda i: -get(i))
    out = []
    for i in candidates[:k]:
        n = g.node(i)
        out.append(RankEntry(node=i, ntype=n.ntype, label=n.label, score=get(i)))
    return out


# -- estimators ---------------------------------------------------------------

class _SimilaritySearch(BaseEstimator):
    """Shared fit/rank plumbing for the similarity estimators."""

    def fit(self, graph: TypedGraph, y=None):
        raise NotImplementedError

    def score_vector(self, query) -> np.ndarray:
        raise NotImplementedError

    def rank(self, query, k: int = 10) -> list[RankEntry]:
        """Top-k ranking for a query given as id, (type, label) or "type:label"."""
        g = self._fitted_graph()
        q = resolve_node(g, query)
        return rank_topk(self.score_vector(q), g, q, k)

    def _fitted_graph(self) -> TypedGraph:
        graph = getattr(self, "graph_", None)
        if graph is None:
            raise NotFittedError(
                f"{type(self).__name__} must be fitted to a graph before querying"
            )
        return graph


class RandomWalkWithRestart(_SimilaritySearch):
    """Restart-walk similarity; scores are stationary visit probabilities."""

    def __init__(self, restart_prob: float = 0.15, tol: float = 1e-10,
                 max_iters: int = 1000):
        self.restart_prob = restart_prob
        self.tol = tol
        self.max_iters = max_iters

    def _params(self) -> AlgorithmParams:
        return AlgorithmParams(
            restart_prob=self.restart_prob,
            rwr_tol=self.tol,
            rwr_max_iters=self.max_iters,
        ).validate()

    def fit(self, graph: TypedGraph, y=None):
        self._params()
        if graph.n_nodes == 0:
            raise ValueError("graph is empty")
        self.graph_ = graph
        return self

    def score_vector(self, query) -> np.ndarray:
        g = self._fitted_graph()
        return rwr_scores(g, resolve_node(g, query), self._params())


class SimRank(_SimilaritySearch):
    """Meeting-probability similarity; fit computes the full pairwise table."""

    def __init__(self, decay: float = 0.8, iters: int = 10, max_nodes: int = 20000):
        self.decay = decay
        self.iters = iters
        self.max_nodes = max_nodes

    def fit(self, graph: TypedGraph, y=None):
        params = AlgorithmParams(
            simrank_decay=self.decay,
            simrank_iters=self.iters,
            simrank_max_nodes=self.max_nodes,
        )
        self.table_ = simrank_all(graph, params)
        self.graph_ = graph
        return self

    def score_vector(self, query) -> np.ndarray:
        g = self._fitted_graph()
        return self.table_[resolve_node(g, query)]


class PathSim(_SimilaritySearch):
    """Symmetric meta-path similarity; fit computes the walk-count table."""

    def __init__(self, metapath="APA"):
        self.metapath = metapath

    def fit(self, graph: TypedGraph, y=None):
        steps = parse_metapath(self.metapath)
        if steps != steps[::-1]:
            raise AsymmetricMetaPath(f"meta-path {steps} is not symmetric")
        self.table_ = path_count(graph, steps)
        self.graph_ = graph
        return self

    def score_vector(self, query) -> np.ndarray:
        g = self._fitted_graph()
        q = resolve_node(g, query)
        return pathsim_scores(g, self.table_.steps, q, table=self.table_)

"""Experiment harness: rank-difference measurement across representations.

An experiment takes one base graph, applies one or more transformations,
runs each configured algorithm over the original and the transformed graph
for a fixed sample of queries, and reports the average top-k ranking
difference per (algorithm, transformation, k) cell, plus wall-clock times
and graph sizes.

Config is a JSON object::

    {
      "graph": {"kind": "imdb", "seed": 1, "size": "small",
                "params": {"n_films": 120}}        # or {"file": "g.tsv"}
      "transformations": [{"name": "freebase",
                           "bindings": {"film": "F", "actor": "A",
                                        "character": "C", "star": "S"}}],
      "algorithms": [
        {"name": "rwr", "params": {"restart_prob": 0.15}},
        {"name": "simrank", "params": {"decay": 0.8, "iters": 10}},
        {"name": "pathsim", "metapath": "AFA", "allow_closest": false}
      ],
      "queries": {"type": "A", "count": 50, "seed": 7},
      "k": [10, 50],
      "workers": 1,
      "include_times": false
    }

Unknown keys anywhere are rejected. Query sampling uses its own seed so the
same query set can be replayed over different graphs. A PathSim cell whose
transformation has no exact meta-path translation is reported as
"not_comparable" unless the user supplies "translated_metapath" or opts in
with "allow_closest": true, which uses the mechanical (inexact) translation.

Determinism: for a fixed config the report bytes are identical across runs
and across worker counts; set "include_times" false to blank the two timing
columns, which are the only nondeterministic cells.
"""

from __future__ import annotations

import json
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from statistics import mean, median

from .datagen import GENERATORS, SIZE_PRESETS, GenParams, generate
from .exceptions import ConfigError, NoEquivalentMetaPath, RepindError
from .graph import TypedGraph, load_graph
from .metrics import KendallParams, kendall_topk
from .similarity import AlgorithmParams, PathSim, RandomWalkWithRestart, RankEntry, SimRank
from .transforms import TRANSFORM_CLASSES, make_transform
from .validation import format_metapath, parse_metapath

logger = logging.getLogger(__name__)

ALGORITHM_NAMES = ("rwr", "simrank", "pathsim")


def _require_keys(d: dict, allowed: set[str], context: str) -> None:
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"unknown {context} keys: {sorted(unknown)}")


@dataclass(frozen=True)
class GraphSource:
    """Either a TSV file or a named generator with a seed and size preset."""

    file: str | None = None
    kind: str | None = None
    seed: int = 0
    size: str | None = None
    params: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, d: dict) -> "GraphSource":
        _require_keys(d, {"file", "kind", "seed", "size", "params"}, "graph")
        src = cls(**d)
        if (src.file is None) == (src.kind is None):
            raise ConfigError("graph needs exactly one of 'file' or 'kind'")
        if src.kind is not None:
            if src.kind not in GENERATORS:
                raise ConfigError(f"unknown generator kind {src.kind!r}")
            if src.size is not None and src.size not in SIZE_PRESETS[src.kind]:
                raise ConfigError(f"unknown size preset {src.size!r} for {src.kind!r}")
            src.build_params()  # validate overrides eagerly
        return src

    def build_params(self) -> GenParams:
        base = dict(SIZE_PRESETS[self.kind][self.size]) if self.size else {}
        base.update(self.params)
        for key in ("cast_size", "authors_per_paper"):
            if key in base and isinstance(base[key], list):
                base[key] = tuple(base[key])
        try:
            return GenParams(seed=self.seed, **base).validate()
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad generator params: {exc}") from exc

    def build(self) -> TypedGraph:
        if self.file is not None:
            return load_graph(self.file)
        return generate(self.kind, self.build_params())


@dataclass(frozen=True)
class TransformSpec:
    name: str
    bindings: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, d: dict) -> "TransformSpec":
        _require_keys(d, {"name", "bindings"}, "transformation")
        spec = cls(**d)
        if spec.name not in TRANSFORM_CLASSES:
            raise ConfigError(f"unknown transformation {spec.name!r}")
        try:
            spec.make()
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad bindings for {spec.name!r}: {exc}") from exc
        return spec

    def make(self):
        return make_transform(self.name, **self.bindings)


@dataclass(frozen=True)
class AlgorithmSpec:
    name: str
    params: dict = field(default_factory=dict)
    metapath: str | None = None
    translated_metapath: str | None = None
    allow_closest: bool = False

    @classmethod
    def from_dict(cls, d: dict) -> "AlgorithmSpec":
        _require_keys(
            d,
            {"name", "params", "metapath", "translated_metapath", "allow_closest"},
            "algorithm",
        )
        spec = cls(**d)
        if spec.name not in ALGORITHM_NAMES:
            raise ConfigError(f"unknown algorithm {spec.name!r}")
        if spec.name == "pathsim" and spec.metapath is None:
            raise ConfigError("pathsim requires a 'metapath'")
        if spec.name != "pathsim" and (
            spec.metapath or spec.translated_metapath or spec.allow_closest
        ):
            raise ConfigError(f"meta-path options only apply to pathsim, not {spec.name!r}")
        try:
            spec.make_estimator()
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad params for {spec.name!r}: {exc}") from exc
        return spec

    def make_estimator(self, metapath: str | None = None):
        if self.name == "rwr":
            est = RandomWalkWithRestart(**self.params)
            est._params()  # validate numeric ranges eagerly
            return est
        if self.name == "simrank":
            est = SimRank(**self.params)
            AlgorithmParams(simrank_decay=est.decay, simrank_iters=est.iters,
                            simrank_max_nodes=est.max_nodes).validate()
            return est
        return PathSim(metapath if metapath is not None else self.metapath)


@dataclass(frozen=True)
class QuerySpec:
    type: str
    count: int = 50
    seed: int = 0

    @classmethod
    def from_dict(cls, d: dict) -> "QuerySpec":
        _require_keys(d, {"type", "count", "seed"}, "queries")
        spec = cls(**d)
        if spec.count < 1:
            raise ConfigError("queries.count must be >= 1")
        return spec


@dataclass(frozen=True)
class ExperimentConfig:
    graph: GraphSource
    algorithms: tuple[AlgorithmSpec, ...]
    queries: QuerySpec
    transformations: tuple[TransformSpec, ...] = (TransformSpec("identity"),)
    ks: tuple[int, ...] = (10, 50)
    workers: int = 1
    include_times: bool = True
    kendall_p: float = 0.5

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        _require_keys(
            d,
            {"graph", "transformations", "transformation", "algorithms",
             "queries", "k", "workers", "include_times", "kendall_p"},
            "config",
        )
        if "graph" not in d or "algorithms" not in d or "queries" not in d:
            raise ConfigError("config requires 'graph', 'algorithms' and 'queries'")
        if "transformation" in d and "transformations" in d:
            raise ConfigError("give either 'transformation' or 'transformations'")
        raw_transforms = d.get("transformations", None)
        if raw_transforms is None:
            single = d.get("transformation")
            raw_transforms = [single] if single is not None else [{"name": "identity"}]
        ks = tuple(d.get("k", (10, 50)))
        if not ks or any((not isinstance(k, int)) or k < 1 for k in ks):
            raise ConfigError(f"'k' must be a non-empty list of positive ints, got {ks}")
        workers = d.get("workers", 1)
        if not isinstance(workers, int) or workers < 1:
            raise ConfigError(f"'workers' must be a positive int, got {workers!r}")
        kendall_p = d.get("kendall_p", 0.5)
        cfg = cls(
            graph=GraphSource.from_dict(d["graph"]),
            transformations=tuple(TransformSpec.from_dict(t) for t in raw_transforms),
            algorithms=tuple(AlgorithmSpec.from_dict(a) for a in d["algorithms"]),
            queries=QuerySpec.from_dict(d["queries"]),
            ks=ks,
            workers=workers,
            include_times=bool(d.get("include_times", True)),
            kendall_p=kendall_p,
        )
        try:
            KendallParams(p=kendall_p).validate()
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad kendall_p: {exc}") from exc
        for alg in cfg.algorithms:
            if alg.name != "pathsim":
                continue
            for label, mp in (("metapath", alg.metapath),
                              ("translated_metapath", alg.translated_metapath)):
                if mp is None:
                    continue
                try:
                    steps = parse_metapath(mp)
                except (TypeError, ValueError) as exc:
                    raise ConfigError(f"bad {label} {mp!r}: {exc}") from exc
                if tuple(steps) != tuple(reversed(steps)):
                    raise ConfigError(f"{label} {mp!r} is not symmetric")
            if parse_metapath(alg.metapath)[0] != cfg.queries.type:
                raise ConfigError(
                    f"pathsim meta-path {alg.metapath!r} starts at type "
                    f"{parse_metapath(alg.metapath)[0]!r} but queries are of "
                    f"type {cfg.queries.type!r}"
                )
        return cfg

    @classmethod
    def from_json_file(cls, path: str) -> "ExperimentConfig":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config root must be a JSON object")
        return cls.from_dict(raw)


@dataclass(frozen=True)
class SizeInfo:
    transformation: str
    nodes_before: int
    edges_before: int
    nodes_after: int
    edges_after: int


@dataclass(frozen=True)
class ReportRow:
    algorithm: str
    transformation: str
    k: int
    status: str  # "ok" or "not_comparable"
    n_queries: int
    mean_diff: float | None = None
    median_diff: float | None = None
    min_diff: float | None = None
    max_diff: float | None = None
    time_orig_ms: float | None = None
    time_trans_ms: float | None = None


@dataclass(frozen=True)
class ExperimentReport:
    rows: tuple[ReportRow, ...]
    sizes: tuple[SizeInfo, ...]
    include_times: bool


def _sample_queries(g: TypedGraph, spec: QuerySpec) -> list[tuple[str, str]]:
    labels = [g.node(i).label for i in g.nodes_of_type(spec.type)]
    if not labels:
        raise ConfigError(f"graph has no nodes of query type {spec.type!r}")
    if spec.count > len(labels):
        raise ConfigError(
            f"queries.count={spec.count} exceeds the {len(labels)} nodes of "
            f"type {spec.type!r}"
        )
    rng = random.Random(spec.seed)
    return [(spec.type, lab) for lab in rng.sample(labels, spec.count)]


def _rank_all(estimator, queries: list[tuple[str, str]], k: int,
              workers: int) -> list[list[RankEntry]]:
    if workers == 1:
        return [estimator.rank(q, k) for q in queries]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map preserves input order, so results are worker-count independent
        return list(pool.map(lambda q: estimator.rank(q, k), queries))


def _translated_metapath(alg: AlgorithmSpec, transform) -> str | None:
    """The meta-path to use on the transformed side, or None if the cell is
    not comparable by an exact meta-path."""
    if alg.translated_metapath is not None:
        return alg.translated_metapath
    if transform.metapath_exact or alg.allow_closest:
        return format_metapath(transform.translate_metapath(alg.metapath))
    return None


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Execute the configured grid and gather the report."""
    base = cfg.graph.build()
    queries = _sample_queries(base, cfg.queries)
    kmax = max(cfg.ks)
    kendall = KendallParams(p=cfg.kendall_p)

    transformed: dict[str, TypedGraph] = {}
    sizes: list[SizeInfo] = []
    for tspec in cfg.transformations:
        t = tspec.make()
        out = t.transform(base)
        transformed[tspec.name] = out
        sizes.append(SizeInfo(tspec.name, base.n_nodes, base.n_edges,
                              out.n_nodes, out.n_edges))
        logger.info("transformation %s: %d/%d nodes/edges -> %d/%d",
                    tspec.name, base.n_nodes, base.n_edges, out.n_nodes, out.n_edges)

    rows: list[ReportRow] = []
    for alg in cfg.algorithms:
        t0 = time.perf_counter()
        orig_est = alg.make_estimator().fit(base)
        orig_rankings = _rank_all(orig_est, queries, kmax, cfg.workers)
        time_orig_ms = (time.perf_counter() - t0) * 1000.0

        for tspec in cfg.transformations:
            transform = tspec.make()
            if alg.name == "pathsim":
                try:
                    trans_mp = _translated_metapath(alg, transform)
                except NoEquivalentMetaPath:
                    trans_mp = None
            else:
                trans_mp = None
            if alg.name == "pathsim" and trans_mp is None:
                for k in cfg.ks:
                    rows.append(ReportRow(
                        algorithm=alg.name, transformation=tspec.name, k=k,
                        status="not_comparable", n_queries=len(queries),
                    ))
                logger.info("%s x %s: not comparable by exact meta-path",
                            alg.name, tspec.name)
                continue

            t1 = time.perf_counter()
            trans_est = alg.make_estimator(metapath=trans_mp).fit(transformed[tspec.name])
            trans_rankings = _rank_all(trans_est, queries, kmax, cfg.workers)
            time_trans_ms = (time.perf_counter() - t1) * 1000.0

            for k in cfg.ks:
                diffs = [
                    kendall_topk(r1[:k], r2[:k], kendall)
                    for r1, r2 in zip(orig_rankings, trans_rankings)
                ]
                rows.append(ReportRow(
                    algorithm=alg.name, transformation=tspec.name, k=k,
                    status="ok", n_queries=len(queries),
                    mean_diff=mean(diffs), median_diff=median(diffs),
                    min_diff=min(diffs), max_diff=max(diffs),
                    time_orig_ms=time_orig_ms, time_trans_ms=time_trans_ms,
                ))
                logger.info("%s x %s k=%d: mean diff %.6f",
                            alg.name, tspec.name, k, mean(diffs))

    return ExperimentReport(rows=tuple(rows), sizes=tuple(sizes),
                            include_times=cfg.include_times)


# -- rendering ----------------------------------------------------------------

TSV_COLUMNS = ("algorithm", "transformation", "k", "mean_diff", "median_diff",
               "time_orig_ms", "time_trans_ms")


def _fmt_diff(value: float | None, status: str) -> str:
    if status != "ok":
        return "not_comparable"
    return format(value, ".12g")


def _fmt_time(value: float | None, include_times: bool) -> str:
    if not include_times or value is None:
        return "NA"
    return format(value, ".3f")


def render_report(report: ExperimentReport, fmt: str = "tsv") -> str:
    """Deterministic textual report; see TSV_COLUMNS for the tsv layout."""
    if fmt == "tsv":
        lines = ["\t".join(TSV_COLUMNS)]
        for row in report.rows:
            lines.append("\t".join((
                row.algorithm, row.transformation, str(row.k),
                _fmt_diff(row.mean_diff, row.status),
                _fmt_diff(row.median_diff, row.status),
                _fmt_time(row.time_orig_ms, report.include_times),
                _fmt_time(row.time_trans_ms, report.include_times),
            )))
        return "".join(line + "\n" for line in lines)
    if fmt == "markdown":
        lines = ["# Ranking-difference report", ""]
        lines.append("## Graph sizes")
        lines.append("")
        lines.append("| transformation | nodes before | edges before | nodes after | edges after |")
        lines.append("|---|---|---|---|---|")
        for s in report.sizes:
            lines.append(f"| {s.transformation} | {s.nodes_before} | {s.edges_before} "
                         f"| {s.nodes_after} | {s.edges_after} |")
        lines.append("")
        lines.append("## Average ranking difference")
        lines.append("")
        lines.append("| algorithm | transformation | k | mean | median | min | max "
                     "| time orig (ms) | time trans (ms) |")
        lines.append("|---|---|---|---|---|---|---|---|---|")
        for row in report.rows:
            if row.status == "ok":
                cells = [
                    format(row.mean_diff, ".12g"), format(row.median_diff, ".12g"),
                    format(row.min_diff, ".12g"), format(row.max_diff, ".12g"),
                ]
            else:
                cells = ["not_comparable", "", "", ""]
            cells += [
                _fmt_time(row.time_orig_ms, report.include_times),
                _fmt_time(row.time_trans_ms, report.include_times),
            ]
            lines.append(f"| {row.algorithm} | {row.transformation} | {row.k} | "
                         + " | ".join(cells) + " |")
        return "".join(line + "\n" for line in lines)
    raise ValueError(f"unknown report format {fmt!r}")

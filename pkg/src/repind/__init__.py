"""Representation independence toolkit for typed graphs.

Measures how much link-based similarity rankings (random walk with restart,
SimRank, PathSim) change when a graph is rewritten into a structurally
different but information-equivalent form, using invertible transformations
and top-k Kendall ranking differences.
"""

from .datagen import GENERATORS, SIZE_PRESETS, GenParams, gen_dblp, gen_imdb, generate
from .exceptions import (
    AmbiguousMembership,
    AsymmetricMetaPath,
    ConfigError,
    DuplicateNode,
    GraphTooLarge,
    InvalidEdge,
    LengthMismatch,
    MalformedGroup,
    MalformedStar,
    MismatchedGroundSets,
    NodeNotFound,
    NoEquivalentMetaPath,
    NotInvertible,
    ParseError,
    RepindError,
    TransformError,
    TypeMismatch,
    UnknownType,
)
from .experiment import (
    AlgorithmSpec,
    ExperimentConfig,
    ExperimentReport,
    GraphSource,
    QuerySpec,
    ReportRow,
    SizeInfo,
    TransformSpec,
    render_report,
    run_experiment,
)
from .graph import Node, TypedGraph, from_tsv, graph_equal, load_graph, save_graph, to_tsv
from .metrics import (
    KendallParams,
    avg_ranking_difference,
    difference_summary,
    kendall_full,
    kendall_topk,
    ranking_difference,
)
from .similarity import (
    AlgorithmParams,
    PathCountTable,
    PathSim,
    RandomWalkWithRestart,
    RankEntry,
    SimRank,
    path_count,
    pathsim_scores,
    rank_topk,
    rwr_scores,
    rwr_scores_with_trace,
    simrank_all,
)
from .transforms import (
    FRESH_PREFIX,
    TRANSFORM_CLASSES,
    GroupNeighbors,
    IdentityTransform,
    InvertedRewrite,
    ReifyCopair,
    TransformationFamily,
    TriangleToStar,
    group_neighbors,
    make_transform,
    reify_copair,
    star_to_triangle,
    triangle_to_star,
    ungroup,
    unreify,
    verify_roundtrip,
)
from .validation import format_metapath, parse_metapath, resolve_node

__version__ = "0.1.0"

__all__ = [
    "AlgorithmParams",
    "AlgorithmSpec",
    "AmbiguousMembership",
    "AsymmetricMetaPath",
    "ConfigError",
    "DuplicateNode",
    "ExperimentConfig",
    "ExperimentReport",
    "FRESH_PREFIX",
    "GENERATORS",
    "GenParams",
    "GraphSource",
    "GraphTooLarge",
    "GroupNeighbors",
    "IdentityTransform",
    "InvalidEdge",
    "InvertedRewrite",
    "KendallParams",
    "LengthMismatch",
    "MalformedGroup",
    "MalformedStar",
    "MismatchedGroundSets",
    "Node",
    "NodeNotFound",
    "NoEquivalentMetaPath",
    "NotInvertible",
    "ParseError",
    "PathCountTable",
    "PathSim",
    "QuerySpec",
    "RandomWalkWithRestart",
    "RankEntry",
    "ReifyCopair",
    "RepindError",
    "ReportRow",
    "SIZE_PRESETS",
    "SimRank",
    "SizeInfo",
    "TRANSFORM_CLASSES",
    "TransformError",
    "TransformSpec",
    "TransformationFamily",
    "TriangleToStar",
    "TypeMismatch",
    "TypedGraph",
    "UnknownType",
    "avg_ranking_difference",
    "difference_summary",
    "format_metapath",
    "from_tsv",
    "gen_dblp",
    "gen_imdb",
    "generate",
    "graph_equal",
    "group_neighbors",
    "kendall_full",
    "kendall_topk",
    "load_graph",
    "make_transform",
    "parse_metapath",
    "path_count",
    "pathsim_scores",
    "rank_topk",
    "ranking_difference",
    "reify_copair",
    "render_report",
    "resolve_node",
    "rwr_scores",
    "rwr_scores_with_trace",
    "run_experiment",
    "save_graph",
    "simrank_all",
    "star_to_triangle",
    "to_tsv",
    "triangle_to_star",
    "ungroup",
    "unreify",
    "verify_roundtrip",
]

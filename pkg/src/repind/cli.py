"""Command line interface.

Subcommands: generate, transform, rank, compare, experiment, verify.
Exit codes: 0 success, 1 usage or validation error, 2 internal error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .exceptions import ConfigError, RepindError
from .experiment import ExperimentConfig, GraphSource, render_report, run_experiment
from .graph import load_graph, save_graph
from .metrics import KendallParams, ranking_difference
from .similarity import PathSim, RandomWalkWithRestart, SimRank
from .transforms import TRANSFORM_CLASSES, make_transform, verify_roundtrip

logger = logging.getLogger(__name__)


def _parse_value(text: str):
    """Best-effort typed literal: int, then float, then bare string."""
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def _parse_params(pairs: list[str] | None) -> dict:
    out = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise ConfigError(f"expected key=value, got {pair!r}")
        out[key] = _parse_value(value)
    return out


def _parse_bindings(text: str | None) -> dict[str, str]:
    """Role bindings like 'film=F,actor=A,character=C,star=S'."""
    out: dict[str, str] = {}
    if not text:
        return out
    for piece in text.split(","):
        role, sep, ntype = piece.partition("=")
        if not sep or not role or not ntype:
            raise ConfigError(f"expected role=Type bindings, got {piece!r}")
        out[role.strip()] = ntype.strip()
    return out


def _read_ranking(path: str) -> list[str]:
    """Keys from a ranking file: 'rank<TAB>type:label<TAB>score' lines."""
    keys = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) >= 2:
                keys.append(fields[1])
            elif len(fields) == 1:
                keys.append(fields[0].strip())
            else:
                raise ConfigError(f"{path}:{lineno}: unparseable ranking line")
    return keys


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- subcommand implementations ------------------------------------------------

def _cmd_generate(args) -> int:
    source = GraphSource.from_dict({
        "kind": args.kind,
        "seed": args.seed,
        "size": args.size,
        "params": _parse_params(args.param),
    })
    g = source.build()
    save_graph(g, args.out)
    logger.info("wrote %d nodes / %d edges to %s", g.n_nodes, g.n_edges, args.out)
    return 0


def _make_cli_transform(name: str, types: str | None):
    if name not in TRANSFORM_CLASSES:
        raise ConfigError(
            f"unknown transformation {name!r}; known: {sorted(TRANSFORM_CLASSES)}"
        )
    try:
        return make_transform(name, **_parse_bindings(types))
    except TypeError as exc:
        raise ConfigError(f"bad --types for {name!r}: {exc}") from exc


def _cmd_transform(args) -> int:
    g = load_graph(args.infile)
    t = _make_cli_transform(args.name, args.types)
    if args.inverse:
        t = t.inverted()
    out = t.transform(g)
    save_graph(out, args.out)
    logger.info("%s: %d/%d nodes/edges -> %d/%d", t.name,
                g.n_nodes, g.n_edges, out.n_nodes, out.n_edges)
    return 0


def _cmd_rank(args) -> int:
    g = load_graph(args.graph)
    params = _parse_params(args.param)
    try:
        if args.alg == "rwr":
            est = RandomWalkWithRestart(**params)
        elif args.alg == "simrank":
            est = SimRank(**params)
        else:
            if args.metapath is None:
                raise ConfigError("pathsim requires --metapath")
            if params:
                raise ConfigError("pathsim takes no --param options")
            est = PathSim(args.metapath)
    except TypeError as exc:
        raise ConfigError(f"bad --param for {args.alg!r}: {exc}") from exc
    est.fit(g)
    for i, entry in enumerate(est.rank(args.query, args.k), start=1):
        print(f"{i}\t{entry.ntype}:{entry.label}\t{entry.score:.12g}")
    return 0


def _cmd_compare(args) -> int:
    left = _read_ranking(args.left)
    right = _read_ranking(args.right)
    if args.k > 0:
        left, right = left[:args.k], right[:args.k]
    params = KendallParams(mode=args.mode, p=args.p).validate()
    print(format(ranking_difference(left, right, params), ".12g"))
    return 0


def _cmd_experiment(args) -> int:
    cfg = ExperimentConfig.from_json_file(args.config)
    report = run_experiment(cfg)
    _write_text(args.out, render_report(report, fmt=args.format))
    return 0


def _cmd_verify(args) -> int:
    g = load_graph(args.graph)
    t = _make_cli_transform(args.name, args.types)
    if verify_roundtrip(g, t):
        print(f"roundtrip ok: {t.name} on {args.graph}")
        return 0
    print(f"roundtrip FAILED: {t.name} on {args.graph}", file=sys.stderr)
    return 1


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repind",
        description="Representation-independence toolkit for typed graphs.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for info, -vv for debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a seeded synthetic graph")
    p.add_argument("--kind", required=True, choices=("imdb", "dblp"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", choices=("small", "medium", "large"), default=None)
    p.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="generator parameter override, repeatable")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("transform", help="rewrite a graph to an equivalent form")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--name", required=True,
                   choices=tuple(sorted(TRANSFORM_CLASSES)))
    p.add_argument("--inverse", action="store_true",
                   help="apply the inverse direction")
    p.add_argument("--types", default=None, metavar="ROLE=TYPE,...",
                   help="role bindings, e.g. film=F,actor=A,character=C,star=S")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("rank", help="top-k similarity ranking for one query")
    p.add_argument("--graph", required=True)
    p.add_argument("--alg", required=True, choices=("rwr", "simrank", "pathsim"))
    p.add_argument("--metapath", default=None, help="pathsim only, e.g. AFA")
    p.add_argument("--query", required=True, metavar="TYPE:LABEL")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="algorithm parameter, repeatable")
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("compare", help="ranking difference between two files")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--k", type=int, default=0,
                   help="truncate both lists to k first (0 = use as given)")
    p.add_argument("--mode", choices=("topk", "full"), default="topk")
    p.add_argument("--p", type=float, default=0.5,
                   help="penalty for pairs missing from a top-k list")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("experiment", help="run a configured experiment grid")
    p.add_argument("--config", required=True, help="JSON config file")
    p.add_argument("--format", choices=("tsv", "markdown"), default="tsv")
    p.add_argument("--out", default=None, help="report file (default stdout)")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("verify", help="check transform/inverse round-trip")
    p.add_argument("--graph", required=True)
    p.add_argument("--name", required=True,
                   choices=tuple(sorted(TRANSFORM_CLASSES)))
    p.add_argument("--types", default=None, metavar="ROLE=TYPE,...")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; fold into the documented code 1
        return 0 if exc.code in (0, None) else 1
    if args.verbose:
        logging.basicConfig(
            level=logging.DEBUG if args.verbose > 1 else logging.INFO,
            format="%(levelname)s %(name)s: %(message)s",
        )
    try:
        return args.func(args)
    except (RepindError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - safety net
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

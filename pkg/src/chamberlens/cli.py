"""Command-line pipeline: ingest, graph, communities, layout, score,
cluster, evaluate, synth, pipeline, plot.

Every stage reads and writes plain files (JSONL/JSON/CSV), so any stage
can be re-run or swapped in isolation; `pipeline` chains the standard
sequence from one JSON config. Logs go to stderr; stdout carries only
machine-readable output. Exit codes: 0 success, 1 validation error,
2 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Hashable, Sequence

from chamberlens import __version__
from chamberlens import cluster as cluster_mod
from chamberlens import community as community_mod
from chamberlens import concordance as concord_mod
from chamberlens import graph as graph_mod
from chamberlens import ingest as ingest_mod
from chamberlens import layout as layout_mod
from chamberlens import parallel, plotting
from chamberlens import style as style_mod
from chamberlens import synth as synth_mod
from chamberlens.errors import ChamberlensError, FormatError, ValidationError

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on bad usage; this CLI reserves 2
    for I/O problems, so usage errors are re-routed to exit 1."""

    def error(self, message):
        raise _UsageError(message)


# ---------------------------------------------------------------------------
# Pipeline configuration


@dataclass(frozen=True)
class PipelineConfig:
    """One JSON document driving the whole `pipeline` subcommand; all
    paths are resolved relative to the config file's directory."""

    input: Path
    outdir: Path
    format: str = "jsonl"
    csv_columns: dict[str, str] | None = None
    scorer: str = "baseline"
    features_in: Path | None = None
    feature_mode: str = "distribution"
    min_weight: int = 3
    seed: int = 0
    resolution: float = 1.0
    top_k: int = 6
    min_size: int = 10
    k: int | None = None
    restarts: int = 4
    max_iters: int = 300
    tol: float = 1e-6
    include_rest: bool = False

    def validate(self) -> None:
        if self.format not in ("csv", "jsonl"):
            raise ValidationError(f"format must be csv or jsonl, got {self.format!r}")
        if self.scorer not in ("baseline", "import"):
            raise ValidationError(
                f"scorer must be baseline or import, got {self.scorer!r}")
        if self.scorer == "import" and self.features_in is None:
            raise ValidationError("scorer=import requires features_in")
        if self.feature_mode not in ("distribution", "top1"):
            raise ValidationError(
                f"feature_mode must be distribution or top1, got {self.feature_mode!r}")
        if self.min_weight < 1:
            raise ValidationError("min_weight must be >= 1")
        if self.top_k < 1 or self.min_size < 0:
            raise ValidationError("top_k must be >= 1 and min_size >= 0")
        if self.k is not None and self.k < 1:
            raise ValidationError("k must be >= 1")
        if self.restarts < 1:
            raise ValidationError("restarts must be >= 1")


def load_config(path: str | Path) -> PipelineConfig:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise FormatError(f"{path}: config must be a JSON object")
    known = set(PipelineConfig.__dataclass_fields__)
    unknown = set(obj) - known
    if unknown:
        raise FormatError(f"{path}: unknown config keys: {sorted(unknown)}")
    for required in ("input", "outdir"):
        if required not in obj:
            raise FormatError(f"{path}: config key {required!r} is required")
    base = path.resolve().parent
    kwargs = dict(obj)
    for key in ("input", "outdir", "features_in"):
        if kwargs.get(key) is not None:
            kwargs[key] = (base / str(kwargs[key])).resolve()
    if kwargs.get("csv_columns") is not None:
        cols = kwargs["csv_columns"]
        if (not isinstance(cols, dict)
                or any(not isinstance(v, str) for v in cols.values())):
            raise FormatError(f"{path}: csv_columns must map names to strings")
    try:
        cfg = PipelineConfig(**kwargs)
    except TypeError as exc:
        raise FormatError(f"{path}: bad config value: {exc}") from exc
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# Stage functions: each subcommand and `pipeline` share these exactly.


def stage_ingest(in_path: Path, fmt: str, out_path: Path,
                 csv_columns: dict[str, str] | None = None) -> ingest_mod.ParseResult:
    result = ingest_mod.parse_dataset(in_path, fmt, csv_columns)
    ingest_mod.write_tweets_jsonl(result.records, out_path)
    log.info("ingest: %d records (%d skipped, %d duplicates) -> %s",
             len(result), result.skipped, result.duplicates, out_path)
    return result


def stage_graph(tweets_path: Path, out_path: Path,
                min_weight: int) -> graph_mod.InteractionGraph:
    records = ingest_mod.parse_dataset(tweets_path, "jsonl").records
    full = graph_mod.build_reply_graph(records)
    g = graph_mod.threshold_graph(full, min_weight)
    graph_mod.write_graph_json(g, out_path)
    log.info("graph: %d nodes, %d edges after min_weight=%d "
             "(%d nodes, %d edges before) -> %s",
             g.n_nodes, g.n_edges, min_weight, full.n_nodes, full.n_edges,
             out_path)
    return g


def stage_communities(graph_path: Path, out_path: Path, seed: int,
                      resolution: float, top_k: int, min_size: int,
                      ) -> tuple[community_mod.Partition, list[int]]:
    g = graph_mod.read_graph_json(graph_path)
    p = community_mod.louvain(g, seed, resolution)
    selected = community_mod.select_top_communities(p, g, top_k, min_size)
    community_mod.write_partition_json(p, g, selected, out_path)
    log.info("communities: %d found, modularity %.4f, selected %s -> %s",
             p.n_communities, p.modularity, selected, out_path)
    return p, selected


def stage_layout(graph_path: Path, out_path: Path, seed: int,
                 total_iters: int, cut: float,
                 repulsion: str) -> layout_mod.LayoutPositions:
    g = graph_mod.read_graph_json(graph_path)
    lp = layout_mod.openord_layout(g, seed, total_iters, cut, repulsion)
    layout_mod.write_layout_csv(lp, out_path)
    log.info("layout: %d nodes positioned -> %s", g.n_nodes, out_path)
    return lp


def stage_score(tweets_path: Path, out_path: Path, scorer: str = "baseline",
                features_in: Path | None = None) -> list[style_mod.StyleVector]:
    if scorer == "baseline":
        records = ingest_mod.parse_dataset(tweets_path, "jsonl").records
        scores = parallel.map_ordered(
            lambda r: style_mod.score_baseline(r.text), records)
        vectors = [style_mod.with_id(s, r.tweet_id)
                   for r, s in zip(records, scores)]
    elif scorer == "import":
        if features_in is None:
            raise ValidationError("scorer=import requires --features-in")
        imported = style_mod.import_features(features_in)
        vectors = list(imported.vectors)
    else:
        raise ValidationError(f"unknown scorer: {scorer!r}")
    style_mod.write_features_jsonl(vectors, out_path)
    log.info("score: %d vectors (%s) -> %s", len(vectors), scorer, out_path)
    return vectors


def stage_cluster(features_path: Path, out_path: Path, k: int, seed: int,
                  mode: str = "distribution", restarts: int = 1,
                  max_iters: int = 300, tol: float = 1e-6,
                  ) -> cluster_mod.TextClustering:
    vectors = list(style_mod.import_features(features_path).vectors)
    fm = style_mod.assemble_matrix(vectors, mode)
    std, _ = cluster_mod.standardize(fm)
    tc = cluster_mod.kmeans_best(std, k, seed, restarts, max_iters, tol)
    cluster_mod.write_clusters_json(tc, fm.tweet_ids, out_path)
    log.info("cluster: k=%d inertia %.2f in %d iterations -> %s",
             tc.k, tc.inertia, tc.iterations, out_path)
    return tc


def stage_evaluate(clusters_path: Path, partition_path: Path,
                   tweets_path: Path, features_path: Path | None,
                   report_path: Path, confusion_path: Path,
                   means_path: Path | None,
                   include_rest: bool = False) -> concord_mod.ConcordanceReport:
    _, _, _, labels = cluster_mod.read_clusters_json(clusters_path)
    _, communities, selected = community_mod.read_partition_json(partition_path)
    community_of_tweet = _tweet_communities(
        tweets_path, communities, selected, include_rest)
    m = concord_mod.confusion(labels, community_of_tweet)
    means = None
    if features_path is not None:
        vectors = list(style_mod.import_features(features_path).vectors)
        means, _ = concord_mod.community_style_means(
            vectors, community_of_tweet,
            communities=sorted(set(community_of_tweet.values()), key=str))
    report = concord_mod.build_report(m, means)
    concord_mod.write_report_json(report, report_path)
    concord_mod.write_confusion_csv(m, confusion_path)
    if means is not None and means_path is not None:
        concord_mod.write_means_csv(means, means_path)
    log.info("evaluate: matched accuracy %.4f (identity %.4f), "
             "nmi %.4f, ari %.4f -> %s",
             report.match.matched_accuracy, report.match.identity_accuracy,
             report.nmi, report.ari, report_path)
    return report


def _tweet_communities(tweets_path: Path, communities: dict[int, list[str]],
                       selected: Sequence[int],
                       include_rest: bool) -> dict[str, Hashable]:
    records = ingest_mod.parse_dataset(tweets_path, "jsonl").records
    community_of_user = {u: cid for cid, users in communities.items()
                         for u in users}
    chosen = set(selected) if selected else set(communities)
    out: dict[str, Hashable] = {}
    for r in records:
        cid = community_of_user.get(r.user_id)
        if cid is None:
            continue
        if cid in chosen:
            out[r.tweet_id] = cid
        elif include_rest:
            out[r.tweet_id] = "rest"
    return out


# ---------------------------------------------------------------------------
# Subcommand handlers


def _cmd_ingest(args) -> int:
    columns = None
    if args.csv_columns:
        try:
            columns = json.loads(args.csv_columns)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"--csv-columns is not valid JSON: {exc}") from exc
        if (not isinstance(columns, dict)
                or any(not isinstance(v, str) for v in columns.values())):
            raise ValidationError("--csv-columns must be a JSON object of strings")
    stage_ingest(args.in_path, args.format, args.out, columns)
    return EXIT_OK


def _cmd_graph(args) -> int:
    stage_graph(args.in_path, args.out, args.min_weight)
    return EXIT_OK


def _cmd_communities(args) -> int:
    stage_communities(args.in_path, args.out, args.seed, args.resolution,
                      args.top_k, args.min_size)
    return EXIT_OK


def _cmd_layout(args) -> int:
    stage_layout(args.in_path, args.out, args.seed, args.iters, args.cut,
                 args.repulsion)
    return EXIT_OK


def _cmd_score(args) -> int:
    stage_score(args.in_path, args.out, args.scorer, args.features_in)
    return EXIT_OK


def _cmd_cluster(args) -> int:
    if args.k is None and args.partition is None:
        raise ValidationError("cluster needs --k or --partition to set k")
    k = args.k
    if k is None:
        _, communities, selected = community_mod.read_partition_json(args.partition)
        k = len(selected) if selected else len(communities)
        log.info("cluster: k=%d taken from %s", k, args.partition)
    stage_cluster(args.in_path, args.out, k, args.seed, args.mode,
                  args.restarts, args.max_iters, args.tol)
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    if args.confusion is not None:
        m = concord_mod.parse_confusion_csv(args.confusion)
        if args.drop:
            row, col = _parse_drop(args.drop)
            m = concord_mod.drop_cluster(m, _find_id(m.row_ids, row),
                                         _find_id(m.col_ids, col))
        report = concord_mod.build_report(m)
        if args.report is not None:
            concord_mod.write_report_json(report, args.report)
        else:
            _print_report(report)
        log.info("evaluate: matched accuracy %.4f (identity %.4f)",
                 report.match.matched_accuracy, report.match.identity_accuracy)
        return EXIT_OK
    for required in ("clusters", "partition", "tweets"):
        if getattr(args, required) is None:
            raise ValidationError(
                f"evaluate needs --confusion or --clusters/--partition/--tweets "
                f"(missing --{required})")
    outdir = args.outdir
    outdir.mkdir(parents=True, exist_ok=True)
    report = stage_evaluate(
        args.clusters, args.partition, args.tweets, args.features,
        outdir / "report.json", outdir / "confusion.csv",
        outdir / "means.csv", args.include_rest)
    if args.drop:
        row, col = _parse_drop(args.drop)
        m = concord_mod.drop_cluster(report.matrix,
                                     _find_id(report.matrix.row_ids, row),
                                     _find_id(report.matrix.col_ids, col))
        dropped = concord_mod.build_report(m, report.per_community_means)
        concord_mod.write_report_json(dropped, outdir / "report_dropped.json")
        concord_mod.write_confusion_csv(m, outdir / "confusion_dropped.csv")
        log.info("evaluate: after dropping %s: matched accuracy %.4f",
                 args.drop, dropped.match.matched_accuracy)
    return EXIT_OK


def _parse_drop(text: str) -> tuple[str, str]:
    parts = text.split(",")
    if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
        raise ValidationError(
            f"--drop expects TEXT_CLUSTER,COMMUNITY, got {text!r}")
    return parts[0].strip(), parts[1].strip()


def _find_id(ids: tuple, token: str):
    for v in ids:
        if str(v) == token:
            return v
    raise ValidationError(f"id {token!r} not found among {list(map(str, ids))}")


def _print_report(report: concord_mod.ConcordanceReport) -> None:
    obj = {
        "matched_accuracy": report.match.matched_accuracy,
        "identity_accuracy": report.match.identity_accuracy,
        "matched_sum": report.match.matched_sum,
        "total": report.match.total,
        "matching": {str(r): str(c) for r, c in report.match.mapping.items()},
        "nmi": report.nmi,
        "ari": report.ari,
    }
    json.dump(obj, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")


def _cmd_synth(args) -> int:
    if args.spec is not None:
        spec = synth_mod.spec_from_json(args.spec)
    else:
        if args.k > len(synth_mod.DEFAULT_STYLE_MEANS):
            raise ValidationError(
                f"--k {args.k} exceeds the {len(synth_mod.DEFAULT_STYLE_MEANS)} "
                f"built-in style means; provide --spec with style_means")
        spec = synth_mod.SynthSpec(
            k=args.k,
            sizes=(args.size,) * args.k,
            p_in=args.p_in,
            p_out=args.p_out,
            weight_mean=args.weight_mean,
            tweets_per_user=args.tweets_per_user,
            style_means=synth_mod.DEFAULT_STYLE_MEANS[:args.k],
            style_noise=args.style_noise,
            seed=args.seed,
            lexicon_mode=args.lexicon_mode,
        )
        spec.validate()
    outdir = args.outdir
    outdir.mkdir(parents=True, exist_ok=True)
    result = synth_mod.generate(spec)
    ingest_mod.write_tweets_jsonl(result.records, outdir / "tweets.jsonl")
    style_mod.write_features_jsonl(result.vectors, outdir / "features.jsonl")
    synth_mod.write_truth_json(result, outdir / "truth.json")
    log.info("synth: %d tweets by %d users -> %s",
             len(result.records), len(result.community_of_user), outdir)
    return EXIT_OK


def _cmd_pipeline(args) -> int:
    cfg = load_config(args.config)
    run_pipeline(cfg)
    return EXIT_OK


def run_pipeline(cfg: PipelineConfig) -> concord_mod.ConcordanceReport:
    """ingest -> graph -> communities -> score -> cluster -> evaluate,
    reusing exactly the per-subcommand stage functions."""
    out = cfg.outdir
    out.mkdir(parents=True, exist_ok=True)
    stage_ingest(cfg.input, cfg.format, out / "tweets.jsonl", cfg.csv_columns)
    stage_graph(out / "tweets.jsonl", out / "graph.json", cfg.min_weight)
    _, selected = stage_communities(
        out / "graph.json", out / "partition.json", cfg.seed, cfg.resolution,
        cfg.top_k, cfg.min_size)
    stage_score(out / "tweets.jsonl", out / "features.jsonl", cfg.scorer,
                cfg.features_in)
    k = cfg.k if cfg.k is not None else max(1, len(selected))
    stage_cluster(out / "features.jsonl", out / "clusters.json", k, cfg.seed,
                  cfg.feature_mode, cfg.restarts, cfg.max_iters, cfg.tol)
    return stage_evaluate(
        out / "clusters.json", out / "partition.json", out / "tweets.jsonl",
        out / "features.jsonl", out / "report.json", out / "confusion.csv",
        out / "means.csv", cfg.include_rest)


def _cmd_plot(args) -> int:
    if (args.means is None) == (args.layout is None):
        raise ValidationError("plot needs exactly one of --means or --layout")
    if args.means is not None:
        points = _read_means_points(args.means)
        svg = plotting.render_means_svg(points)
    else:
        lp = layout_mod.read_layout_csv(args.layout)
        community_of_user = None
        if args.partition is not None:
            _, communities, selected = community_mod.read_partition_json(
                args.partition)
            chosen = set(selected) if selected else set(communities)
            community_of_user = {u: cid for cid, users in communities.items()
                                 if cid in chosen for u in users}
        svg = plotting.render_layout_svg(lp, community_of_user)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    log.info("plot -> %s", args.out)
    return EXIT_OK


def _read_means_points(path: Path) -> list[tuple[str, float, float]]:
    import csv as _csv

    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(_csv.reader(fh))
    if not rows or rows[0] != ["community", "feature", "mean"]:
        raise FormatError(f"{path}: expected header community,feature,mean")
    table: dict[str, dict[str, float]] = {}
    for row in rows[1:]:
        if len(row) != 3:
            raise FormatError(f"{path}: row with {len(row)} cells")
        try:
            table.setdefault(row[0], {})[row[1]] = float(row[2])
        except ValueError as exc:
            raise FormatError(f"{path}: non-numeric mean: {exc}") from exc
    def key(c: str):
        try:
            return (0, float(c))
        except ValueError:
            return (1, c)

    points = []
    for c in sorted(table, key=key):
        feats = table[c]
        if "neg" not in feats or "subjectivity" not in feats:
            raise FormatError(
                f"{path}: community {c!r} lacks neg/subjectivity means")
        points.append((c, feats["neg"], feats["subjectivity"]))
    return points


# ---------------------------------------------------------------------------
# Parser assembly


def build_parser() -> _Parser:
    parser = _Parser(prog="chamberlens",
                     description="Reply-graph community and style concordance pipeline")
    parser.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    common.add_argument("--quiet", action="store_true",
                        help="only warnings and errors on stderr")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("ingest", parents=[common],
                       help="parse a dataset into tweets.jsonl")
    p.add_argument("--in", dest="in_path", type=Path, required=True)
    p.add_argument("--format", choices=("csv", "jsonl"), required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--csv-columns", default=None,
                   help="JSON object remapping csv column names")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("graph", parents=[common],
                       help="build the thresholded reply graph")
    p.add_argument("--in", dest="in_path", type=Path, required=True,
                   help="tweets.jsonl")
    p.add_argument("--out", type=Path, required=True, help="graph.json")
    p.add_argument("--min-weight", type=int, default=3)
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("communities", parents=[common],
                       help="Louvain partition and top-community selection")
    p.add_argument("--in", dest="in_path", type=Path, required=True,
                   help="graph.json")
    p.add_argument("--out", type=Path, required=True, help="partition.json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--resolution", type=float, default=1.0)
    p.add_argument("--top-k", type=int, default=6)
    p.add_argument("--min-size", type=int, default=10)
    p.set_defaults(func=_cmd_communities)

    p = sub.add_parser("layout", parents=[common],
                       help="2-D force-directed layout")
    p.add_argument("--in", dest="in_path", type=Path, required=True,
                   help="graph.json")
    p.add_argument("--out", type=Path, required=True, help="layout.csv")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=750)
    p.add_argument("--cut", type=float, default=0.0)
    p.add_argument("--repulsion", choices=("grid", "exact"), default="grid")
    p.set_defaults(func=_cmd_layout)

    p = sub.add_parser("score", parents=[common],
                       help="score tweet style into features.jsonl")
    p.add_argument("--in", dest="in_path", type=Path, required=True,
                   help="tweets.jsonl")
    p.add_argument("--out", type=Path, required=True, help="features.jsonl")
    p.add_argument("--scorer", choices=("baseline", "import"),
                   default="baseline")
    p.add_argument("--features-in", type=Path, default=None,
                   help="features.jsonl to validate and pass through "
                        "(with --scorer import)")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("cluster", parents=[common],
                       help="k-means over style features")
    p.add_argument("--in", dest="in_path", type=Path, required=True,
                   help="features.jsonl")
    p.add_argument("--out", type=Path, required=True, help="clusters.json")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--partition", type=Path, default=None,
                   help="partition.json to take k from (selected count)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("distribution", "top1"),
                   default="distribution")
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--max-iters", type=int, default=300)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=_cmd_cluster)

    p = sub.add_parser("evaluate", parents=[common],
                       help="concordance between clusters and communities")
    p.add_argument("--confusion", type=Path, default=None,
                   help="evaluate a confusion matrix csv directly")
    p.add_argument("--clusters", type=Path, default=None, help="clusters.json")
    p.add_argument("--partition", type=Path, default=None,
                   help="partition.json")
    p.add_argument("--tweets", type=Path, default=None, help="tweets.jsonl")
    p.add_argument("--features", type=Path, default=None,
                   help="features.jsonl for per-community means")
    p.add_argument("--outdir", type=Path, default=Path("."),
                   help="where report.json/confusion.csv/means.csv go")
    p.add_argument("--report", type=Path, default=None,
                   help="with --confusion: write report.json here "
                        "instead of stdout")
    p.add_argument("--drop", default=None, metavar="CLUSTER,COMMUNITY",
                   help="also evaluate with this row and column removed")
    p.add_argument("--include-rest", action="store_true",
                   help="map tweets outside the selected communities to a "
                        "synthetic rest community instead of dropping them")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("synth", parents=[common],
                       help="generate a planted-communities dataset")
    p.add_argument("--outdir", type=Path, required=True)
    p.add_argument("--spec", type=Path, default=None,
                   help="JSON SynthSpec (overrides the individual flags)")
    p.add_argument("--k", type=int, default=6)
    p.add_argument("--size", type=int, default=50,
                   help="users per community")
    p.add_argument("--p-in", type=float, default=0.2)
    p.add_argument("--p-out", type=float, default=0.002)
    p.add_argument("--weight-mean", type=float, default=4.0)
    p.add_argument("--tweets-per-user", type=int, default=20)
    p.add_argument("--style-noise", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--lexicon-mode", action="store_true",
                   help="salt tweet texts with lexicon words matching the "
                        "planted means")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("pipeline", parents=[common],
                       help="run ingest through evaluate from one config")
    p.add_argument("--config", type=Path, required=True)
    p.set_defaults(func=_cmd_pipeline)

    p = sub.add_parser("plot", parents=[common],
                       help="render an SVG scatter from means.csv or layout.csv")
    p.add_argument("--means", type=Path, default=None)
    p.add_argument("--layout", type=Path, default=None)
    p.add_argument("--partition", type=Path, default=None,
                   help="partition.json for layout colors")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=_cmd_plot)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        return EXIT_VALIDATION
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"chamberlens: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SystemExit as exc:  # --help/--version exit through argparse
        return int(exc.code or 0)
    if getattr(args, "command", None) is None:
        parser.print_usage(sys.stderr)
        return EXIT_VALIDATION
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except ChamberlensError as exc:
        log.error("%s", exc)
        return EXIT_VALIDATION
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO


def entrypoint() -> None:
    sys.exit(main())

"""Batch command line: ``corpus`` -> ``index`` -> ``cluster`` / ``compare``.

Exit status is 0 on success, 1 for usage or parameter errors, 2 for I/O
or parse errors and 3 when ``--naive-check`` finds a disagreement.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .clustering import (
    DEFAULT_N,
    cluster_corpus,
    cluster_stats,
    format_clusters,
    format_report_jsonl,
    format_report_table,
    format_report_tsv,
)
from .context import WINDOW_POLICIES, build_context_index, dumps_index, load_index
from .corpus import build_corpus, dumps_corpus, load_corpus, read_documents
from .errors import DumpParseError, InputEncodingError, InvalidParameterError
from .similarity import format_pair_report, parse_threshold

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_CHECK = 0, 1, 2, 3
MAX_N = 16


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    inputs: list[str] = field(default_factory=list)
    ns: list[int] = field(default_factory=lambda: [DEFAULT_N])
    threshold: Fraction = Fraction(1, 5)
    min_frequency: int = 1
    ceiling: int | None = None
    out: Path | None = None
    fmt: str = "tsv"
    naive_check: bool = False
    threads: int = 1
    window: str = "complete"

    def validate(self) -> None:
        if not self.ns:
            raise UsageError("at least one window size is required")
        for n in self.ns:
            if not 1 <= n <= MAX_N:
                raise UsageError(f"window size must be between 1 and {MAX_N}, got {n}")
        if not 0 < self.threshold < Fraction(1, 2):
            raise UsageError("threshold must lie strictly between 0 and 0.5")
        if self.min_frequency < 1:
            raise UsageError("--min-freq must be >= 1")
        if self.ceiling is not None and self.ceiling < 1:
            raise UsageError("--ceiling must be >= 1")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")
        if self.naive_check and self.ceiling is not None:
            raise UsageError("--naive-check cannot be combined with --ceiling")


def _threshold(text: str) -> Fraction:
    try:
        return parse_threshold(text)
    except InvalidParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _ns(text: str) -> list[int]:
    try:
        ns = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid window list {text!r}") from None
    return ns


def _config(args) -> RunConfig:
    ns = args.n if isinstance(args.n, list) else ([args.n] if args.n is not None else [DEFAULT_N])
    cfg = RunConfig(
        inputs=list(getattr(args, "inputs", []) or []),
        ns=ns,
        threshold=getattr(args, "threshold", Fraction(1, 5)),
        min_frequency=getattr(args, "min_freq", 1),
        ceiling=getattr(args, "ceiling", None),
        out=Path(args.out) if args.out else None,
        fmt=getattr(args, "format", "tsv"),
        naive_check=getattr(args, "naive_check", False),
        threads=args.threads,
        window=getattr(args, "window", "complete"),
    )
    cfg.validate()
    return cfg


def _emit(cfg: RunConfig, name: str, text: str) -> None:
    cfg.out.mkdir(parents=True, exist_ok=True)
    with open(cfg.out / name, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _stdout(text: str) -> None:
    sys.stdout.buffer.write(text.encode("utf-8"))
    sys.stdout.flush()


def _load_corpus(path: str):
    try:
        return load_corpus(path)
    except DumpParseError as exc:
        raise DumpParseError(f"{path}: {exc}") from None


def _cluster_one(cfg: RunConfig, corpus, n: int, index=None):
    opts = dict(
        index=index,
        min_frequency=cfg.min_frequency,
        ceiling=cfg.ceiling,
        window=cfg.window,
        threads=cfg.threads,
    )
    cs, pairs = cluster_corpus(corpus, n, cfg.threshold, **opts)
    if cfg.naive_check:
        cs_ref, pairs_ref = cluster_corpus(corpus, n, cfg.threshold, engine="naive", **opts)
        if pairs_ref != pairs or cs_ref != cs:
            raise CheckFailed(f"indexed and all-pairs results differ for n={n}")
    return cs, pairs


# -- subcommands -------------------------------------------------------------


def _build_from_files(cfg: RunConfig, casefold: bool):
    docs = read_documents(cfg.inputs)
    try:
        return build_corpus(docs, casefold=casefold)
    except InputEncodingError as exc:
        exc.path = cfg.inputs[exc.document]
        raise


def cmd_corpus(args) -> None:
    cfg = _config(args)
    corpus = _build_from_files(cfg, args.casefold)
    text = dumps_corpus(corpus)
    if cfg.out:
        _emit(cfg, "corpus.txt", text)
    else:
        _stdout(text)


def cmd_index(args) -> None:
    cfg = _config(args)
    corpus = _load_corpus(args.corpus)
    text = dumps_index(build_context_index(corpus, cfg.ns[0], window=cfg.window))
    if cfg.out:
        _emit(cfg, f"index.n{cfg.ns[0]}.txt", text)
    else:
        _stdout(text)


def cmd_cluster(args) -> None:
    if args.index and args.n is not None:
        raise UsageError("give either --index or --n, not both")
    cfg = _config(args)
    corpus = _load_corpus(args.corpus)
    index = None
    if args.index:
        try:
            index = load_index(args.index, corpus)
        except DumpParseError as exc:
            raise DumpParseError(f"{args.index}: {exc}") from None
    n = index.n if index is not None else cfg.ns[0]
    cs, pairs = _cluster_one(cfg, corpus, n, index)
    _write_cluster_outputs(cfg, corpus, cs, pairs, args.pairs)


def _write_cluster_outputs(cfg, corpus, cs, pairs, with_pairs: bool) -> None:
    clusters_tsv = format_clusters(cs, corpus.vocabulary)
    record = cluster_stats(cs)
    if cfg.out:
        _emit(cfg, "clusters.tsv", clusters_tsv)
        _emit(cfg, "stats.txt", format_report_table([record]))
        _emit(cfg, "stats.jsonl", format_report_jsonl([record]))
        if with_pairs:
            _emit(cfg, "pairs.tsv", format_pair_report(pairs, corpus.vocabulary))
    _stdout(clusters_tsv if cfg.fmt == "tsv" else format_report_table([record]))


def cmd_compare(args) -> None:
    cfg = _config(args)
    corpus = _load_corpus(args.corpus)
    records = []
    for n in sorted(set(cfg.ns)):
        cs, _ = _cluster_one(cfg, corpus, n)
        records.append(cluster_stats(cs))
    if cfg.out:
        _emit(cfg, "report.txt", format_report_table(records))
        _emit(cfg, "report.jsonl", format_report_jsonl(records))
    _stdout(format_report_tsv(records) if cfg.fmt == "tsv" else format_report_table(records))


def cmd_run(args) -> None:
    cfg = _config(args)
    if cfg.out is None:
        raise UsageError("run requires --out")
    corpus = _build_from_files(cfg, args.casefold)
    n = cfg.ns[0]
    index = build_context_index(corpus, n, window=cfg.window)
    _emit(cfg, "corpus.txt", dumps_corpus(corpus))
    _emit(cfg, f"index.n{n}.txt", dumps_index(index))
    cs, pairs = _cluster_one(cfg, corpus, n, index)
    _write_cluster_outputs(cfg, corpus, cs, pairs, args.pairs)


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", metavar="DIR", help="write output files into DIR")
    common.add_argument(
        "--threads", type=int, default=os.cpu_count() or 1, metavar="K", help="worker cap (output is unaffected)"
    )

    scoring = _Parser(add_help=False)
    scoring.add_argument("--threshold", type=_threshold, default=Fraction(1, 5), help="e.g. 0.20 or 1/5 (default 0.20)")
    scoring.add_argument("--min-freq", type=int, default=1, help="only pair words seen this often (default 1)")
    scoring.add_argument("--ceiling", type=int, default=None, help="skip context words shared by more words than this during candidate generation")
    scoring.add_argument("--naive-check", action="store_true", help="recompute with all-pairs scoring and fail on any difference")
    scoring.add_argument("--window", choices=WINDOW_POLICIES, default="complete", help="context window policy")

    parser = _Parser(prog="ngram-cluster", description="n-gram context word clustering")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("corpus", parents=[common], help="build a corpus dump from UTF-8 text files")
    p.add_argument("inputs", nargs="+", metavar="TEXT")
    p.add_argument("--casefold", action="store_true", help="lower-case ASCII letters")
    p.set_defaults(func=cmd_corpus, n=None)

    p = sub.add_parser("index", parents=[common], help="build a context index dump")
    p.add_argument("corpus", metavar="CORPUS")
    p.add_argument("--n", type=int, default=DEFAULT_N, help="window size (default 3)")
    p.add_argument("--window", choices=WINDOW_POLICIES, default="complete")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("cluster", parents=[common, scoring], help="cluster one model")
    p.add_argument("corpus", metavar="CORPUS")
    p.add_argument("--index", metavar="INDEX", help="reuse an index dump built from CORPUS")
    p.add_argument("--n", type=int, default=None, help="window size when no --index is given (default 3)")
    p.add_argument("--pairs", action="store_true", help="also write pairs.tsv")
    p.add_argument("--format", choices=("tsv", "report"), default="tsv", help="stdout: clusters TSV or stats table")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("compare", parents=[common, scoring], help="compare several window sizes")
    p.add_argument("corpus", metavar="CORPUS")
    p.add_argument("--n", type=_ns, default=[3, 4, 5], help="comma-separated window sizes (default 3,4,5)")
    p.add_argument("--format", choices=("tsv", "report"), default="report", help="stdout: TSV or aligned table")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("run", parents=[common, scoring], help="corpus + index + cluster in one go")
    p.add_argument("inputs", nargs="+", metavar="TEXT")
    p.add_argument("--n", type=int, default=DEFAULT_N)
    p.add_argument("--casefold", action="store_true")
    p.add_argument("--pairs", action="store_true")
    p.add_argument("--format", choices=("tsv", "report"), default="tsv")
    p.set_defaults(func=cmd_run)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version, usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    prog = parser.prog
    try:
        args.func(args)
    except (UsageError, InvalidParameterError) as exc:
        print(f"{prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputEncodingError as exc:
        path = getattr(exc, "path", None)
        print(f"{prog}: error: {path + ': ' if path else ''}{exc}", file=sys.stderr)
        return EXIT_IO
    except (DumpParseError, OSError) as exc:
        print(f"{prog}: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CheckFailed as exc:
        print(f"{prog}: naive check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

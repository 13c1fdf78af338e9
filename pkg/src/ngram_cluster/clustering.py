"""Threshold rule, connected-component clusters and per-model statistics."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Collection, Iterable, Sequence

from .context import ContextIndex, build_context_index
from .corpus import Corpus, WordId
from .errors import InvalidParameterError
from .similarity import ScoredPair, all_pairs, candidate_pairs, pair_scores, parse_threshold

DEFAULT_N = 3
DEFAULT_THRESHOLD = Fraction(1, 5)
ENGINES = ("sparse", "inverted", "naive")


def similar_pairs(
    index: ContextIndex,
    threshold: Fraction | str | float = DEFAULT_THRESHOLD,
    *,
    words: Collection[WordId] | None = None,
    ceiling: int | None = None,
    engine: str = "sparse",
    threads: int = 1,
) -> list[ScoredPair]:
    """Pairs whose preceding AND following scores strictly exceed ``threshold``.

    ``engine`` picks how pairs are found; every engine returns the same
    list in ascending ``(a, b)`` order:

    * ``"sparse"``: blocked sparse-matrix join (default, fastest)
    * ``"inverted"``: :func:`candidate_pairs` then :func:`pair_scores`
    * ``"naive"``: score all ``V*(V-1)/2`` pairs

    ``ceiling`` is ignored by the naive engine, which is the reference
    for the other two only when no ceiling is set.
    """
    t = parse_threshold(threshold)
    if engine == "sparse":
        from ._sparse import threshold_pairs

        return threshold_pairs(index, t, words=words, ceiling=ceiling, threads=threads)
    if engine == "inverted":
        scored = (pair_scores(index, a, b) for a, b in candidate_pairs(index, words, ceiling))
    elif engine == "naive":
        scored = all_pairs(index, words)
    else:
        raise InvalidParameterError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    return [p for p in scored if p.exceeds(t)]


def eligible_words(corpus: Corpus, min_frequency: int = 1) -> list[WordId] | None:
    """Word ids occurring at least ``min_frequency`` times (``None`` = all)."""
    if min_frequency < 1:
        raise InvalidParameterError(f"min_frequency must be >= 1, got {min_frequency}")
    if min_frequency == 1:
        return None
    return [w for w, f in enumerate(corpus.frequencies) if f >= min_frequency]


class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        parent = self.parent
        root = parent.setdefault(x, x)
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx < ry:
                rx, ry = ry, rx
            self.parent[rx] = ry


@dataclass(frozen=True)
class ClusterSet:
    """Disjoint multi-word clusters found at one ``(n, threshold)`` setting."""

    n: int
    threshold: Fraction
    clusters: tuple[tuple[WordId, ...], ...]
    edge_count: int

    @property
    def words(self) -> set[WordId]:
        return {w for c in self.clusters for w in c}


def form_clusters(
    pairs: Iterable[ScoredPair | tuple[WordId, WordId]],
    n: int,
    threshold: Fraction,
    vocabulary: Sequence[str] | None = None,
) -> ClusterSet:
    """Connected components of the pair graph; unpaired words are omitted.

    Members are ordered by word string when ``vocabulary`` is given (by id
    otherwise) and clusters by their first member.
    """
    uf = _UnionFind()
    edges = 0
    for p in pairs:
        a, b = (p.a, p.b) if isinstance(p, ScoredPair) else p
        uf.union(a, b)
        edges += 1
    groups: dict[int, list[int]] = {}
    for w in uf.parent:
        groups.setdefault(uf.find(w), []).append(w)
    key = (lambda w: (vocabulary[w], w)) if vocabulary is not None else (lambda w: w)
    clusters = sorted((tuple(sorted(g, key=key)) for g in groups.values()), key=lambda c: key(c[0]))
    return ClusterSet(n, Fraction(threshold), tuple(clusters), edges)


@dataclass(frozen=True)
class ModelRecord:
    n: int
    threshold: Fraction
    clusters: int
    edges: int
    clustered_words: int
    max_cluster_size: int
    histogram: dict[int, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "threshold": _fmt_threshold(self.threshold),
            "clusters": self.clusters,
            "edges": self.edges,
            "clustered_words": self.clustered_words,
            "max_cluster_size": self.max_cluster_size,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


@dataclass(frozen=True)
class ModelReport:
    records: tuple[ModelRecord, ...] = ()

    def __iter__(self):
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)


def cluster_stats(cs: ClusterSet) -> ModelRecord:
    hist: dict[int, int] = {}
    for c in cs.clusters:
        hist[len(c)] = hist.get(len(c), 0) + 1
    return ModelRecord(
        n=cs.n,
        threshold=cs.threshold,
        clusters=len(cs.clusters),
        edges=cs.edge_count,
        clustered_words=sum(len(c) for c in cs.clusters),
        max_cluster_size=max((len(c) for c in cs.clusters), default=0),
        histogram=dict(sorted(hist.items())),
    )


def cluster_corpus(
    corpus: Corpus,
    n: int = DEFAULT_N,
    threshold: Fraction | str | float = DEFAULT_THRESHOLD,
    *,
    index: ContextIndex | None = None,
    min_frequency: int = 1,
    ceiling: int | None = None,
    window: str = "complete",
    engine: str = "sparse",
    threads: int = 1,
) -> tuple[ClusterSet, list[ScoredPair]]:
    """Index (unless ``index`` is given), pair and cluster one model."""
    t = parse_threshold(threshold)
    if index is None:
        index = build_context_index(corpus, n, window=window)
    pairs = similar_pairs(
        index, t, words=eligible_words(corpus, min_frequency), ceiling=ceiling, engine=engine, threads=threads
    )
    return form_clusters(pairs, index.n, t, corpus.vocabulary), pairs


def compare_models(
    corpus: Corpus,
    ns: Iterable[int],
    threshold: Fraction | str | float = DEFAULT_THRESHOLD,
    **options,
) -> ModelReport:
    """One :class:`ModelRecord` per window size, ordered by ``n``.

    ``options`` are forwarded to :func:`cluster_corpus`.
    """
    t = parse_threshold(threshold)
    records = []
    for n in sorted(set(ns)):
        cs, _ = cluster_corpus(corpus, n, t, **options)
        records.append(cluster_stats(cs))
    return ModelReport(tuple(records))


# -- output formats ------------------------------------------------------------


def _fmt_threshold(t: Fraction) -> float:
    return round(float(t), 6)


def format_clusters(cs: ClusterSet, vocabulary: Sequence[str]) -> str:
    lines = ["cluster_id\tword"]
    for cid, c in enumerate(cs.clusters):
        lines.extend(f"{cid}\t{vocabulary[w]}" for w in c)
    return "\n".join(lines) + "\n"


def _hist_text(h: dict[int, int]) -> str:
    return ",".join(f"{k}:{v}" for k, v in sorted(h.items())) or "-"


_COLUMNS = ("n", "threshold", "clusters", "edges", "clustered_words", "max_cluster_size", "histogram")


def _rows(records: Iterable[ModelRecord]) -> list[list[str]]:
    return [
        [
            str(r.n),
            f"{_fmt_threshold(r.threshold):g}",
            str(r.clusters),
            str(r.edges),
            str(r.clustered_words),
            str(r.max_cluster_size),
            _hist_text(r.histogram),
        ]
        for r in records
    ]


def format_report_table(records: Iterable[ModelRecord]) -> str:
    """Aligned plain-text table, one row per model."""
    rows = [list(_COLUMNS)] + _rows(records)
    widths = [max(len(r[i]) for r in rows) for i in range(len(_COLUMNS))]
    out = []
    for r in rows:
        cells = [c.rjust(w) for c, w in zip(r[:-1], widths)] + [r[-1]]
        out.append("  ".join(cells).rstrip())
    return "\n".join(out) + "\n"


def format_report_tsv(records: Iterable[ModelRecord]) -> str:
    rows = [list(_COLUMNS)] + _rows(records)
    return "\n".join("\t".join(r) for r in rows) + "\n"


def format_report_jsonl(records: Iterable[ModelRecord]) -> str:
    """Machine-readable report: one JSON object per line, one line per ``n``."""
    return "".join(json.dumps(r.to_json(), ensure_ascii=False, sort_keys=False) + "\n" for r in records)

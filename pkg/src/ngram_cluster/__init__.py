"""Word clustering from n-gram context similarity.

Typical use::

    from ngram_cluster import build_corpus, cluster_corpus

    corpus = build_corpus([text])
    clusters, pairs = cluster_corpus(corpus, n=3, threshold="0.20")
"""

__version__ = "0.1.0"

from .clustering import (
    ClusterSet,
    ModelRecord,
    ModelReport,
    cluster_corpus,
    cluster_stats,
    compare_models,
    form_clusters,
    similar_pairs,
)
from .context import (
    ContextIndex,
    ContextList,
    build_context_index,
    dump_index,
    following_context,
    load_index,
    preceding_context,
)
from .corpus import (
    Corpus,
    build_corpus,
    dump_corpus,
    load_corpus,
    segment_sentences,
    tokenize,
    word_frequency,
)
from .errors import (
    DigestMismatchError,
    DumpParseError,
    InputEncodingError,
    InvalidPairError,
    InvalidParameterError,
    NgramClusterError,
    UnknownWordError,
)
from .similarity import (
    ScoredPair,
    SideScore,
    candidate_pairs,
    match_count,
    pair_scores,
    parse_threshold,
    side_similarity,
)

__all__ = [
    "ClusterSet",
    "ContextIndex",
    "ContextList",
    "Corpus",
    "DigestMismatchError",
    "DumpParseError",
    "InputEncodingError",
    "InvalidPairError",
    "InvalidParameterError",
    "ModelRecord",
    "ModelReport",
    "NgramClusterError",
    "ScoredPair",
    "SideScore",
    "UnknownWordError",
    "build_context_index",
    "build_corpus",
    "candidate_pairs",
    "cluster_corpus",
    "cluster_stats",
    "compare_models",
    "dump_corpus",
    "dump_index",
    "following_context",
    "form_clusters",
    "load_corpus",
    "load_index",
    "match_count",
    "pair_scores",
    "parse_threshold",
    "preceding_context",
    "segment_sentences",
    "side_similarity",
    "similar_pairs",
    "tokenize",
    "word_frequency",
]

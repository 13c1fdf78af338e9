import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ngram_cluster import (
    ClusterSet,
    InvalidParameterError,
    build_context_index,
    build_corpus,
    cluster_corpus,
    cluster_stats,
    compare_models,
    form_clusters,
    pair_scores,
    similar_pairs,
)
from ngram_cluster.clustering import (
    eligible_words,
    format_clusters,
    format_report_jsonl,
    format_report_table,
    format_report_tsv,
)
from ngram_cluster.synthetic import random_text, synthetic_text

from oracles import closure_components

GOLDEN = Path(__file__).parent / "data" / "compare_golden.jsonl"
ENGINES = ["sparse", "inverted", "naive"]


@pytest.mark.parametrize("engine", ENGINES)
def test_similar_pairs_phrases(phrases, phrases_index, engine):
    pairs = similar_pairs(phrases_index, "0.20", engine=engine)
    assert [(phrases.vocabulary[p.a], phrases.vocabulary[p.b]) for p in pairs] == [("আগে", "পরে")]
    assert similar_pairs(phrases_index, "0.40", engine=engine) == []


def test_similar_pairs_hand_scored_040(phrases, phrases_index):
    # every pair of the example scores at most 1/3 on some side
    best = max(
        min(p.preceding.value, p.following.value)
        for p in similar_pairs(phrases_index, "0.01", engine="naive")
    )
    assert best == Fraction(1, 3)


@pytest.mark.parametrize("engine", ENGINES)
def test_similar_pairs_empty_index(engine):
    idx = build_context_index(build_corpus([]), 3)
    assert similar_pairs(idx, "0.2", engine=engine) == []


@pytest.mark.parametrize("t", ["0", "0.5", "0.75", "-1"])
def test_similar_pairs_threshold_range(phrases_index, t):
    with pytest.raises(InvalidParameterError):
        similar_pairs(phrases_index, t)


def test_unknown_engine(phrases_index):
    with pytest.raises(InvalidParameterError):
        similar_pairs(phrases_index, "0.2", engine="magic")


@pytest.mark.parametrize("engine", ENGINES)
def test_strict_threshold_at_exact_equality(engine):
    # n=1: x has one context word per side, y has four, one shared -> 1/5
    c = build_corpus(["p x q. p y q. r y s. t y u. v y w."])
    idx = build_context_index(c, 1)
    s = pair_scores(idx, c.id_of("x"), c.id_of("y"))
    assert (s.preceding.match, s.preceding.denom) == (1, 5)
    assert (s.following.match, s.following.denom) == (1, 5)
    assert similar_pairs(idx, Fraction(1, 5), engine=engine) == []
    assert similar_pairs(idx, "0.1999", engine=engine) == [s]


def test_form_clusters_examples():
    t = Fraction(1, 5)
    assert form_clusters([(0, 1), (1, 2)], 3, t).clusters == ((0, 1, 2),)
    assert form_clusters([], 3, t).clusters == ()
    assert form_clusters([(0, 1), (2, 3)], 3, t).clusters == ((0, 1), (2, 3))


def test_form_clusters_orders_by_word_string():
    vocab = ("z", "b", "a", "y")
    cs = form_clusters([(0, 3), (1, 2)], 3, Fraction(1, 5), vocabulary=vocab)
    assert cs.clusters == ((2, 1), (3, 0))
    assert format_clusters(cs, vocab) == "cluster_id\tword\n0\ta\n0\tb\n1\ty\n1\tz\n"


def test_cluster_stats_examples():
    t = Fraction(1, 5)
    cs = ClusterSet(3, t, ((0, 1), (2, 3, 4)), 4)
    r = cluster_stats(cs)
    assert (r.clusters, r.edges, r.clustered_words, r.max_cluster_size) == (2, 4, 5, 3)
    assert r.histogram == {2: 1, 3: 1}
    empty = cluster_stats(ClusterSet(3, t, (), 0))
    assert (empty.clusters, empty.edges, empty.clustered_words, empty.max_cluster_size) == (0, 0, 0, 0)
    assert empty.histogram == {}


def test_cluster_stats_phrases(phrases):
    cs, _ = cluster_corpus(phrases, 3, "0.20")
    r = cluster_stats(cs)
    assert r.clusters == 1 and r.histogram == {2: 1}


def test_compare_models_examples(phrases):
    assert len(compare_models(phrases, [])) == 0
    report = compare_models(phrases, {3})
    assert [(r.n, r.clusters) for r in report] == [(3, 1)]


def test_compare_models_golden():
    text = synthetic_text(1234, tokens=5000, vocab_size=300, classes=40)
    report = compare_models(build_corpus([text]), [5, 3, 4], "0.20")
    got = [json.loads(line) for line in format_report_jsonl(report).splitlines()]
    want = [json.loads(line) for line in GOLDEN.read_text(encoding="utf-8").splitlines()]
    assert got == want
    assert list(got[0]) == ["n", "threshold", "clusters", "edges", "clustered_words", "max_cluster_size", "histogram"]


def test_report_formats(phrases):
    report = compare_models(phrases, [3, 4], "1/5")
    table = format_report_table(report)
    assert table.splitlines()[0].split() == [
        "n", "threshold", "clusters", "edges", "clustered_words", "max_cluster_size", "histogram",
    ]
    assert table.splitlines()[1].split() == ["3", "0.2", "1", "1", "2", "2", "2:1"]
    tsv = format_report_tsv(report)
    assert tsv.splitlines()[2] == "4\t0.2\t0\t0\t0\t0\t-"


def test_min_frequency_filter():
    c = build_corpus(["a x b. a y b. a y b. c z d."])
    assert eligible_words(c, 1) is None
    assert eligible_words(c, 2) == sorted(c.id_of(w) for w in ("a", "y", "b"))
    with pytest.raises(InvalidParameterError):
        eligible_words(c, 0)
    cs_all, _ = cluster_corpus(c, 1, "0.2")
    cs_f, _ = cluster_corpus(c, 1, "0.2", min_frequency=2)
    assert cs_all.clusters == ((c.id_of("x"), c.id_of("y")),)
    assert cs_f.clusters == ()


def _random_corpus(seed, max_vocab=50, max_tokens=500):
    rng = random.Random(seed)
    return build_corpus([random_text(seed, rng.randint(1, max_tokens), rng.randint(2, max_vocab))])


@pytest.mark.parametrize("seed", range(30))
def test_engines_agree(seed):
    corpus = _random_corpus(seed)
    n = 1 + seed % 5
    for window in ("complete", "partial"):
        idx = build_context_index(corpus, n, window=window)
        for t in ("0.05", "0.2", "0.33"):
            ref = similar_pairs(idx, t, engine="naive")
            assert similar_pairs(idx, t, engine="inverted") == ref
            assert similar_pairs(idx, t, engine="sparse") == ref
            assert similar_pairs(idx, t, engine="sparse", threads=4) == ref


@pytest.mark.parametrize("seed", range(5))
def test_engines_agree_with_counts_above_level_cap(seed):
    # two-word vocabularies push context counts well past the level cap
    corpus = build_corpus([random_text(seed, 600, 2 + seed % 3, max_sentence=30)])
    idx = build_context_index(corpus, 2, window="partial")
    assert max(c for cl in idx.preceding for c in cl.counts.values()) > 32
    for t in ("0.05", "0.33", "0.45"):
        assert similar_pairs(idx, t, engine="sparse") == similar_pairs(idx, t, engine="naive")


@pytest.mark.parametrize("seed", range(10))
def test_sparse_and_inverted_agree_with_ceiling(seed):
    corpus = _random_corpus(seed + 500)
    idx = build_context_index(corpus, 2, window="partial")
    words = eligible_words(corpus, 2)
    for ceiling in (1, 3, 10):
        a = similar_pairs(idx, "0.05", engine="inverted", ceiling=ceiling, words=words)
        b = similar_pairs(idx, "0.05", engine="sparse", ceiling=ceiling, words=words)
        assert a == b
        assert set(a) <= set(similar_pairs(idx, "0.05", engine="naive", words=words))


@pytest.mark.parametrize("seed", range(15))
def test_edge_monotonicity(seed):
    corpus = _random_corpus(seed + 900)
    idx = build_context_index(corpus, 1 + seed % 3, window="partial")
    thresholds = [Fraction(k, 40) for k in range(1, 20)]
    previous = None
    for t in thresholds:
        pairs = set(similar_pairs(idx, t))
        if previous is not None:
            assert pairs <= previous
        previous = pairs


graphs = st.integers(1, 200).flatmap(
    lambda k: st.lists(st.tuples(st.integers(0, k - 1), st.integers(0, k - 1)), max_size=3 * k)
)


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_components_match_transitive_closure(edges):
    edges = sorted({(min(a, b), max(a, b)) for a, b in edges if a != b})
    cs = form_clusters(edges, 3, Fraction(1, 5))
    nodes = {w for e in edges for w in e}
    expected = {c for c in closure_components(nodes, edges) if len(c) > 1}
    assert {frozenset(c) for c in cs.clusters} == expected
    # partition: disjoint, union = endpoints, each cluster sorted
    flat = [w for c in cs.clusters for w in c]
    assert len(flat) == len(set(flat)) and set(flat) == nodes
    assert all(list(c) == sorted(c) for c in cs.clusters)
    assert cs.edge_count == len(edges)

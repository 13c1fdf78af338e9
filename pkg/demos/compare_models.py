"""Compare tri-, four- and five-gram clusterings of a synthetic corpus.

The generator hides a class-bigram model, so words from one class tend to
share neighbours. Wider windows demand longer shared contexts.

Run: python3 demos/compare_models.py
"""

from ngram_cluster import build_corpus, compare_models
from ngram_cluster.clustering import format_report_table
from ngram_cluster.synthetic import synthetic_text

text = synthetic_text(1234, tokens=5000, vocab_size=300, classes=40)
corpus = build_corpus([text])
print(f"corpus: {corpus.token_count} tokens, {corpus.vocab_size} words\n")

report = compare_models(corpus, [3, 4, 5], "0.20")
print(format_report_table(report))

# Lowering the threshold admits weaker pairs and merges clusters.
print(format_report_table(compare_models(corpus, [3, 4, 5], "0.10")))

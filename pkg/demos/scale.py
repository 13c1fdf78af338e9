"""Index and cluster a 100,000-token synthetic corpus with a five-word window.

Run: python3 demos/scale.py [tokens]
"""

import resource
import sys
import time

from ngram_cluster import build_context_index, build_corpus, cluster_corpus, cluster_stats
from ngram_cluster.synthetic import synthetic_text

tokens = int(sys.argv[1]) if len(sys.argv) > 1 else 100_000
text = synthetic_text(2024, tokens=tokens, vocab_size=8000, classes=400)

start = time.perf_counter()
corpus = build_corpus([text])
t_corpus = time.perf_counter()
index = build_context_index(corpus, 5)
t_index = time.perf_counter()
clusters, pairs = cluster_corpus(corpus, 5, "0.20", index=index)
t_cluster = time.perf_counter()

stats = cluster_stats(clusters)
print(f"{corpus.token_count} tokens, {corpus.vocab_size} words")
print(f"corpus {t_corpus - start:.2f} s, index {t_index - t_corpus:.2f} s, cluster {t_cluster - t_index:.2f} s")
print(f"{stats.clusters} clusters, {stats.edges} edges, largest {stats.max_cluster_size}")
print(f"peak RSS {resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024:.0f} MB")

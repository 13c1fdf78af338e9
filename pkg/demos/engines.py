"""The three pairing engines return identical pairs; only speed differs.

Run: python3 demos/engines.py
"""

import time

from ngram_cluster import build_context_index, build_corpus, similar_pairs
from ngram_cluster.synthetic import synthetic_text

corpus = build_corpus([synthetic_text(7, tokens=6000, vocab_size=600, classes=60)])
index = build_context_index(corpus, 3)

results = {}
for engine in ("naive", "inverted", "sparse"):
    start = time.perf_counter()
    results[engine] = similar_pairs(index, "0.15", engine=engine)
    print(f"{engine:9s} {len(results[engine]):4d} pairs in {time.perf_counter() - start:.3f} s")

assert results["naive"] == results["inverted"] == results["sparse"]
print("all engines agree")

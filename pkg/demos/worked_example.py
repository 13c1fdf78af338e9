"""Score and cluster four short Bangla phrases with a tri-gram window.

Run: python3 demos/worked_example.py
"""

from ngram_cluster import build_context_index, build_corpus, cluster_corpus, pair_scores

TEXT = "ভোরে সূর্য উঠার আগে।\nআগে খাওয়া শেষ করি।\nসকালে সূর্য উঠার পরে।\nপরে কাজটি শেষ করি।\n"

corpus = build_corpus([TEXT])
print(f"{corpus.token_count} tokens, {corpus.vocab_size} distinct words")

# Each word collects the three words before it and the three after it,
# never crossing a sentence boundary.
index = build_context_index(corpus, 3)
age, pore = corpus.id_of("আগে"), corpus.id_of("পরে")
for w in (age, pore):
    pre = [corpus.vocabulary[c] for c in index.preceding[w].counts]
    fol = [corpus.vocabulary[c] for c in index.following[w].counts]
    print(f"{corpus.vocabulary[w]}: before={pre} after={fol}")

# Side similarity is matched contexts over the combined list size, so two
# identical lists score 1/2 at most.
p = pair_scores(index, age, pore)
print(f"preceding {p.preceding.match}/{p.preceding.denom} = {p.preceding.display()}")
print(f"following {p.following.match}/{p.following.denom} = {p.following.display()}")

# Both sides must strictly exceed the threshold for an edge.
clusters, _ = cluster_corpus(corpus, 3, "0.20", index=index)
for c in clusters.clusters:
    print("cluster:", " ".join(corpus.vocabulary[w] for w in c))

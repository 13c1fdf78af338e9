"""Seeded synthetic Bangla-script corpora for tests, demos and benchmarks.

Text is drawn from a hidden class-bigram model: every word belongs to one
latent class, sentences walk a sparse random transition graph over
classes, and words are picked within a class with a Zipf-like skew.
Words from the same class therefore share contexts. Nothing in the
clustering pipeline imports this module.
"""

from __future__ import annotations

import numpy as np

_CONSONANTS = "কখগঘচছজঝটঠডঢতথদধনপফবভমযরলশষসহ"
_VOWEL_SIGNS = ["", "া", "ি", "ী", "ু", "ূ", "ে", "ো"]


def pseudo_word(i: int) -> str:
    """Deterministic pronounceable Bangla-script string for integer ``i``."""
    syllables = []
    base = len(_CONSONANTS) * len(_VOWEL_SIGNS)
    i += base  # at least two syllables
    while i:
        i, r = divmod(i, base)
        c, v = divmod(r, len(_VOWEL_SIGNS))
        syllables.append(_CONSONANTS[c] + _VOWEL_SIGNS[v])
    return "".join(reversed(syllables))


def synthetic_text(
    seed: int,
    tokens: int = 2000,
    vocab_size: int = 200,
    classes: int = 20,
    branching: int = 3,
    sentence_length: tuple[int, int] = (4, 12),
) -> str:
    """Generate roughly ``tokens`` words of danda-terminated sentences."""
    rng = np.random.default_rng(seed)
    classes = max(1, min(classes, vocab_size))
    word_class = np.arange(vocab_size) % classes
    members = [np.flatnonzero(word_class == c) for c in range(classes)]
    weights = [1.0 / np.arange(1, len(m) + 1) for m in members]
    weights = [w / w.sum() for w in weights]
    succ = [rng.choice(classes, size=min(branching, classes), replace=False) for _ in range(classes)]
    words = [pseudo_word(i) for i in range(vocab_size)]

    lo, hi = sentence_length
    lines = []
    produced = 0
    while produced < tokens:
        length = int(rng.integers(lo, hi + 1))
        length = min(length, tokens - produced)
        c = int(rng.integers(classes))
        sent = []
        for _ in range(length):
            sent.append(words[members[c][rng.choice(len(members[c]), p=weights[c])]])
            c = int(succ[c][rng.integers(len(succ[c]))])
        lines.append(" ".join(sent) + "।")
        produced += length
    return "\n".join(lines) + "\n"


def random_text(seed: int, tokens: int, vocab_size: int, max_sentence: int = 12) -> str:
    """Uniformly random word sequences; no hidden structure."""
    rng = np.random.default_rng(seed)
    words = [pseudo_word(i) for i in range(vocab_size)]
    out = []
    produced = 0
    while produced < tokens:
        length = min(int(rng.integers(1, max_sentence + 1)), tokens - produced)
        out.append(" ".join(words[i] for i in rng.integers(vocab_size, size=length)) + "।")
        produced += length
    return " ".join(out)

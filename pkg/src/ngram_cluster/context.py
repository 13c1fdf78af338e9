"""Per-word preceding and following context multisets for a window size n.

For every occurrence of a word the up-to-``n`` words immediately before
it, and the up-to-``n`` words immediately after it, are collected from
the same sentence; windows never cross a sentence boundary. Aggregating
those windows over all occurrences gives the word's two
:class:`ContextList` multisets.

Two window policies are supported:

``"complete"`` (default)
    An occurrence contributes a preceding window only if it has at least
    ``n`` words before it in its sentence, and likewise for the following
    window. Each contributed window is therefore an actual n-gram.

``"partial"``
    Windows are truncated at the sentence edge, so an occurrence at
    position ``p`` of a sentence of length ``L`` contributes ``min(n, p)``
    preceding and ``min(n, L - 1 - p)`` following words.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from typing import IO, Mapping, Sequence

from .corpus import Corpus, Sentence, WordId, _read_text, _write_text
from .errors import DigestMismatchError, DumpParseError, InvalidParameterError

INDEX_MAGIC = "CTXIDX"
INDEX_VERSION = "v1"
WINDOW_POLICIES = ("complete", "partial")


@dataclass(frozen=True)
class ContextList:
    """A multiset of context word ids with its total size."""

    counts: Mapping[WordId, int]
    total: int

    @classmethod
    def from_counts(cls, counts: Mapping[WordId, int]) -> "ContextList":
        items = sorted((w, c) for w, c in counts.items() if c > 0)
        return cls(dict(items), sum(c for _, c in items))

    @classmethod
    def from_words(cls, words: Sequence[WordId]) -> "ContextList":
        return cls.from_counts(Counter(words))

    def __len__(self) -> int:
        return len(self.counts)


EMPTY = ContextList({}, 0)


def _check_window(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidParameterError(f"window size must be an integer >= 1, got {n!r}")


def _check_position(sentence: Sentence, position: int) -> None:
    if not 0 <= position < len(sentence):
        raise IndexError(f"position {position} out of range for sentence of length {len(sentence)}")


def preceding_context(sentence: Sentence, position: int, n: int) -> list[WordId]:
    """Up to ``n`` words before ``position``, in surface (left-to-right) order."""
    _check_window(n)
    _check_position(sentence, position)
    return list(sentence[max(0, position - n) : position])


def following_context(sentence: Sentence, position: int, n: int) -> list[WordId]:
    """Up to ``n`` words after ``position``, in surface (left-to-right) order."""
    _check_window(n)
    _check_position(sentence, position)
    return list(sentence[position + 1 : position + 1 + n])


@dataclass(frozen=True)
class ContextIndex:
    """Preceding and following :class:`ContextList` for every word id.

    ``preceding[w]`` and ``following[w]`` are indexed by word id and cover
    the whole vocabulary; words without context map to an empty list.
    """

    n: int
    preceding: tuple[ContextList, ...]
    following: tuple[ContextList, ...]
    corpus_digest: str
    window: str = "complete"

    @property
    def vocab_size(self) -> int:
        return len(self.preceding)


def build_context_index(corpus: Corpus, n: int, window: str = "complete") -> ContextIndex:
    """Aggregate context windows of size ``n`` over every occurrence."""
    _check_window(n)
    if window not in WINDOW_POLICIES:
        raise InvalidParameterError(f"window policy must be one of {WINDOW_POLICIES}, got {window!r}")
    V = corpus.vocab_size
    pre = [Counter() for _ in range(V)]
    fol = [Counter() for _ in range(V)]
    partial = window == "partial"
    for sent in corpus.sentences:
        L = len(sent)
        for p, w in enumerate(sent):
            if partial or p >= n:
                pre[w].update(sent[max(0, p - n) : p])
            if partial or p + n < L:
                fol[w].update(sent[p + 1 : p + 1 + n])
    return ContextIndex(
        n=n,
        preceding=tuple(ContextList.from_counts(c) for c in pre),
        following=tuple(ContextList.from_counts(c) for c in fol),
        corpus_digest=corpus.source_digest,
        window=window,
    )


# -- dump format -------------------------------------------------------------


def _format_list(tag: str, wid: int, cl: ContextList) -> str:
    entries = " ".join(f"{u}:{c}" for u, c in cl.counts.items())
    return f"{tag}\t{wid}\t{entries}"


def dumps_index(index: ContextIndex) -> str:
    header = f"{INDEX_MAGIC} {INDEX_VERSION} n={index.n} vocab={index.vocab_size} digest={index.corpus_digest}"
    if index.window != "complete":
        header += f" window={index.window}"
    lines = [header]
    for w in range(index.vocab_size):
        lines.append(_format_list("P", w, index.preceding[w]))
        lines.append(_format_list("F", w, index.following[w]))
    return "\n".join(lines) + "\n"


def _parse_header(line: str) -> tuple[int, int, str, str]:
    parts = line.split(" ")
    if len(parts) < 5 or parts[0] != INDEX_MAGIC:
        raise DumpParseError("not a context index header", line=1)
    if parts[1] != INDEX_VERSION:
        raise DumpParseError(f"unsupported index dump version {parts[1]!r}", line=1)
    fields = {}
    for p in parts[2:]:
        key, sep, value = p.partition("=")
        if not sep or key in fields:
            raise DumpParseError(f"malformed header field {p!r}", line=1)
        fields[key] = value
    window = fields.pop("window", "complete")
    if set(fields) != {"n", "vocab", "digest"} or window not in WINDOW_POLICIES:
        raise DumpParseError("malformed index header fields", line=1)
    try:
        n, vocab = int(fields["n"]), int(fields["vocab"])
    except ValueError:
        raise DumpParseError("non-integer header value", line=1) from None
    if n < 1 or vocab < 0:
        raise DumpParseError("header value out of range", line=1)
    return n, vocab, fields["digest"], window


def _parse_list(line: str, tag: str, wid: int, vocab: int, lineno: int) -> ContextList:
    parts = line.split("\t")
    if len(parts) != 3 or parts[0] != tag or parts[1] != str(wid):
        raise DumpParseError(f"expected {tag!r} line for word {wid}", line=lineno)
    counts = {}
    prev = -1
    total = 0
    if parts[2]:
        for entry in parts[2].split(" "):
            u, sep, c = entry.partition(":")
            try:
                u, c = int(u), int(c)
            except ValueError:
                raise DumpParseError(f"malformed context entry {entry!r}", line=lineno) from None
            if not sep or not prev < u < vocab or c < 1:
                raise DumpParseError(f"invalid context entry {entry!r}", line=lineno)
            counts[u] = c
            total += c
            prev = u
    return ContextList(counts, total)


def loads_index(text: str, corpus: Corpus | None = None) -> ContextIndex:
    """Parse :func:`dumps_index` output.

    When ``corpus`` is given the header digest and vocabulary size must
    match it, otherwise :class:`DigestMismatchError` is raised.
    """
    if not text:
        raise DumpParseError("empty index dump", line=1)
    if not text.endswith("\n"):
        raise DumpParseError("missing final newline (truncated file?)", line=text.count("\n") + 1)
    lines = text[:-1].split("\n")
    n, vocab, digest, window = _parse_header(lines[0])
    expected = 1 + 2 * vocab
    if len(lines) != expected:
        raise DumpParseError(
            f"expected {expected} lines for vocab={vocab}, found {len(lines)}",
            line=min(len(lines), expected) + 1,
        )
    pre, fol = [], []
    for w in range(vocab):
        lineno = 2 + 2 * w
        pre.append(_parse_list(lines[lineno - 1], "P", w, vocab, lineno))
        fol.append(_parse_list(lines[lineno], "F", w, vocab, lineno + 1))
    if corpus is not None and (corpus.source_digest != digest or corpus.vocab_size != vocab):
        raise DigestMismatchError(
            f"index digest {digest} does not match corpus digest {corpus.source_digest}", line=1
        )
    return ContextIndex(n, tuple(pre), tuple(fol), digest, window)


def dump_index(index: ContextIndex, dest: str | os.PathLike | IO[str]) -> None:
    _write_text(dest, dumps_index(index))


def load_index(src: str | os.PathLike | IO[str], corpus: Corpus | None = None) -> ContextIndex:
    return loads_index(_read_text(src), corpus)

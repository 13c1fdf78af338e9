"""Text normalization, sentence segmentation, tokenization and interning.

A :class:`Corpus` is the immutable result of :func:`build_corpus`: every
sentence is a tuple of dense integer word ids, and ids are handed out in
first-occurrence order over the NFC-normalized input, so identical input
bytes always produce identical corpora.
"""

from __future__ import annotations

import hashlib
import os
import re
import unicodedata
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Iterable, Sequence

from .errors import DumpParseError, InputEncodingError, UnknownWordError

WordId = int
Sentence = tuple[WordId, ...]

CORPUS_MAGIC = "CORPUS"
CORPUS_VERSION = "v1"

# Danda, double danda, Latin full stop / question / exclamation, blank line.
_SENTENCE_BREAK = re.compile(r"[।॥.?!]|\n\s*\n")
_ASCII_LOWER = str.maketrans("ABCDEFGHIJKLMNOPQRSTUVWXYZ", "abcdefghijklmnopqrstuvwxyz")


def decode_text(data: str | bytes) -> str:
    """Return ``data`` as text, decoding bytes as strict UTF-8."""
    if isinstance(data, str):
        return data
    try:
        return bytes(data).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputEncodingError(exc.start, exc.reason) from None


def normalize(text: str | bytes) -> str:
    """NFC-normalize and convert CR/CRLF line endings to LF."""
    text = decode_text(text)
    if text.startswith("\ufeff"):
        text = text[1:]
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    return unicodedata.normalize("NFC", text)


def segment_sentences(text: str | bytes) -> list[str]:
    """Split text into raw sentence strings.

    Terminators (``।``, ``॥``, ``.``, ``?``, ``!`` and blank lines) are
    consumed. Text after the last terminator forms a final sentence and
    whitespace-only segments are dropped.

    >>> segment_sentences("ভোরে সূর্য উঠার আগে। আগে খাওয়া শেষ করি।")
    ['ভোরে সূর্য উঠার আগে', 'আগে খাওয়া শেষ করি']
    """
    text = normalize(text)
    out = []
    for seg in _SENTENCE_BREAK.split(text):
        seg = seg.strip()
        if seg:
            out.append(seg)
    return out


def _is_edge_char(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "PS"


def _strip_edges(token: str) -> str:
    start, end = 0, len(token)
    while start < end and _is_edge_char(token[start]):
        start += 1
    while end > start and _is_edge_char(token[end - 1]):
        end -= 1
    return token[start:end]


def tokenize(sentence: str, casefold: bool = False) -> list[str]:
    """Split on Unicode whitespace and strip edge punctuation/symbols.

    Interior punctuation such as the hyphen in a compound is kept. With
    ``casefold`` only ASCII letters are lowered.
    """
    tokens = []
    for raw in sentence.split():
        tok = _strip_edges(raw)
        if not tok:
            continue
        if casefold:
            tok = tok.translate(_ASCII_LOWER)
        tokens.append(tok)
    return tokens


@dataclass(frozen=True)
class Corpus:
    """Interned sentences plus the vocabulary that resolves their ids."""

    sentences: tuple[Sentence, ...]
    vocabulary: tuple[str, ...]
    token_count: int
    source_digest: str
    _ids: dict[str, WordId] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ids = {w: i for i, w in enumerate(self.vocabulary)}
        if len(ids) != len(self.vocabulary):
            raise ValueError("vocabulary contains duplicate words")
        object.__setattr__(self, "_ids", ids)

    @property
    def vocab_size(self) -> int:
        return len(self.vocabulary)

    @cached_property
    def frequencies(self) -> tuple[int, ...]:
        """Occurrence count of every word id, indexed by id."""
        counts = [0] * len(self.vocabulary)
        for sent in self.sentences:
            for w in sent:
                counts[w] += 1
        return tuple(counts)

    def id_of(self, word: str) -> WordId:
        try:
            return self._ids[word]
        except KeyError:
            raise UnknownWordError(f"word {word!r} is not in the vocabulary") from None

    def word(self, word_id: WordId) -> str:
        if not 0 <= word_id < len(self.vocabulary):
            raise UnknownWordError(f"word id {word_id} is not in the vocabulary")
        return self.vocabulary[word_id]

    def words(self, sentence: Sentence) -> list[str]:
        return [self.vocabulary[w] for w in sentence]


def _digest_update(h, doc: str) -> None:
    data = doc.encode("utf-8")
    h.update(b"%d\n" % len(data))
    h.update(data)


def build_corpus(documents: Iterable[str | bytes], casefold: bool = False) -> Corpus:
    """Normalize, segment, tokenize and intern ``documents`` in order.

    Sentences that contain no tokens after punctuation stripping are
    dropped. Undecodable bytes raise :class:`InputEncodingError` carrying
    the document index and byte offset.
    """
    h = hashlib.sha256()
    ids: dict[str, WordId] = {}
    vocabulary: list[str] = []
    sentences: list[Sentence] = []
    token_count = 0
    for doc_index, doc in enumerate(documents):
        try:
            text = normalize(doc)
        except InputEncodingError as exc:
            raise InputEncodingError(exc.offset, exc.reason, document=doc_index) from None
        _digest_update(h, text)
        for raw in segment_sentences(text):
            sent = []
            for tok in tokenize(raw, casefold=casefold):
                wid = ids.get(tok)
                if wid is None:
                    wid = ids[tok] = len(vocabulary)
                    vocabulary.append(tok)
                sent.append(wid)
            if sent:
                sentences.append(tuple(sent))
                token_count += len(sent)
    return Corpus(tuple(sentences), tuple(vocabulary), token_count, h.hexdigest())


def word_frequency(corpus: Corpus, word: WordId) -> int:
    """Total number of occurrences of ``word`` across all sentences."""
    if not isinstance(word, int) or not 0 <= word < corpus.vocab_size:
        raise UnknownWordError(f"word id {word!r} is not in the vocabulary")
    return corpus.frequencies[word]


# -- dump format -------------------------------------------------------------


def dumps_corpus(corpus: Corpus) -> str:
    lines = [
        f"{CORPUS_MAGIC} {CORPUS_VERSION} {corpus.vocab_size} "
        f"{corpus.token_count} {corpus.source_digest}"
    ]
    lines.extend(f"{i}\t{w}" for i, w in enumerate(corpus.vocabulary))
    lines.extend("S\t" + " ".join(map(str, s)) for s in corpus.sentences)
    return "\n".join(lines) + "\n"


def loads_corpus(text: str) -> Corpus:
    """Parse the text produced by :func:`dumps_corpus`."""
    if not text:
        raise DumpParseError("empty corpus dump", line=1)
    if not text.endswith("\n"):
        raise DumpParseError("missing final newline (truncated file?)", line=text.count("\n") + 1)
    lines = text[:-1].split("\n")
    header = lines[0].split(" ")
    if len(header) != 5 or header[0] != CORPUS_MAGIC:
        raise DumpParseError("not a corpus dump header", line=1)
    if header[1] != CORPUS_VERSION:
        raise DumpParseError(f"unsupported corpus dump version {header[1]!r}", line=1)
    try:
        vocab_size, token_count = int(header[2]), int(header[3])
    except ValueError:
        raise DumpParseError("malformed header counts", line=1) from None
    digest = header[4]
    if vocab_size < 0 or token_count < 0:
        raise DumpParseError("negative header counts", line=1)
    if len(lines) < 1 + vocab_size:
        raise DumpParseError(
            f"expected {vocab_size} vocabulary lines, found {len(lines) - 1}",
            line=len(lines) + 1,
        )

    vocabulary = []
    seen = set()
    for lineno in range(2, vocab_size + 2):
        parts = lines[lineno - 1].split("\t")
        if len(parts) != 2 or parts[0] != str(lineno - 2):
            raise DumpParseError("malformed vocabulary line", line=lineno)
        word = parts[1]
        if not word or word != word.strip() or len(word.split()) != 1:
            raise DumpParseError(f"invalid word {word!r}", line=lineno)
        if word in seen:
            raise DumpParseError(f"duplicate word {word!r}", line=lineno)
        seen.add(word)
        vocabulary.append(word)

    sentences = []
    total = 0
    for lineno in range(vocab_size + 2, len(lines) + 1):
        line = lines[lineno - 1]
        if not line.startswith("S\t") or len(line) == 2:
            raise DumpParseError("malformed sentence line", line=lineno)
        try:
            sent = tuple(int(x) for x in line[2:].split(" "))
        except ValueError:
            raise DumpParseError("non-integer word id", line=lineno) from None
        if any(not 0 <= w < vocab_size for w in sent):
            raise DumpParseError("word id out of range", line=lineno)
        sentences.append(sent)
        total += len(sent)
    if total != token_count:
        raise DumpParseError(
            f"token count {total} does not match header {token_count} (truncated file?)",
            line=len(lines) + 1,
        )
    return Corpus(tuple(sentences), tuple(vocabulary), token_count, digest)


def dump_corpus(corpus: Corpus, dest: str | os.PathLike | IO[str]) -> None:
    _write_text(dest, dumps_corpus(corpus))


def load_corpus(src: str | os.PathLike | IO[str]) -> Corpus:
    return loads_corpus(_read_text(src))


def _write_text(dest, text: str) -> None:
    if hasattr(dest, "write"):
        dest.write(text)
        return
    with open(dest, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _read_text(src) -> str:
    if hasattr(src, "read"):
        return src.read()
    with open(src, "rb") as fh:
        data = fh.read()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputEncodingError(exc.start, exc.reason) from None


def read_documents(paths: Sequence[str | os.PathLike]) -> list[bytes]:
    """Read raw bytes of every path, in order."""
    docs = []
    for p in paths:
        with open(p, "rb") as fh:
            docs.append(fh.read())
    return docs

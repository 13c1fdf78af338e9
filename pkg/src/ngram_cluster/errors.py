"""Exception types raised by the pipeline."""

from __future__ import annotations


class NgramClusterError(Exception):
    """Base class for all errors raised by :mod:`ngram_cluster`."""


class InvalidParameterError(NgramClusterError, ValueError):
    """A numeric or structural parameter is outside its allowed range."""


class InvalidPairError(InvalidParameterError):
    """A word pair was requested with both members equal."""


class UnknownWordError(NgramClusterError, KeyError):
    """A word id (or word string) does not resolve in the vocabulary."""

    def __str__(self) -> str:
        # KeyError.__str__ reprs its argument; keep messages readable.
        return str(self.args[0]) if self.args else ""


class InputEncodingError(NgramClusterError, ValueError):
    """Input bytes are not valid UTF-8.

    ``offset`` is the byte offset of the first offending byte inside the
    document; ``document`` is the index of the document within the batch
    passed to :func:`~ngram_cluster.corpus.build_corpus`, when known.
    """

    def __init__(self, offset: int, reason: str = "", document: int | None = None):
        self.offset = offset
        self.reason = reason
        self.document = document
        where = f"byte offset {offset}"
        if document is not None:
            where = f"document {document}, {where}"
        msg = f"invalid UTF-8 at {where}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class DumpParseError(NgramClusterError, ValueError):
    """A corpus or index dump file is malformed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DigestMismatchError(DumpParseError):
    """An index dump was built from a different corpus than the one supplied."""

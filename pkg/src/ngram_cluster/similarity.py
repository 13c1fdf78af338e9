"""Pairwise context similarity and candidate-pair generation.

The side similarity of two context multisets ``x`` and ``y`` is::

    match(x, y) / (|x| + |y|)      where match = sum_w min(x[w], y[w])

which lies in ``[0, 1/2]``. Scores are kept as integer numerator and
denominator so threshold tests are exact.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Collection, Iterable, Iterator, Sequence

from .context import ContextIndex, ContextList
from .corpus import WordId
from .errors import InvalidPairError, InvalidParameterError, UnknownWordError

MAX_SCORE = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class SideScore:
    match: int
    denom: int

    @property
    def value(self) -> Fraction:
        if self.denom == 0:
            return Fraction(0)
        return Fraction(self.match, self.denom)

    def exceeds(self, threshold: Fraction) -> bool:
        """Strict ``value > threshold`` by cross-multiplication."""
        return self.match * threshold.denominator > threshold.numerator * self.denom

    def display(self) -> str:
        return f"{float(self.value):.4f}"


@dataclass(frozen=True)
class ScoredPair:
    """An unordered word pair (``a < b``) with both side scores."""

    a: WordId
    b: WordId
    preceding: SideScore
    following: SideScore

    def exceeds(self, threshold: Fraction) -> bool:
        return self.preceding.exceeds(threshold) and self.following.exceeds(threshold)


def parse_threshold(value: str | float | Fraction) -> Fraction:
    """Turn ``"0.20"``, ``"1/5"``, ``0.2`` or a Fraction into an exact rational.

    Floats go through their shortest repr, so ``0.2`` becomes ``1/5``
    rather than the binary expansion.
    """
    try:
        if isinstance(value, float):
            t = Fraction(repr(value))
        else:
            t = Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise InvalidParameterError(f"threshold {value!r} is not a number") from None
    if not 0 < t < MAX_SCORE:
        raise InvalidParameterError(f"threshold must lie strictly between 0 and 0.5, got {value!r}")
    return t


def match_count(x: ContextList, y: ContextList) -> int:
    """Sum over context words of the smaller of the two counts."""
    xc, yc = x.counts, y.counts
    if len(xc) > len(yc):
        xc, yc = yc, xc
    total = 0
    for w, c in xc.items():
        d = yc.get(w)
        if d:
            total += c if c < d else d
    return total


def side_similarity(x: ContextList, y: ContextList) -> SideScore:
    return SideScore(match_count(x, y), x.total + y.total)


def _check_word(index: ContextIndex, w: WordId) -> None:
    if not isinstance(w, int) or not 0 <= w < index.vocab_size:
        raise UnknownWordError(f"word id {w!r} is not in the index")


def pair_scores(index: ContextIndex, a: WordId, b: WordId) -> ScoredPair:
    """Score ``(a, b)`` on both sides; the result is stored with ``a < b``."""
    _check_word(index, a)
    _check_word(index, b)
    if a == b:
        raise InvalidPairError(f"cannot score a word against itself (id {a})")
    if a > b:
        a, b = b, a
    return ScoredPair(
        a,
        b,
        side_similarity(index.preceding[a], index.preceding[b]),
        side_similarity(index.following[a], index.following[b]),
    )


def _eligible(index: ContextIndex, words: Collection[WordId] | None) -> list[WordId]:
    if words is None:
        return list(range(index.vocab_size))
    return sorted(set(words))


def _postings(
    lists: Sequence[ContextList], words: Iterable[WordId], ceiling: int | None
) -> dict[WordId, list[WordId]]:
    inv: dict[WordId, list[WordId]] = {}
    for w in words:
        for u in lists[w].counts:
            inv.setdefault(u, []).append(w)
    if ceiling is not None:
        inv = {u: ws for u, ws in inv.items() if len(ws) <= ceiling}
    return inv


def candidate_pairs(
    index: ContextIndex,
    words: Collection[WordId] | None = None,
    ceiling: int | None = None,
) -> Iterator[tuple[WordId, WordId]]:
    """Yield every pair sharing context on both sides, ascending ``(a, b)``.

    Two inverted indexes (context word -> words whose list contains it)
    replace the all-pairs scan. ``words`` restricts the pair endpoints.
    Context words listed under more than ``ceiling`` words are ignored
    for generation only; scores are always computed from full lists.
    """
    if ceiling is not None and ceiling < 1:
        raise InvalidParameterError(f"ceiling must be >= 1, got {ceiling}")
    eligible = _eligible(index, words)
    inv_pre = _postings(index.preceding, eligible, ceiling)
    inv_fol = _postings(index.following, eligible, ceiling)
    for a in eligible:
        near = set()
        for u in index.preceding[a].counts:
            post = inv_pre.get(u)
            if post:
                near.update(post[bisect_right(post, a) :])
        if not near:
            continue
        both = set()
        for u in index.following[a].counts:
            post = inv_fol.get(u)
            if post:
                both.update(b for b in post[bisect_right(post, a) :] if b in near)
        for b in sorted(both):
            yield a, b


def all_pairs(index: ContextIndex, words: Collection[WordId] | None = None) -> Iterator[ScoredPair]:
    """Score every pair of ``words`` (default: the whole vocabulary); O(V^2)."""
    eligible = _eligible(index, words)
    for i, a in enumerate(eligible):
        for b in eligible[i + 1 :]:
            yield pair_scores(index, a, b)


def format_pair_report(pairs: Iterable[ScoredPair], vocabulary: Sequence[str]) -> str:
    """TSV of scored pairs, with a header row, in the order given."""
    lines = ["word_a\tword_b\tpre_match\tpre_denom\tfol_match\tfol_denom\tpre_value\tfol_value"]
    for p in pairs:
        lines.append(
            f"{vocabulary[p.a]}\t{vocabulary[p.b]}\t"
            f"{p.preceding.match}\t{p.preceding.denom}\t"
            f"{p.following.match}\t{p.following.denom}\t"
            f"{p.preceding.display()}\t{p.following.display()}"
        )
    return "\n".join(lines) + "\n"

"""Vectorized exact threshold join over the context index.

The min-count overlap of two multisets decomposes into count levels::

    sum_u min(x_u, y_u) = sum_{k>=1} sum_u [x_u >= k][y_u >= k]

so each level is a product of 0/1 sparse matrices, ``B_k @ B_k.T``. The
first ``LEVEL_CAP`` levels are multiplied with scipy; the remainder,
``min(x_u - K, y_u - K)`` over entries where both counts exceed ``K``, is
rare and added exactly from a small inverted list. Rows are processed in
blocks so the dense score block stays bounded.
"""

from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Collection, Sequence

import numpy as np
import scipy.sparse as sp

from .context import ContextIndex, ContextList
from .similarity import ScoredPair, SideScore

LEVEL_CAP = 32
_BLOCK_CELLS = 4_000_000


class _Side:
    def __init__(self, lists: Sequence[ContextList], eligible: np.ndarray):
        V = len(lists)
        self.totals = np.fromiter((cl.total for cl in lists), dtype=np.int64, count=V)
        rows, cols, vals = [], [], []
        for w in np.flatnonzero(eligible):
            counts = lists[w].counts
            rows.extend([w] * len(counts))
            cols.extend(counts.keys())
            vals.extend(counts.values())
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        vals = np.asarray(vals, dtype=np.int64)
        top = int(vals.max()) if vals.size else 0
        self.levels = []
        for k in range(1, min(top, LEVEL_CAP) + 1):
            keep = vals >= k
            ones = np.ones(int(keep.sum()), dtype=np.int32)
            B = sp.csr_matrix((ones, (rows[keep], cols[keep])), shape=(V, V))
            self.levels.append((B, B.T.tocsr()))
        # excess[a][b] for a < b: overlap contributed above LEVEL_CAP
        self.excess: dict[int, dict[int, int]] = defaultdict(dict)
        high = vals > LEVEL_CAP
        if high.any():
            by_ctx = defaultdict(list)
            for w, u, c in zip(rows[high], cols[high], vals[high]):
                by_ctx[int(u)].append((int(w), int(c) - LEVEL_CAP))
            for entries in by_ctx.values():
                entries.sort()
                for i, (a, ca) in enumerate(entries):
                    for b, cb in entries[i + 1 :]:
                        row = self.excess[a]
                        row[b] = row.get(b, 0) + min(ca, cb)

    def block(self, start: int, stop: int) -> np.ndarray:
        """Overlap counts for rows ``start:stop`` against columns ``start:``."""
        acc = None
        for B, BT in self.levels:
            A = B[start:stop]
            if A.nnz == 0:
                break
            P = A @ BT
            acc = P if acc is None else acc + P
        V = self.totals.size
        if acc is None:
            out = np.zeros((stop - start, V - start), dtype=np.int64)
        else:
            out = acc.toarray()[:, start:].astype(np.int64)
        for a in range(start, stop):
            row = self.excess.get(a)
            if row:
                for b, v in row.items():
                    out[a - start, b - start] += v
        return out


def _passes(M: np.ndarray, denom: np.ndarray, t: Fraction) -> np.ndarray:
    p, q = t.numerator, t.denominator
    bound = int(denom.max(initial=0)) * max(p, q)
    if bound < 2**62:
        return M * q > denom * p
    # exact check happens afterwards; keep a float superset here
    return M > denom * (float(t) * (1 - 1e-9))


def threshold_pairs(
    index: ContextIndex,
    threshold: Fraction,
    words: Collection[int] | None = None,
    ceiling: int | None = None,
    threads: int = 1,
) -> list[ScoredPair]:
    """All pairs whose preceding and following scores both exceed ``threshold``.

    Equivalent to filtering the candidate stream through
    :func:`~ngram_cluster.similarity.pair_scores`; ordered by ``(a, b)``.
    """
    V = index.vocab_size
    if V < 2:
        return []
    eligible = np.zeros(V, dtype=bool)
    if words is None:
        eligible[:] = True
    else:
        eligible[list(words)] = True
    pre = _Side(index.preceding, eligible)
    fol = _Side(index.following, eligible)

    skip_pre = skip_fol = None
    if ceiling is not None:
        skip_pre = _skipped(index.preceding, eligible, ceiling)
        skip_fol = _skipped(index.following, eligible, ceiling)

    threads = max(1, int(threads))
    rows = max(1, _BLOCK_CELLS // (V * threads))
    starts = range(0, V, rows)

    def run(start: int) -> list[ScoredPair]:
        stop = min(V, start + rows)
        Mp = pre.block(start, stop)
        Mf = fol.block(start, stop)
        a_tot_p = pre.totals[start:stop, None]
        a_tot_f = fol.totals[start:stop, None]
        dp = a_tot_p + pre.totals[None, start:]
        df = a_tot_f + fol.totals[None, start:]
        ok = _passes(Mp, dp, threshold) & _passes(Mf, df, threshold)
        ok &= eligible[None, start:]
        ok &= eligible[start:stop, None]
        ok &= np.arange(start, V)[None, :] > np.arange(start, stop)[:, None]
        out = []
        for i, j in zip(*np.nonzero(ok)):
            a, b = start + int(i), start + int(j)
            pair = ScoredPair(a, b, SideScore(int(Mp[i, j]), int(dp[i, j])), SideScore(int(Mf[i, j]), int(df[i, j])))
            if not pair.exceeds(threshold):
                continue
            if ceiling is not None and not (
                _shares(index.preceding, a, b, skip_pre) and _shares(index.following, a, b, skip_fol)
            ):
                continue
            out.append(pair)
        return out

    if threads == 1 or len(starts) == 1:
        chunks = [run(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(run, starts))
    return [p for chunk in chunks for p in chunk]


def _skipped(lists: Sequence[ContextList], eligible: np.ndarray, ceiling: int) -> set[int]:
    df: dict[int, int] = defaultdict(int)
    for w in np.flatnonzero(eligible):
        for u in lists[w].counts:
            df[u] += 1
    return {u for u, c in df.items() if c > ceiling}


def _shares(lists: Sequence[ContextList], a: int, b: int, skip: set[int]) -> bool:
    ca, cb = lists[a].counts, lists[b].counts
    return any(u in cb and u not in skip for u in ca)

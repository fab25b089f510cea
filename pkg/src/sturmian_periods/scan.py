"""Vectorized block-period search over many factors of one long word.

Every factor of length n is identified with one occurrence position in a
long prefix S.  Window quantities (weights, k-gram counts, class ids) are
computed once per block length m over the whole of S, so deciding whether a
cut (h, m) works becomes a handful of array lookups shared by all factors.
"""

from __future__ import annotations

from typing import Callable

import numpy as np


def strided_cumsum(d: np.ndarray, m: int) -> np.ndarray:
    """x[i] = sum of d[j] over j <= i with j = i (mod m)."""
    size = len(d)
    pad = (-size) % m
    x = np.concatenate([d.astype(np.int64), np.zeros(pad, np.int64)])
    return x.reshape(-1, m).cumsum(axis=0).ravel()[:size]


class WindowIndex:
    def __init__(self, s: str):
        self.s = s
        self.n = len(s)
        self.arr = np.frombuffer(s.encode("ascii"), np.uint8).astype(np.int64) - 48
        self.ones = np.concatenate([[0], np.cumsum(self.arr)])
        self._cache: dict = {}

    def weights(self, m: int) -> np.ndarray:
        """Number of 1s in the window [i, i+m)."""
        return self.ones[m:] - self.ones[:-m]

    def gram_codes(self, j: int) -> np.ndarray:
        key = ("codes", j)
        if key not in self._cache:
            codes = np.zeros(self.n - j + 1, np.int64)
            for r in range(j):
                codes = codes * 2 + self.arr[r:self.n - j + 1 + r]
            self._cache[key] = codes
        return self._cache[key]

    def gram_prefix(self, j: int) -> dict[int, np.ndarray]:
        """For each j-gram code present, C[i] = occurrences starting before i."""
        key = ("gp", j)
        if key not in self._cache:
            codes = self.gram_codes(j)
            out = {}
            for c in np.unique(codes):
                out[int(c)] = np.concatenate([[0], np.cumsum(codes == c)])
            self._cache[key] = out
        return self._cache[key]

    def gram_counts(self, j: int, start: np.ndarray, length) -> np.ndarray:
        """Counts of each present j-gram inside [start, start+length); one column per gram."""
        pre = self.gram_prefix(j)
        length = np.broadcast_to(np.asarray(length), start.shape)
        end = np.maximum(start + length - j + 1, start)
        return np.stack([c[end] - c[start] for c in pre.values()], axis=-1)

    def class_ids(self, m: int, k: int) -> np.ndarray:
        """Ids of k-abelian classes of the windows [i, i+m); k = 1 gives weights."""
        key = ("cls", m, k)
        if key in self._cache:
            return self._cache[key]
        if k == 1:
            ids = self.weights(m)
        elif m <= 2 * k - 1:
            # the relation is equality here; id the window contents directly
            starts = np.arange(self.n - m + 1)
            if m <= 62:
                ids = self.gram_codes(m)
            else:
                _, ids = np.unique(
                    np.array([self.s[i:i + m] for i in starts]), return_inverse=True
                )
        else:
            starts = np.arange(self.n - m + 1)
            pre = self.gram_codes(k - 1)
            cols = [pre[starts], pre[starts + m - k + 1], self.gram_counts(k, starts, m).T]
            table = np.column_stack([cols[0], cols[1], *cols[2]])
            _, ids = np.unique(table, axis=0, return_inverse=True)
        ids = np.asarray(ids).ravel()
        self._cache[key] = ids
        return ids

    def block_changes(self, m: int, k: int) -> np.ndarray:
        key = ("chg", m, k)
        if key not in self._cache:
            ids = self.class_ids(m, k)
            self._cache[key] = strided_cumsum(ids[:-m] != ids[m:], m)
        return self._cache[key]

    def uniform_blocks(self, m: int, k: int, a: np.ndarray, count: int) -> np.ndarray:
        """Are the `count` consecutive m-blocks starting at each a in one class?"""
        if count <= 1:
            return np.ones(a.shape, bool)
        x = self.block_changes(m, k)
        last = x[a + (count - 2) * m]
        before = np.where(a >= m, x[np.maximum(a - m, 0)], 0)
        return last == before

    def parikh_within(self, start: np.ndarray, length: int, block_ones: np.ndarray, m: int) -> np.ndarray:
        """Parikh vector of [start, start+length) is contained in that of a block."""
        w = self.ones[start + length] - self.ones[start]
        return (w <= block_ones) & (length - w <= m - block_ones)

    def gp_within(self, start: np.ndarray, length: int, block: np.ndarray, m: int, k: int) -> np.ndarray:
        """Generalized Parikh vector (all orders <= k) of a fragment is <= that of a block."""
        ok = np.ones(start.shape, bool)
        for j in range(1, k + 1):
            if length < j:
                break
            ok &= np.all(self.gram_counts(j, start, length) <= self.gram_counts(j, block, m), axis=-1)
        return ok


FragmentCheck = Callable[[int, int, int, int, np.ndarray, np.ndarray], np.ndarray]


def block_period_search(
    index: WindowIndex,
    pos: np.ndarray,
    n: int,
    k: int,
    fragments_ok: FragmentCheck,
    no_block_ok: Callable[[int, int, int, np.ndarray], np.ndarray] | None = None,
    m_start: np.ndarray | int = 1,
) -> np.ndarray:
    """Least block length m per factor position.

    fragments_ok(m, h, K, t, pos, block_start) decides head and tail against the
    block class once the K full blocks are known to agree.  no_block_ok(m, h, n, pos)
    handles cuts where no full block fits (only meaningful for covering powers).
    """
    pos = np.asarray(pos, np.int64)
    result = np.full(pos.shape, n, np.int64)
    open_ = np.ones(pos.shape, bool)
    m_start = np.broadcast_to(np.asarray(m_start, np.int64), pos.shape)
    for m in range(max(1, int(m_start.min())), n):
        active = open_ & (m_start <= m)
        if not active.any():
            if not open_.any():
                break
            continue
        idx = np.nonzero(active)[0]
        found = np.zeros(idx.shape, bool)
        for h in range(0, min(m - 1, n - m) + 1):
            todo = ~found
            if not todo.any():
                break
            sub = idx[todo]
            p = pos[sub]
            K = (n - h) // m
            t = n - h - K * m
            a = p + h
            ok = index.uniform_blocks(m, k, a, K)
            if ok.any():
                sel = np.nonzero(ok)[0]
                ok[sel] = fragments_ok(m, h, K, t, p[sel], a[sel])
            found[np.nonzero(todo)[0][ok]] = True
        if no_block_ok is not None:
            for h in range(max(n - m + 1, 1), m):
                todo = ~found
                if not todo.any():
                    break
                sub = idx[todo]
                ok = no_block_ok(m, h, n, pos[sub])
                found[np.nonzero(todo)[0][ok]] = True
        done = idx[found]
        result[done] = m
        open_[done] = False
        if not open_.any():
            break
    return result

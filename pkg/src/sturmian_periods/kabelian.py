"""k-abelian equivalence and k-abelian periods in the covering and decomposition senses."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .abelian import FactorTable, factor_table
from .contfrac import SlopeContext, floor_ratio, norm_multiple
from .errors import EnumerationCapExceeded, PreconditionFailed
from .language import characteristic_prefix, factors_of_length
from .rotation import interval_extrema
from .scan import WindowIndex, block_period_search


def kgrams(w: str, k: int) -> Counter:
    return Counter(w[i:i + k] for i in range(len(w) - k + 1))


@dataclass(frozen=True)
class ClassKey:
    prefix: str
    suffix: str
    grams: tuple[tuple[str, int], ...]


def class_key(w: str, k: int) -> ClassKey:
    """Fingerprint of the ~_k class among words of length |w|."""
    if k < 1:
        raise ValueError("k must be >= 1")
    j = min(k - 1, len(w))
    return ClassKey(w[:j], w[len(w) - j:], tuple(sorted(kgrams(w, k).items())))


def generalized_parikh(w: str, k: int) -> tuple[int, ...]:
    """Occurrence counts of every nonempty word of length <= k (length, then lexicographic)."""
    out = []
    for j in range(1, k + 1):
        c = kgrams(w, j)
        out.extend(c.get("".join(x), 0) for x in itertools.product("01", repeat=j))
    return tuple(out)


def k_equivalent(u: str, v: str, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(u) != len(v):
        return False
    if len(u) >= k - 1:
        return class_key(u, k) == class_key(v, k)
    return generalized_parikh(u, k) == generalized_parikh(v, k)


def count_k_classes(ctx: SlopeContext, n: int, k: int) -> int:
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    return len({class_key(f, k) for f in factors_of_length(ctx, n)})


# De Bruijn feasibility -------------------------------------------------------

def trail_exists(edges: Counter, start: str, end: str) -> bool:
    """Is there a walk from start to end using exactly the given k-gram edges?

    Nodes are (k-1)-grams; the gram g runs from g[:-1] to g[1:].
    """
    if any(c < 0 for c in edges.values()):
        return False
    live = {g: c for g, c in edges.items() if c}
    if not live:
        return start == end
    bal: Counter = Counter()
    adj: dict[str, set[str]] = {}
    for g, c in live.items():
        a, b = g[:-1], g[1:]
        bal[a] += c
        bal[b] -= c
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    want = Counter()
    want[start] += 1
    want[end] -= 1
    if any(bal[v] != want[v] for v in set(bal) | set(want)):
        return False
    if start not in adj:
        return False
    seen, stack = {start}, [start]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(adj)


def left_completable(head: str, block: str, k: int) -> bool:
    """Is there x with |x| = |block| - |head| and x + head ~_k block?"""
    m, h = len(block), len(head)
    if h > m:
        return False
    if h == 0:
        return True
    if m <= 2 * k - 1:
        return block.endswith(head)
    if h < k - 1:
        return block.endswith(head)
    if k == 1:
        r = Counter(block)
        r.subtract(head)
        return all(c >= 0 for c in r.values())
    if head[h - k + 1:] != block[m - k + 1:]:
        return False
    r = kgrams(block, k)
    r.subtract(kgrams(head, k))
    return trail_exists(r, block[:k - 1], head[:k - 1])


def right_completable(tail: str, block: str, k: int) -> bool:
    """Is there y with tail + y ~_k block?"""
    m, t = len(block), len(tail)
    if t > m:
        return False
    if t == 0:
        return True
    if m <= 2 * k - 1 or t < k - 1:
        return block.startswith(tail)
    if k == 1:
        r = Counter(block)
        r.subtract(tail)
        return all(c >= 0 for c in r.values())
    if tail[:k - 1] != block[:k - 1]:
        return False
    r = kgrams(block, k)
    r.subtract(kgrams(tail, k))
    return trail_exists(r, tail[t - k + 1:], block[m - k + 1:])


def left_completable_brute(head: str, block: str, k: int) -> bool:
    key = class_key(block, k)
    pad = len(block) - len(head)
    return pad >= 0 and any(
        class_key("".join(x) + head, k) == key for x in itertools.product("01", repeat=pad)
    )


def right_completable_brute(tail: str, block: str, k: int) -> bool:
    key = class_key(block, k)
    pad = len(block) - len(tail)
    return pad >= 0 and any(
        class_key(tail + "".join(y), k) == key for y in itertools.product("01", repeat=pad)
    )


def _last(s: str, j: int) -> str:
    return s[max(0, len(s) - j):] if j else ""


def _completions(core: str, total: int, k: int, prepend: bool, cap: int) -> set:
    """Class keys (front, back, gram counts) of all words of length `total` extending core."""
    j = k - 1
    level = {(core[:j], _last(core, j), tuple(sorted(kgrams(core, k).items())))}
    for size in range(len(core), total):
        nxt = set()
        for front, back, grams in level:
            for a in "01":
                g = dict(grams)
                if prepend:
                    new = a if k == 1 else (a + front if size >= j else None)
                    nfront, nback = (a + front)[:j], _last(a + back, j) if size < j else back
                else:
                    new = a if k == 1 else (back + a if size >= j else None)
                    nfront, nback = front + a if size < j else front, _last(back + a, j)
                    nfront = nfront[:j]
                if new is not None:
                    g[new] = g.get(new, 0) + 1
                nxt.add((nfront, nback, tuple(sorted(g.items()))))
        level = nxt
        if len(level) > cap:
            raise EnumerationCapExceeded(f"more than {cap} partial classes while completing {core!r}")
    return level


def straddle_completable(head: str, tail: str, m: int, k: int, cap: int = 200_000) -> bool:
    """Are there U ~_k V of length m with U ending in head and V starting with tail?"""
    h, t = len(head), len(tail)
    if h >= m or t >= m:
        raise ValueError("fragments must be shorter than m")
    if has_period(head + tail, m):
        return True
    if m <= 2 * k - 1:
        return False
    # abelian necessary condition
    z = max(head.count("0"), tail.count("0"))
    o = max(head.count("1"), tail.count("1"))
    if z + o > m:
        return False
    left = _completions(head, m, k, prepend=True, cap=cap)
    right = _completions(tail, m, k, prepend=False, cap=cap)
    return not left.isdisjoint(right)


def straddle_completable_brute(head: str, tail: str, m: int, k: int) -> bool:
    lefts = {class_key("".join(x) + head, k) for x in itertools.product("01", repeat=m - len(head))}
    return any(
        class_key(tail + "".join(y), k) in lefts for y in itertools.product("01", repeat=m - len(tail))
    )


def has_period(w: str, m: int) -> bool:
    """Does w have ordinary period m?"""
    return all(w[i] == w[i + m] for i in range(len(w) - m))


# Periods ---------------------------------------------------------------------

def has_sense1_period(w: str, m: int, k: int, brute: bool = False) -> bool:
    """Is w a factor of a k-abelian power with block length m and at least two blocks?"""
    n = len(w)
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= |w|")
    left = left_completable_brute if brute else left_completable
    right = right_completable_brute if brute else right_completable
    for h in range(m):
        count = (n - h) // m
        if count == 0:
            if h == 0 or n - h == 0:
                continue
            ok = (straddle_completable_brute if brute else straddle_completable)(w[:h], w[h:], m, k)
            if ok:
                return True
            continue
        blocks = [w[h + i * m:h + (i + 1) * m] for i in range(count)]
        key = class_key(blocks[0], k)
        if any(class_key(b, k) != key for b in blocks[1:]):
            continue
        tail = w[h + count * m:]
        if left(w[:h], blocks[0], k) and right(tail, blocks[0], k):
            return True
    return False


def sense1_min_period(w: str, k: int, brute: bool = False) -> int:
    if not w or k < 1:
        raise ValueError("need a nonempty word and k >= 1")
    return next(m for m in range(1, len(w) + 1) if has_sense1_period(w, m, k, brute))


def has_sense2_period(w: str, m: int, k: int) -> bool:
    """Decomposition with ~_k blocks and head/tail generalized-Parikh-contained in a block."""
    n = len(w)
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= |w|")
    for h in range(min(m - 1, n - m) + 1):
        count = (n - h) // m
        blocks = [w[h + i * m:h + (i + 1) * m] for i in range(count)]
        if any(not k_equivalent(b, blocks[0], k) for b in blocks[1:]):
            continue
        gp = generalized_parikh(blocks[0], k)
        tail = w[h + count * m:]
        if all(
            all(x <= y for x, y in zip(generalized_parikh(f, k), gp)) for f in (w[:h], tail)
        ):
            return True
    return False


def sense2_min_period(w: str, k: int) -> int:
    if not w or k < 1:
        raise ValueError("need a nonempty word and k >= 1")
    return next(m for m in range(1, len(w) + 1) if has_sense2_period(w, m, k))


# Sweeps ----------------------------------------------------------------------

def _sense2_fragments(index: WindowIndex, k: int):
    def check(m, h, K, t, p, a):
        return index.gp_within(p, h, a, m, k) & index.gp_within(a + K * m, t, a, m, k)

    return check


def _sense1_fragments(index: WindowIndex, k: int, memo: dict):
    s = index.s

    def check(m, h, K, t, p, a):
        out = np.empty(p.shape, bool)
        ids = index.class_ids(m, k)
        for i, (pi, ai) in enumerate(zip(p.tolist(), a.tolist())):
            c = int(ids[ai])
            head = s[pi:pi + h]
            tail = s[ai + K * m:ai + K * m + t]
            kl = ("L", m, c, head)
            if kl not in memo:
                memo[kl] = left_completable(head, s[ai:ai + m], k)
            if not memo[kl]:
                out[i] = False
                continue
            kr = ("R", m, c, tail)
            if kr not in memo:
                memo[kr] = right_completable(tail, s[ai:ai + m], k)
            out[i] = memo[kr]
        return out

    def straddle(m, h, n, p):
        out = np.empty(p.shape, bool)
        for i, pi in enumerate(p.tolist()):
            key = ("S", m, s[pi:pi + h], s[pi + h:pi + n])
            if key not in memo:
                memo[key] = straddle_completable(key[2], key[3], m, k)
            out[i] = memo[key]
        return out

    return check, straddle


class KTable:
    """k-abelian minimum periods for every factor of length <= L."""

    def __init__(self, ctx: SlopeContext, max_len: int, k: int):
        self.table: FactorTable = factor_table(ctx, max_len)
        self.k = k
        self.memo: dict = {}

    def sense2(self, n: int) -> dict[str, int]:
        words, pos = self.table.factors(n)
        idx = self.table.index
        mu = block_period_search(idx, pos, n, self.k, _sense2_fragments(idx, self.k))
        return dict(zip(words, mu.tolist()))

    def sense1(self, n: int) -> dict[str, int]:
        words, pos = self.table.factors(n)
        idx = self.table.index
        check, straddle = _sense1_fragments(idx, self.k, self.memo)
        # a covering k-abelian power is also a covering abelian power
        floor = np.array([self.table.abelian_periods(n)[w] for w in words])
        mu = block_period_search(idx, pos, n, self.k, check, straddle, m_start=floor)
        return dict(zip(words, mu.tolist()))


def k_period_set(ctx: SlopeContext, max_len: int, k: int, sense: int):
    """(set of minimum k-abelian periods, first witness per period) over factors of length <= L."""
    if sense not in (1, 2):
        raise ValueError("sense must be 1 or 2")
    table = KTable(ctx, max_len, k)
    values, witness = set(), {}
    for n in range(1, max_len + 1):
        per = table.sense1(n) if sense == 1 else table.sense2(n)
        for w, mu in sorted(per.items()):
            if mu not in values:
                values.add(mu)
                witness[mu] = w
    return values, witness


# Exponent estimate -------------------------------------------------------------

def max_k_power_exponent(text: str, m: int, k: int) -> int:
    """Longest run of consecutive ~_k blocks of length m in text, over all phases."""
    ids = WindowIndex(text).class_ids(m, k)
    best = 0
    for r in range(m):
        seq = ids[r::m]
        if len(seq) == 0:
            continue
        cuts = np.nonzero(np.diff(seq) != 0)[0]
        edges = np.concatenate([[-1], cuts, [len(seq) - 1]])
        best = max(best, int(np.diff(edges).max()))
    return best


def k_exponent_estimate(ctx: SlopeContext, m: int, k: int, horizon: int | None = None) -> tuple[int, int]:
    """(floor(maxL(2k-2) / ||m alpha||), largest k-abelian power exponent of period m seen)."""
    if m < 1 or k < 1:
        raise ValueError("m and k must be >= 1")
    _, th = norm_multiple(ctx, m)
    lo, hi = interval_extrema(ctx, 2 * k - 2)
    if ctx.sign(lo - th) <= 0:
        raise PreconditionFailed(f"||{m}α|| is not below the shortest interval of length {2 * k - 2}")
    est = floor_ratio(ctx, hi, th)
    size = horizon or max(4096, 8 * (est + 2) * m)
    scanned = 0
    for _ in range(3):
        scanned = max(scanned, max_k_power_exponent(characteristic_prefix(ctx, size), m, k))
        if abs(scanned - est) <= 1:
            break
        size *= 2
    return est, scanned

"""Period-set sweeps over all factors up to a length, split across worker processes."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor

from ..abelian import factor_table
from ..contfrac import SlopeContext, denominator_sets
from ..kabelian import KTable

MODES = ("abelian", "ordinary", "kabelian")


def _periods(ctx: SlopeContext, L: int, lengths, mode: str, k: int, sense: int) -> dict[int, dict[str, int]]:
    if mode == "kabelian":
        table = KTable(ctx, L, k)
        per_length = table.sense1 if sense == 1 else table.sense2
    else:
        table = factor_table(ctx, L)
        per_length = table.abelian_periods if mode == "abelian" else table.ordinary_periods
    return {n: per_length(n) for n in lengths}


def _worker(args):
    spec, max_terms, L, lengths, mode, k, sense = args
    return _periods(SlopeContext(spec, max_terms), L, lengths, mode, k, sense)


def sweep(ctx: SlopeContext | str, L: int, mode: str = "abelian", k: int = 1, sense: int = 1,
          workers: int = 1, max_terms: int = 64, factors: bool = False) -> dict:
    """Minimum periods of every factor of length <= L, merged into one deterministic summary.

    Lengths are dealt round-robin to `workers` processes; the merged output does
    not depend on how many there were.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if mode == "kabelian" and (k < 1 or sense not in (1, 2)):
        raise ValueError("need k >= 1 and sense in (1, 2)")
    if isinstance(ctx, str):
        ctx = SlopeContext(ctx, max_terms)
    lengths = list(range(1, L + 1))
    if workers <= 1:
        per = _periods(ctx, L, lengths, mode, k, sense)
    else:
        jobs = [(ctx.spec, ctx.max_terms, L, lengths[w::workers], mode, k, sense) for w in range(workers)]
        per = {}
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_worker, jobs):
                per.update(part)

    values, witness, by_length = set(), {}, {}
    for n in lengths:
        row = per[n]
        by_length[n] = dict(sorted(Counter(row.values()).items()))
        for w in sorted(row):
            if row[w] not in witness:
                witness[row[w]] = w
                values.add(row[w])
    out = {
        "slope": str(ctx.spec),
        "mode": mode,
        "L": L,
        "values": sorted(values),
        "witness": {mu: witness[mu] for mu in sorted(witness)},
        "by_length": by_length,
    }
    if mode == "kabelian":
        out.update(k=k, sense=sense)
    if mode == "abelian":
        allowed = denominator_sets(ctx, L).admissible
        out["violations"] = sorted(values - allowed)
        # values the conjectured equality would still need at this length bound
        out["unrealized"] = sorted(allowed - values)
    if factors:
        out["factors"] = [[n, w, per[n][w]] for n in lengths for w in sorted(per[n])]
    return out

"""Command line entry point: sturmian-periods <verb> [options]."""

from __future__ import annotations

import argparse
import sys
import time

from .. import abelian, bounds, contfrac, kabelian, language
from ..contfrac import SlopeContext
from ..errors import INCONCLUSIVE, SturmianError, UnknownScenario
from . import report
from .scenarios import MAX_TERMS, run_scenario, scenario_names
from .sweep import MODES, sweep


def _common(p, slope=True):
    if slope:
        p.add_argument("--slope", default="0;2,(1)", help='continued fraction such as "0;2,(1)"')
    p.add_argument("--depth", type=int, default=MAX_TERMS, help="maximum continued fraction terms")
    p.add_argument("--json", metavar="PATH", help="also write the JSON result here ('-' for stdout only)")
    p.add_argument("--csv", metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sturmian-periods", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("slope-info", help="partial quotients, convergents and denominator sets")
    _common(p)
    p.add_argument("--length", type=int, default=100, help="largest denominator listed")

    p = sub.add_parser("gen", help="prefix of the characteristic word")
    _common(p)
    p.add_argument("--length", type=int, default=64)

    p = sub.add_parser("factors", help="factors of one length")
    _common(p)
    p.add_argument("--length", type=int, required=True)

    p = sub.add_parser("singular", help="singular factor of length q_k and its returns")
    _common(p)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("min-period", help="ordinary and abelian minimum periods of a word")
    _common(p, slope=False)
    p.add_argument("word")

    p = sub.add_parser("period-set", help="minimum abelian (or ordinary) periods of all factors up to a length")
    _common(p)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--mode", choices=("abelian", "ordinary"), default="abelian")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("kab", help="k-abelian minimum period of a word, or the period set of a slope")
    _common(p)
    p.add_argument("word", nargs="?")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sense", type=int, choices=(1, 2), default=1)
    p.add_argument("--length", type=int, help="sweep all factors up to this length")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("bounds", help="exponent lemmas and the main inequality for a candidate period")
    _common(p)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("verify", help="run a named scenario, or all of them")
    _common(p)
    p.set_defaults(slope=None)
    p.add_argument("scenario", nargs="?", default="all")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--list", action="store_true", help="list scenario names and exit")

    p = sub.add_parser("sweep", help="generalized period-set sweep")
    _common(p)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="abelian")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--sense", type=int, choices=(1, 2), default=1)
    p.add_argument("--workers", type=int, default=1)
    return parser


# verbs ------------------------------------------------------------------------------

def _slope_info(args, ctx):
    N = args.length
    sets = contfrac.denominator_sets(ctx, N)
    k_max = max(contfrac.iter_k(ctx, N))
    return {
        "slope": str(ctx.spec),
        "alpha": contfrac.approx(ctx, contfrac.ALPHA),
        "partial_quotients": [ctx.a(i) for i in range(1, k_max + 2)],
        "convergents": [list(pq) for pq in contfrac.convergents(ctx, N)],
        "Qk": sorted(sets.qk),
        "Qkl": sorted(sets.qkl),
        "M": sorted(sets.m),
        "admissible": sorted(sets.admissible),
    }


def _gen(args, ctx):
    return {"slope": str(ctx.spec), "length": args.length, "prefix": language.characteristic_prefix(ctx, args.length)}


def _factors(args, ctx):
    words = sorted(language.factors_of_length(ctx, args.length))
    light = min(w.count("1") for w in words)
    rows = [[w, w.count("1"), "light" if w.count("1") == light else "heavy"] for w in words]
    return {"slope": str(ctx.spec), "length": args.length, "factors": rows}


def _singular(args, ctx):
    s = language.singular_factor(ctx, args.k)
    horizon = 16 * ctx.q(args.k + 2)
    r = language.same_phase_return_analysis(ctx, args.k)
    return {
        "slope": str(ctx.spec),
        "k": args.k,
        "q": ctx.q(args.k),
        "singular": s,
        "return_times": sorted(language.return_structure(ctx, s, horizon)),
        "same_phase_return": r.word,
        "core_exponent": r.exponent_of_core,
        "abexp": r.abexp,
    }


def _min_period(args, ctx):
    w = args.word
    if not w or set(w) - {"0", "1"}:
        raise ValueError("word must be a nonempty string over 0 and 1")
    dec = abelian.has_abelian_period(w, abelian.min_abelian_period(w))
    return {"word": w, "period": abelian.min_period(w), "abelian_period": dec.block_len, "decomposition": str(dec)}


def _period_set(args, ctx):
    return sweep(ctx, args.length, args.mode, workers=args.workers, factors=bool(args.csv))


def _kab(args, ctx):
    if args.word is None:
        if args.length is None:
            raise ValueError("give a word or --length")
        return sweep(ctx, args.length, "kabelian", k=args.k, sense=args.sense,
                     workers=args.workers, factors=bool(args.csv))
    w = args.word
    fn = kabelian.sense1_min_period if args.sense == 1 else kabelian.sense2_min_period
    return {"word": w, "k": args.k, "sense": args.sense, "period": fn(w, args.k),
            "abelian_period": abelian.min_abelian_period(w)}


def _bounds(args, ctx):
    r = bounds.main_inequality(ctx, args.m)
    return {
        "slope": str(ctx.spec),
        "m": args.m,
        "k": r.location.k,
        "t": r.location.t,
        "abexp": r.abexp,
        "lhs": r.lhs,
        "rhs": r.rhs,
        "holds": r.holds,
        "lemmas": {name: {"hypothesis": o.hypothesis, "conclusion": o.conclusion, "ok": o.ok}
                   for name, o in r.lemmas.items()},
        "verdict": bounds.admissible_periods(ctx, args.m)[args.m].value,
    }


def _sweep(args, ctx):
    return sweep(ctx, args.length, args.mode, k=args.k, sense=args.sense,
                 workers=args.workers, factors=bool(args.csv))


VERBS = {
    "slope-info": _slope_info,
    "gen": _gen,
    "factors": _factors,
    "singular": _singular,
    "min-period": _min_period,
    "period-set": _period_set,
    "kab": _kab,
    "bounds": _bounds,
    "sweep": _sweep,
}


def _verify(args) -> int:
    if args.list:
        print("\n".join(scenario_names()))
        return 0
    names = scenario_names() if args.scenario == "all" else [args.scenario]
    overrides = {"depth": args.depth}
    if args.slope:
        overrides["slope"] = args.slope
    if args.workers > 1:
        overrides["workers"] = args.workers
    reports = []
    for name in names:
        r = run_scenario(name, overrides)
        reports.append(r)
        print(f"{r.status.upper():<13} {r.scenario}  ({r.ms:.0f} ms)")
        for c in r.checks:
            if c["status"] != "pass":
                print(f"    {c['label']}: observed {c['observed']!r}, expected {c['expected']['op']} {c['expected']['value']!r}")
    if args.json:
        payload = reports[0].to_dict() if len(reports) == 1 else [r.to_dict() for r in reports]
        if args.json == "-":
            print(report.dumps(payload))
        else:
            report.write_json(args.json, payload)
    if args.csv:
        report.write_text(args.csv, report.reports_csv(reports))
    return report.EXIT[report.overall(r.status for r in reports)]


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.verb == "verify":
            return _verify(args)
        ctx = SlopeContext(args.slope, args.depth) if getattr(args, "slope", None) else None
        start = time.perf_counter()
        result = VERBS[args.verb](args, ctx)
        ms = round((time.perf_counter() - start) * 1000, 1)
    except UnknownScenario as exc:
        print(f"unknown scenario {exc.args[0]!r}; try 'verify --list'", file=sys.stderr)
        return 2
    except INCONCLUSIVE as exc:
        print(f"inconclusive: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (ValueError, SturmianError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.csv and "factors" in result:
        report.write_text(args.csv, report.sweep_csv(result))
        if args.verb in ("period-set", "sweep", "kab"):
            result = {k: v for k, v in result.items() if k != "factors"}
    text = report.dumps(result)
    if args.json and args.json != "-":
        report.write_json(args.json, result)
    print(text)
    print(f"# {ms:.0f} ms", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

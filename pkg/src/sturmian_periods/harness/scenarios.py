"""Named verification scenarios, loaded from scenarios.json, and their check kinds."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources

from .. import abelian, bounds, contfrac, kabelian, language
from ..contfrac import ALPHA, SlopeContext
from ..errors import INCONCLUSIVE, FormulaExceeded, UnknownScenario
from .report import overall
from .sweep import sweep

MAX_TERMS = 64


@dataclass
class Report:
    scenario: str
    slope: str
    params: dict
    observed: object
    expected: object
    status: str
    depth: int
    ms: float
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# check kinds -------------------------------------------------------------------

CHECKS = {}


def check(name):
    def register(fn):
        CHECKS[name] = fn
        return fn
    return register


@check("convergents")
def _convergents(ctx, N):
    return [list(pq) for pq in contfrac.convergents(ctx, N)]


@check("denominators")
def _denominators(ctx, N):
    return sorted(q for q in contfrac.denominator_sets(ctx, N).qk if q > 1)


@check("semiconvergents")
def _semiconvergents(ctx, N):
    return sorted(contfrac.denominator_sets(ctx, N).semiconvergents)


@check("abexp")
def _abexp(ctx, m):
    return contfrac.abexp_formula(ctx, m)


@check("abexp_length_bound")
def _abexp_length_bound(ctx, m):
    return (contfrac.abexp_formula(ctx, m) + 2) * m - 2


@check("main_inequality")
def _main_inequality(ctx, m):
    r = bounds.main_inequality(ctx, m)
    return [r.lhs, r.rhs, r.holds]


@check("abelian_period_set")
def _abelian_period_set(ctx, L, workers=1):
    return sweep(ctx, L, "abelian", workers=workers)["values"]


@check("ordinary_period_set")
def _ordinary_period_set(ctx, L, workers=1):
    return sweep(ctx, L, "ordinary", workers=workers)["values"]


@check("k_period_set")
def _k_period_set(ctx, L, k, sense, workers=1):
    return sweep(ctx, L, "kabelian", k=k, sense=sense, workers=workers)["values"]


@check("admissible_violations")
def _admissible_violations(ctx, L, workers=1):
    return sweep(ctx, L, "abelian", workers=workers)["violations"]


@check("ordinary_violations")
def _ordinary_violations(ctx, L, workers=1):
    allowed = abelian.currie_saari_set(ctx, L)
    return [v for v in sweep(ctx, L, "ordinary", workers=workers)["values"] if v not in allowed]


@check("absent_up_to_bound")
def _absent_up_to_bound(ctx, m, workers=1):
    L = (contfrac.abexp_formula(ctx, m) + 2) * m - 2
    return m not in sweep(ctx, L, "abelian", workers=workers)["values"]


@check("is_factor")
def _is_factor(ctx, word):
    return language.is_factor(ctx, word)


@check("min_abelian_period")
def _min_abelian_period(ctx, word):
    return abelian.min_abelian_period(word)


@check("k_period")
def _k_period(ctx, word, k, sense):
    if sense == 1:
        return kabelian.sense1_min_period(word, k)
    return kabelian.sense2_min_period(word, k)


@check("qk_witness_periods")
def _qk_witness_periods(ctx, ks):
    out = []
    for k in ks:
        w = abelian.qk_witness(ctx, k)
        out.append(abelian.min_abelian_period(w) if language.is_factor(ctx, w) else None)
    return out


def _return_times(ctx, s, q_next):
    horizon = 8 * q_next + len(s)
    for _ in range(8):
        try:
            gaps = language.return_structure(ctx, s, horizon)
        except INCONCLUSIVE:
            gaps = set()
        if len(gaps) >= 2:
            return gaps
        horizon *= 2
    return gaps


@check("singular_failures")
def _singular_failures(ctx, qmax):
    """Failed properties of singular factors with q_k <= qmax, as [k, property] pairs."""
    bad = []
    for k in contfrac.iter_k(ctx, qmax):
        s = language.singular_factor(ctx, k)
        q = len(s)
        if s != s[::-1]:
            bad.append([k, "palindrome"])
        if s[0] != s[-1]:
            bad.append([k, "first_last"])
        classes = {abelian.parikh(f) for f in language.factors_of_length(ctx, q)}
        for i in range(1, q):
            for part in (s[:i], s[q - i:]):
                if not all(abelian.parikh(part).within(c) for c in classes):
                    bad.append([k, "containment"])
                    break
            else:
                continue
            break
        want = {ctx.q(k + 1), ctx.q(k + 1) + q}
        if _return_times(ctx, s, ctx.q(k + 1)) != want:
            bad.append([k, "return_times"])
        r = language.same_phase_return_analysis(ctx, k)
        if not r.exponent_ok:
            bad.append([k, "core_exponent"])
        if not r.letters_ok:
            bad.append([k, "letters"])
    return bad


@check("counterexample_failures")
def _counterexample_failures(ctx, kmax):
    bad = []
    for k in range(1, kmax + 1):
        if ctx.a(k + 1) == 1:
            continue
        w = abelian.counterexample_witness(ctx, k)
        mu = abelian.min_abelian_period(w)
        if not language.is_factor(ctx, w) or mu not in (ctx.q(k) + ctx.q(k - 1), 2 * ctx.q(k)):
            bad.append([k, mu])
    return bad


@check("counterexample_outside_qk")
def _counterexample_outside_qk(ctx, kmax):
    """Some constructed factor has a minimum abelian period that is not a convergent denominator."""
    for k in range(1, kmax + 1):
        if ctx.a(k + 1) == 1:
            continue
        w = abelian.counterexample_witness(ctx, k)
        mu = abelian.min_abelian_period(w)
        if mu not in contfrac.denominator_sets(ctx, mu).qk:
            return True
    return False


@check("class_count_violations")
def _class_count_violations(ctx, nmax, kmax):
    bad = []
    for k in range(1, kmax + 1):
        for n in range(1, nmax + 1):
            want = n + 1 if n <= 2 * k - 1 else 2 * k
            got = kabelian.count_k_classes(ctx, n, k)
            if got != want:
                bad.append([n, k, got])
    return bad


@check("exponent_scan_mismatches")
def _exponent_scan_mismatches(ctx, mmax):
    bad = []
    for m in range(1, mmax + 1):
        try:
            abelian.max_abelian_exponent_scan(ctx, m)
        except FormulaExceeded:
            bad.append(m)
    return bad


@check("alpha_identity_failures")
def _alpha_identity_failures(ctx, kmax):
    return [k for k in range(kmax + 1) if not (contfrac.alpha_from_norms(ctx, k) - ALPHA).is_zero()]


@check("alpha_identity_weighted_failures")
def _alpha_identity_weighted_failures(ctx, kmax):
    return [k for k in range(kmax + 1) if not (contfrac.alpha_from_norms_weighted(ctx, k) - ALPHA).is_zero()]


@check("enclosure_failures")
def _enclosure_failures(ctx, kmax, lmax, depth):
    deep = SlopeContext(ctx.spec, max_terms=max(ctx.max_terms, 2 * depth + kmax + 16))
    bad = []
    for k in range(1, kmax + 1):
        pairs = {"ratio": contfrac.norm_ratio_enclosures(deep, k, depth),
                 "reciprocal": contfrac.norm_reciprocal_enclosures(deep, k, depth)}
        for ell in range(1, lmax + 1):
            pairs[f"consecutive{ell}"] = contfrac.consecutive_norm_enclosures(deep, k, ell, depth)
        bad.extend([k, name] for name, (x, y) in pairs.items() if not x.intersects(y))
    return bad


@check("best_approximation_violations")
def _best_approximation_violations(ctx, kq):
    return [list(v) for v in contfrac.best_approximation_violations(ctx, ctx.q(kq))]


# expectations -------------------------------------------------------------------

def _satisfies(op, observed, value):
    if op == "eq":
        return observed == value
    if op == "subset":
        return set(observed) <= set(value)
    if op == "contains":
        return value in observed
    if op == "not_contains":
        return value not in observed
    raise ValueError(f"unknown expectation {op!r}")


# registry -----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _registry() -> dict:
    text = resources.files(__package__).joinpath("scenarios.json").read_text()
    return {s["name"]: s for s in json.loads(text)["scenarios"]}


def scenario_names() -> list[str]:
    return list(_registry())


def describe(name: str) -> dict:
    try:
        return _registry()[name]
    except KeyError:
        raise UnknownScenario(name) from None


def run_scenario(name: str, overrides: dict | None = None) -> Report:
    """Run every check of a registered scenario; any inconclusive check makes the whole run inconclusive."""
    desc = describe(name)
    overrides = dict(overrides or {})
    max_terms = overrides.pop("depth", MAX_TERMS)
    slope = overrides.pop("slope", None) or desc["slope"]
    contexts: dict[str, SlopeContext] = {}
    labels: set[str] = set()
    start = time.perf_counter()
    rows = []
    for c in desc["checks"]:
        spec = c.get("slope", slope)
        # word-only scenarios carry no slope
        ctx = None if spec is None else contexts.setdefault(spec, SlopeContext(spec, max_terms))
        params = {**c["params"], **{k: v for k, v in overrides.items() if k in c["params"] or k == "workers"}}
        if "workers" in params and c["kind"] not in _SWEEPING:
            params.pop("workers")
        expect = c["expect"]
        label = c.get("label", c["kind"])
        if label in labels:
            label = f"{label}#{len(rows)}"
        labels.add(label)
        row = {"kind": c["kind"], "label": label, "slope": spec, "params": params,
               "expected": {"op": expect["op"], "value": expect["value"]}}
        try:
            observed = CHECKS[c["kind"]](ctx, **params)
            row["observed"] = observed
            row["status"] = "pass" if _satisfies(expect["op"], observed, expect["value"]) else "fail"
        except INCONCLUSIVE as exc:
            row["observed"] = None
            row["status"] = "inconclusive"
            row["error"] = f"{type(exc).__name__}: {exc}"
        rows.append(row)
    ms = round((time.perf_counter() - start) * 1000, 1)
    status = overall(r["status"] for r in rows)
    return Report(
        scenario=name,
        slope=slope or "",
        params={r["label"]: r["params"] for r in rows},
        observed={r["label"]: r["observed"] for r in rows},
        expected={r["label"]: r["expected"] for r in rows},
        status=status,
        depth=max((c.depth_used for c in contexts.values()), default=0),
        ms=ms,
        checks=rows,
    )


_SWEEPING = {
    "abelian_period_set", "ordinary_period_set", "k_period_set", "admissible_violations",
    "ordinary_violations", "absent_up_to_bound",
}

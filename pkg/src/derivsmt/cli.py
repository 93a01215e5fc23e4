"""Command-line front end: run verifier suites on problem files, generate corpora.

Exit codes: 0 all assertions hold, 1 an assertion failed, 2 parse error,
3 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path

from .curves import DegenerateCurveError, contract, stationary_order_check
from .nevanlinna import QuadratureError, RadialGrid, RadialReport, fmt_report
from .nochka import verify_weights
from .problem import CorpusError, ParseError, dump_problem, generate_corpus, load_problem
from .scalarpoly import poly_gcd_many
from .smtlab import (
    InvalidProblem,
    SmtProblem,
    defect_relation_report,
    detW,
    detW_bound_check,
    log_wronskian_identity_check,
    nochka_divisor_inequality_check,
    ramification_report,
    smt_report,
)

SUITES = ("identities", "weights", "divisor-inequality", "smt", "defects", "ramification", "fmt")

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INVARIANT = 0, 1, 2, 3

COLUMN_TAGS = {
    "identities": {"check": "identity name", "subject": "where it was checked", "holds": "exact result"},
    "weights": {"index": "hyperplane index", "numerator": "Nochka weight", "denominator": "Nochka weight"},
    "divisor-inequality": {
        "factor": "coprime-base factor index",
        "points": "roots of the factor (all share the orders below)",
        "ord_detW": "ord det of the compound derivative matrix",
        "n_Dk": "dim times stationary order",
        "weighted_excess": "sum_i w_i (ord A_i(F_k) - (k+1)(n-k))^+",
        "margin": "ord_detW - n_Dk - weighted_excess",
    },
    "smt": {
        "r": "radius",
        "T_Fk": "order function of the derived curve",
        "N_trunc_sum": "sum of counting functions truncated at (k+1)(n-k)",
        "lhs": "(q - 2N + dim) T_Fk",
        "rhs": "N_trunc_sum",
        "slack": "rhs - lhs",
    },
    "defects": {"hyperplane": "index", "defect": "exact truncated defect"},
    "ramification": {"hyperplane": "index", "mu": "minimal multiplicity (inf if disjoint)", "term": "1 - (k+1)(n-k)/mu"},
    "fmt": {
        "hyperplane": "index",
        "r": "radius",
        "m": "proximity function",
        "N": "untruncated counting function",
        "dT": "order function",
        "deviation": "m + N - T",
    },
}


@dataclass
class SuiteResult:
    name: str
    report: RadialReport
    passed: bool
    diagnostics: list[str] = field(default_factory=list)


def _suite_identities(p: SmtProblem) -> SuiteResult:
    f, k = p.curve, p.k
    rep = RadialReport(("check", "subject", "holds"))
    diag = []
    d = p.derived
    g = d.cancellation

    def add(check, subject, ok):
        rep.rows.append((check, subject, bool(ok)))
        if not ok:
            diag.append(f"{check} fails at {subject}")

    add("cancellation", "all coordinates", all(g * d.plucker_components[J] == d.raw[J] for J in d.raw.coords))
    add("reduced_coprime", "all coordinates", poly_gcd_many(d.components()).degree == 0)
    add("sylvester_franke", "det of compound", detW(f, k, "compound") == detW(f, k, "sylvester"))
    for i, A in enumerate(p.family.covectors):
        add("pairing_is_wronskian", f"hyperplane {i}", contract(f, A)[1])
    skipped = 0
    for pt in d.stationary_divisor.points:
        if pt.exact is None:
            skipped += 1
            continue
        lhs, rhs, ok = stationary_order_check(f, k, pt.exact)
        add("stationary_order", f"z={pt.exact} ({lhs} vs {rhs})", ok)
    add("detW_bound", "all stationary points", detW_bound_check(f, k)[2])
    if not f.components[0].is_zero():
        add("log_wronskian", "f_0 nonzero", log_wronskian_identity_check(f, k))
    add("exponent", f"n={f.n}, k={k}", (f.n + 1) * comb(f.n, k) == (k + 1) * p.dim)
    rep.flags["irrational_stationary_points_skipped"] = skipped
    return SuiteResult("identities", rep, not diag, diag)


def _suite_weights(p: SmtProblem) -> SuiteResult:
    rep = RadialReport(("index", "numerator", "denominator"))
    if p.weights is None:
        rep.flags["vacuous"] = True
        return SuiteResult("weights", rep, True, ["no Nochka weights: q < 2N - dim or dim = 1"])
    rep.rows.extend(p.weights.to_csv_rows())
    n, N = p.family.nochka_params()
    v = verify_weights(p.family, n, N, p.weights)
    rep.flags.update(
        vacuous=False,
        constant=p.weights.constant,
        cond_i=v.cond_i,
        cond_ii=v.cond_ii,
        cond_iii=v.cond_iii,
        cond_iv=v.cond_iv,
    )
    diag = [] if v.ok else [f"weight conditions fail; rank witness {v.witness}"]
    return SuiteResult("weights", rep, v.ok, diag)


def _fmt_point(z: complex) -> str:
    if abs(z.imag) <= 1e-12 * max(1.0, abs(z)):
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _suite_divisor(p: SmtProblem) -> SuiteResult:
    rep = RadialReport(("factor", "points", "ord_detW", "n_Dk", "weighted_excess", "margin"))
    if p.weights is None:
        rep.flags["vacuous"] = True
        return SuiteResult("divisor-inequality", rep, True, ["no Nochka weights; inequality not applicable"])
    res = nochka_divisor_inequality_check(p)
    diag = []
    for i, row in enumerate(res.rows):
        pts = ";".join(_fmt_point(z) for z in row["points"])
        rep.rows.append((i, pts, row["ord_detW"], row["n_Dk"], row["weighted_excess"], row["margin"]))
        if row["margin"] < 0:
            diag.append(f"negative margin {row['margin']} at {pts}")
    rep.flags["vacuous"] = False
    return SuiteResult("divisor-inequality", rep, res.holds, diag)


def _suite_smt(p: SmtProblem) -> SuiteResult:
    rep = smt_report(p)
    if rep.flags["vacuous"]:
        return SuiteResult("smt", rep, True, [f"vacuous: q - 2N + dim = {p.coefficient} <= 0"])
    diag = []
    if not rep.flags["bounded"]:
        ref = rep.flags["reference_slack"]
        bad = [r for r, *_, s in rep.rows if r >= 100 and s < ref - 0.1]
        diag.append(f"slack drops below slack(100) - 0.1 at r = {bad}")
    return SuiteResult("smt", rep, rep.flags["bounded"], diag)


def _suite_defects(p: SmtProblem) -> SuiteResult:
    total, bound, ok, defects = defect_relation_report(p)
    rep = RadialReport(("hyperplane", "defect"), [(i, d) for i, d in enumerate(defects)])
    rep.flags.update(sum=total, bound=bound, holds=ok)
    return SuiteResult("defects", rep, ok, [] if ok else [f"defect sum {total} exceeds {bound}"])


def _suite_ramification(p: SmtProblem) -> SuiteResult:
    mus, total, bound, ok = ramification_report(p)
    t = p.truncation
    rows = [(i, mu, 1 if mu == float("inf") else 1 - Fraction(t, mu)) for i, mu in enumerate(mus)]
    rep = RadialReport(("hyperplane", "mu", "term"), rows)
    rep.flags.update(lhs=total, bound=bound, holds=ok)
    return SuiteResult("ramification", rep, ok, [] if ok else [f"ramification sum {total} exceeds {bound}"])


def _suite_fmt(p: SmtProblem) -> SuiteResult:
    comps = p.derived.components()
    rep = RadialReport(("hyperplane", "r", "m", "N", "dT", "deviation"))
    diag = []
    spreads = []
    for i, A in enumerate(p.family.covectors):
        try:
            sub = fmt_report(comps, A, p.grid)
        except QuadratureError as exc:
            diag.append(f"hyperplane {i}: {exc}")
            continue
        rep.rows.extend((i, *row) for row in sub.rows)
        spreads.append(sub.flags["oscillation"])
        if not sub.flags["bounded"]:
            diag.append(f"hyperplane {i}: deviation oscillates by {sub.flags['oscillation']}")
    rep.flags.update(max_oscillation=max(spreads, default=0.0), tolerance=0.5)
    return SuiteResult("fmt", rep, not diag, diag)


RUNNERS = {
    "identities": _suite_identities,
    "weights": _suite_weights,
    "divisor-inequality": _suite_divisor,
    "smt": _suite_smt,
    "defects": _suite_defects,
    "ramification": _suite_ramification,
    "fmt": _suite_fmt,
}


def run_suites(problem: SmtProblem, suites) -> list[SuiteResult]:
    return [RUNNERS[s](problem) for s in suites]


def _write(result: SuiteResult, out: Path, fmt: str, problem_path: str) -> None:
    body = result.report.to_csv() if fmt == "csv" else result.report.to_json() + "\n"
    (out / f"{result.name}.{fmt}").write_text(body)
    meta = json.loads(result.report.to_json())
    meta.pop("rows")
    meta.update(
        suite=result.name,
        problem=problem_path,
        passed=result.passed,
        diagnostics=result.diagnostics,
        column_tags=COLUMN_TAGS[result.name],
    )
    (out / f"{result.name}.meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def _parse_suites(text: str) -> list[str]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if not names:
        raise ParseError("at least one suite must be selected")
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ParseError(f"unknown suites {unknown}; choose from {', '.join(SUITES)}")
    return list(dict.fromkeys(names))


def cmd_run(args) -> int:
    try:
        suites = _parse_suites(args.suites)
        grid = RadialGrid.parse(args.radii) if args.radii else None
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: bad radii: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        problem = load_problem(args.problem, grid)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidProblem, DegenerateCurveError, ValueError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    summary = {}
    for result in run_suites(problem, suites):
        _write(result, out, args.format, str(args.problem))
        summary[result.name] = result.passed
        status = "PASS" if result.passed else "FAIL"
        print(f"{result.name}: {status}")
        for line in result.diagnostics:
            print(f"  {line}", file=sys.stderr if not result.passed else sys.stdout)
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if all(summary.values()) else EXIT_FAIL


def cmd_corpus(args) -> int:
    try:
        problems = generate_corpus(
            args.seed, count=args.count, n=args.n, k=args.k, q=args.q, deg=args.deg, N=args.N
        )
    except CorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, obj in enumerate(problems):
        (out / f"problem_{i:03d}.json").write_text(dump_problem(obj))
    print(f"wrote {len(problems)} problems to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="derivsmt", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run verifier suites on a problem file")
    run.add_argument("--problem", required=True)
    run.add_argument("--suites", default=",".join(SUITES), help=f"comma list from {', '.join(SUITES)}")
    run.add_argument("--radii", help="comma-separated radii > 1, overrides the problem grid")
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    run.add_argument("--out", default="reports")
    run.set_defaults(func=cmd_run)
    corpus = sub.add_parser("corpus", help="generate a deterministic problem corpus")
    corpus.add_argument("--seed", type=int, required=True)
    corpus.add_argument("--count", type=int, default=10)
    corpus.add_argument("--n", type=int, default=2)
    corpus.add_argument("--k", type=int, default=1)
    corpus.add_argument("--q", type=int, default=5)
    corpus.add_argument("--deg", type=int, default=3)
    corpus.add_argument("--N", type=int, default=None, help="subgeneral count (default: dimension)")
    corpus.add_argument("--out", default="corpus")
    corpus.set_defaults(func=cmd_corpus)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

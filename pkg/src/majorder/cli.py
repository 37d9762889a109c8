"""``majorder`` command line: solvers, verification suites and report output.

Exit codes: 0 verified, 1 counterexample found, 2 unresolved at the
precision cap, 64 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from typing import Callable, Sequence

from . import __version__
from .config import DEFAULTS, PRECISION_ENV
from .dioph import Classification, EquationId, equation, solve
from .errors import F0NotOne, InvalidSequence, NegativeTerm, HypothesisViolated, NotMonotone, Unresolved
from .exact.gamma import digamma_interval, ln_gamma_interval, sandwich_check, theorem_c_check
from .exact.interval import RealInterval
from .monotone import BUILTINS, builtin, diff_profile, ratio_profile, theorem_a_sweep, theorem_b_sweep
from .poset import compare, enumerate_sequences, majorizes, parse_sequence, prefix_table
from .recur import (
    FIB_CONVENTION,
    Direction,
    RecurrenceSpec,
    binet_enclosure_check,
    fib,
    ratio_monotone_check,
    recurrence_terms,
    uniqueness_check,
    valid_specs,
)
from .report import (
    COUNTEREXAMPLE,
    EXIT_USAGE,
    INELIGIBLE,
    OK,
    UNRESOLVED,
    Outcome,
    RunReport,
)

SUITES = ("poset-axioms", "theorem-a", "theorem-b", "theorem-c", "fibonacci", "recurrence", "uniqueness")
VIOLATION_SAMPLE = 20


class UsageError(Exception):
    """Bad command-line input that argparse itself cannot catch."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- argument helpers ---------------------------------------------------------

def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _precision(text: str) -> int:
    v = _positive_int(text)
    if v < 32:
        raise argparse.ArgumentTypeError("precision must be at least 32 bits")
    return v


def parse_point(text: str):
    """``e``, ``pi``, an integer, a fraction ``p/q`` or a decimal literal."""
    t = text.strip().lower()
    if t == "e":
        return RealInterval.e
    if t == "pi":
        return RealInterval.pi
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse point {text!r}") from None


def point_label(x) -> str:
    if x is RealInterval.e:
        return "e"
    if x is RealInterval.pi:
        return "pi"
    return str(x)


def parse_grid(text: str) -> list[Fraction]:
    """``lo:hi:step`` with exact decimal endpoints, both ends inclusive."""
    try:
        lo, hi, step = (Fraction(p) for p in text.split(":"))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"grid must look like lo:hi:step, got {text!r}") from None
    if step <= 0 or hi < lo:
        raise UsageError(f"empty grid {text!r}")
    n = int((hi - lo) / step)
    return [lo + i * step for i in range(n + 1)]


def parse_source(text: str):
    """``fib-even``, ``fib-odd`` or ``rec:a,b,A1``."""
    if text in ("fib-even", "fib-odd"):
        return text
    if text.startswith("rec:"):
        try:
            a, b, a1 = (int(v) for v in text[4:].split(","))
        except ValueError:
            raise UsageError(f"recurrence source must be rec:a,b,A1, got {text!r}") from None
        try:
            return RecurrenceSpec(a, b, a1)
        except HypothesisViolated as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"unknown source {text!r}; use fib-even, fib-odd or rec:a,b,A1")


def _int_range(text: str) -> range:
    try:
        lo, hi = (int(v) for v in text.split(".."))
    except ValueError:
        raise UsageError(f"range must look like lo..hi, got {text!r}") from None
    step = 1 if hi >= lo else -1
    return range(lo, hi + step, step)


# -- commands -----------------------------------------------------------------

def cmd_majorize(args) -> RunReport:
    a, b = parse_sequence(args.a), parse_sequence(args.b)
    result = compare(a, b)
    rows = [dict(r, status=OK) for r in prefix_table(a, b)]
    summary = {
        "a": str(a), "b": str(b), "result": result.value,
        "len_a": len(a), "len_b": len(b), "sum_a": a.total, "sum_b": b.total,
    }
    return RunReport([], {"a": str(a), "b": str(b)}, rows, summary, outcome=Outcome.VERIFIED)


def cmd_enumerate(args) -> RunReport:
    rows = [{"seq": str(s), "sum": s.total, "len": len(s), "status": OK}
            for s in enumerate_sequences(args.max_sum, args.max_len)]
    return RunReport([], {"max_sum": args.max_sum, "max_len": args.max_len}, rows,
                     {"count": len(rows)})


def cmd_solve(args) -> RunReport:
    try:
        eq = equation(args.equation)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    params = {"equation": eq.value, "bound": args.bound, "formula": eq.formula}
    stats: dict = {}
    kwargs = {}
    if not eq.rectangular:
        kwargs = dict(precision=args.precision, max_precision=args.max_precision,
                      workers=args.threads, stats=stats)
        params.update(precision=args.precision, max_precision=args.max_precision)
    try:
        solutions = solve(eq, args.bound, **kwargs)
    except Unresolved:
        rows = [{"a": a, "b": b, "status": UNRESOLVED} for a, b in stats.get("unresolved", [])]
        return RunReport([], params, rows, {"pairs": stats.get("pairs", 0), "unresolved": len(rows)})
    rows = []
    for s in solutions:
        d = s.to_dict()
        d["status"] = COUNTEREXAMPLE if s.classification is Classification.UNEXPECTED else OK
        rows.append(d)
    counts = {c.value: sum(s.classification is c for s in solutions) for c in Classification}
    summary = {"solutions": len(solutions), "by_classification": counts}
    if stats:
        summary.update(pairs=stats["pairs"], methods=stats["methods"])
    return RunReport([], params, rows, summary)


def cmd_uniqueness(args) -> RunReport:
    source = parse_source(args.source)
    report = uniqueness_check(source, args.max_index, args.tuple_len)
    row = report.to_dict()
    row["status"] = OK if report.holds else COUNTEREXAMPLE
    return RunReport([], {"source": args.source, "max_index": args.max_index, "tuple_len": args.tuple_len},
                     [row], {"violations": len(report.violations), "pairs_checked": report.pairs_checked})


def cmd_gamma(args) -> RunReport:
    x = parse_point(args.x)
    if not callable(x) and x <= 0:
        raise UsageError("x must be positive")
    p = args.precision
    row = {
        "x": point_label(x),
        "ln_gamma": ln_gamma_interval(x, p).to_dict(),
        "digamma": digamma_interval(x, p).to_dict(),
        "status": OK,
    }
    if callable(x) or x > 1:
        try:
            res = theorem_c_check(x, p, args.max_precision)
            row["theorem_c"] = {"bound1": res.bound1, "bound2": res.bound2, "precision": res.precision}
            if not (res.bound1 and res.bound2):
                row["status"] = COUNTEREXAMPLE
        except Unresolved:
            row["theorem_c"] = None
            row["status"] = UNRESOLVED
        sandwich = sandwich_check(x, p)
        row["sandwich"] = sandwich
        if row["status"] == OK:
            if False in sandwich.values():
                row["status"] = COUNTEREXAMPLE
            elif None in sandwich.values():
                row["status"] = UNRESOLVED
    return RunReport([], {"x": args.x, "precision": p}, [row], {})


def cmd_fib(args) -> RunReport:
    row = {"n": args.n, "value": str(fib(args.n)), "convention": FIB_CONVENTION, "status": OK}
    if args.binet:
        ok = binet_enclosure_check(args.n, args.precision)
        row["binet_contains_all"] = ok
        row["status"] = OK if ok else COUNTEREXAMPLE
    return RunReport([], {"n": args.n, "binet": args.binet, "precision": args.precision}, [row], {})


# -- verification suites ------------------------------------------------------

def _partition_count(n: int) -> int:
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


def suite_poset_axioms(args) -> RunReport:
    seqs = list(enumerate_sequences(args.max_sum))
    n = len(seqs)
    rel = [[majorizes(a, b) for b in seqs] for a in seqs]
    reflexive = [str(seqs[i]) for i in range(n) if not rel[i][i]]
    antisym = [(str(seqs[i]), str(seqs[j])) for i in range(n) for j in range(i + 1, n)
               if rel[i][j] and rel[j][i]]
    trans = []
    for i in range(n):
        above = [j for j in range(n) if rel[i][j]]
        for j in above:
            for k in range(n):
                if rel[j][k] and not rel[i][k]:
                    trans.append((str(seqs[i]), str(seqs[j]), str(seqs[k])))
    mirror = [(str(a), str(b)) for a in seqs for b in seqs if compare(a, b).mirrored() is not compare(b, a)]
    counts = []
    for s in range(1, args.max_sum + 1):
        got = sum(1 for q in seqs if q.total == s)
        counts.append({"sum": s, "enumerated": got, "partitions": _partition_count(s)})
    bad_counts = [c for c in counts if c["enumerated"] != c["partitions"]]

    def row(name, bad, checked):
        return {"property": name, "checked": checked, "failures": len(bad),
                "examples": [list(x) if isinstance(x, tuple) else x for x in bad[:VIOLATION_SAMPLE]],
                "status": COUNTEREXAMPLE if bad else OK}

    rows = [
        row("reflexive", reflexive, n),
        row("antisymmetric", antisym, n * (n - 1) // 2),
        row("transitive", trans, sum(sum(r) for r in rel) * n),
        row("compare-mirror", mirror, n * n),
        {"property": "partition-counts", "checked": len(counts), "failures": len(bad_counts),
         "examples": counts, "status": COUNTEREXAMPLE if bad_counts else OK},
    ]
    return RunReport([], {"max_sum": args.max_sum}, rows, {"sequences": n})


def _functions(names: Sequence[str] | None, default: Sequence[str]) -> list:
    out = []
    for name in names or default:
        try:
            out.append(builtin(name))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return out


def _sweep_row(result) -> dict:
    viol = result.violations
    equal_total = 0
    for v in viol:
        equal_total += parse_sequence(v["a"].strip("()")).total == parse_sequence(v["b"].strip("()")).total
    return {
        "function": result.function,
        "certificate": result.certificate.to_dict(),
        "pairs": result.pairs,
        "equal_pairs": result.equal_pairs,
        "violations": len(viol),
        "violations_equal_total": equal_total,
        "violation_examples": viol[:VIOLATION_SAMPLE],
        "unresolved": len(result.unresolved),
        "status": COUNTEREXAMPLE if viol else (UNRESOLVED if result.unresolved else OK),
    }


def suite_theorem_a(args) -> RunReport:
    rows = []
    x_max = max(args.x_max, args.max_sum)
    for f in _functions(args.function, list(BUILTINS)):
        try:
            cert = ratio_profile(f, x_max)
        except (F0NotOne, NotMonotone) as exc:
            rows.append({"function": f.name, "reason": str(exc), "status": INELIGIBLE})
            continue
        rows.append(_sweep_row(theorem_a_sweep(f, args.max_sum, cert, workers=args.threads)))
    return RunReport([], {"max_sum": args.max_sum, "x_max": x_max}, rows, _tally(rows))


def suite_theorem_b(args) -> RunReport:
    rows = []
    cap = args.max_precision or DEFAULTS.sum_precision_cap
    x_max = max(args.diff_x_max, args.max_sum)
    for f in _functions(args.function, ["f1", "f2"]):
        try:
            cert = diff_profile(f, x_max, args.precision, cap)
        except NotMonotone as exc:
            rows.append({"function": f.name, "reason": str(exc), "status": INELIGIBLE})
            continue
        except Unresolved as exc:
            rows.append({"function": f.name, "reason": str(exc), "status": UNRESOLVED})
            continue
        rows.append(_sweep_row(theorem_b_sweep(f, args.max_sum, cert, args.precision, cap,
                                               workers=args.threads)))
    return RunReport([], {"max_sum": args.max_sum, "diff_x_max": x_max, "precision": args.precision,
                          "max_precision": cap}, rows, _tally(rows))


def suite_theorem_c(args) -> RunReport:
    points = [parse_point(p) for p in args.points] if args.points else parse_grid(args.grid)
    rows = []
    for x in points:
        if not callable(x) and x <= 1:
            raise UsageError(f"theorem-c needs x > 1, got {x}")
        row = {"x": point_label(x)}
        try:
            res = theorem_c_check(x, args.precision, args.max_precision)
        except Unresolved:
            row.update(bound1=None, bound2=None, precision=args.max_precision or DEFAULTS.max_precision,
                       status=UNRESOLVED)
        else:
            row.update(bound1=res.bound1, bound2=res.bound2, precision=res.precision,
                       status=OK if res.bound1 and res.bound2 else COUNTEREXAMPLE)
        rows.append(row)
    params = {"grid": None if args.points else args.grid, "points": args.points, "precision": args.precision}
    return RunReport([], params, rows, _tally(rows))


def suite_fibonacci(args) -> RunReport:
    n_max = args.n_max
    even_fail = [n for n in range(1, n_max + 1) if not fib(2 * n + 2) * fib(2 * n - 2) > fib(2 * n) ** 2]
    odd_terms = [fib(2 * n + 1) for n in range(n_max + 2)]
    try:
        odd_dir = ratio_monotone_check(odd_terms).value
        odd_status = OK
    except NotMonotone as exc:
        odd_dir, odd_status = str(exc), COUNTEREXAMPLE
    odd_greater = sum(1 for n in range(1, n_max + 1) if fib(2 * n + 3) * fib(2 * n - 1) > fib(2 * n + 1) ** 2)
    binet = binet_enclosure_check(min(n_max, DEFAULTS.binet_n_max), DEFAULTS.binet_precision)
    rows = [
        {"check": "even-ratio-increasing", "n_max": n_max, "failures": len(even_fail),
         "examples": even_fail[:VIOLATION_SAMPLE], "status": COUNTEREXAMPLE if even_fail else OK},
        {"check": "odd-ratio-strictly-monotone", "n_max": n_max, "direction": odd_dir,
         "greater_form_holds": odd_greater, "status": odd_status},
        {"check": "binet-enclosure", "n_max": min(n_max, DEFAULTS.binet_n_max),
         "precision": DEFAULTS.binet_precision, "holds": binet, "status": OK if binet else COUNTEREXAMPLE},
    ]
    return RunReport([], {"n_max": n_max, "convention": FIB_CONVENTION}, rows, _tally(rows))


def suite_recurrence(args) -> RunReport:
    rows = []
    for spec in valid_specs(_int_range(args.a), _int_range(args.b), _int_range(args.a1), args.n_max):
        terms = recurrence_terms(spec, args.n_max)
        row = {"spec": spec.label, "terms_head": [str(t) for t in terms[:6]]}
        try:
            if any(t <= 0 for t in terms):
                raise NotMonotone(0, "a term is zero, so ratios are undefined")
            row["direction"] = ratio_monotone_check(terms).value
            ratio_ok = True
        except NotMonotone as exc:
            row["direction"] = None
            row["ratio_failure"] = str(exc)
            ratio_ok = False
        try:
            report = uniqueness_check(spec, args.max_index, args.tuple_len)
            row["uniqueness_violations"] = len(report.violations)
            row["violation_examples"] = report.to_dict()["violations"][:VIOLATION_SAMPLE]
        except NegativeTerm as exc:
            row["uniqueness_violations"] = None
            row["uniqueness_failure"] = str(exc)
            ratio_ok = False
        row["status"] = OK if ratio_ok and not row["uniqueness_violations"] else COUNTEREXAMPLE
        rows.append(row)
    params = {"a": args.a, "b": args.b, "a1": args.a1, "n_max": args.n_max,
              "max_index": args.max_index, "tuple_len": args.tuple_len}
    return RunReport([], params, rows, _tally(rows))


def suite_uniqueness(args) -> RunReport:
    return cmd_uniqueness(args)


def _tally(rows: list[dict]) -> dict:
    out: dict[str, int] = {}
    for r in rows:
        out[r["status"]] = out.get(r["status"], 0) + 1
    return {"records": len(rows), "by_status": out}


_SUITE_FNS: dict[str, Callable] = {
    "poset-axioms": suite_poset_axioms,
    "theorem-a": suite_theorem_a,
    "theorem-b": suite_theorem_b,
    "theorem-c": suite_theorem_c,
    "fibonacci": suite_fibonacci,
    "recurrence": suite_recurrence,
    "uniqueness": suite_uniqueness,
}


def cmd_verify(args) -> RunReport:
    if args.suite not in _SUITE_FNS:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    report = _SUITE_FNS[args.suite](args)
    report.parameters = dict(report.parameters, suite=args.suite)
    return report


# -- parser -------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--format", choices=("json", "csv"), help="report format (default json)")
    p.add_argument("--threads", type=_positive_int, help="worker processes for sweeps (default 1)")
    p.add_argument("--precision", type=_precision, help="starting interval precision in bits")
    p.add_argument("--max-precision", type=_precision,
                   help=f"escalation cap in bits (default ${PRECISION_ENV} or {DEFAULTS.max_precision})")
    return p


_COMMON_DEFAULTS = {
    "format": DEFAULTS.report_format,
    "threads": DEFAULTS.threads,
    "precision": DEFAULTS.start_precision,
    "max_precision": None,
}


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="majorder", parents=[common],
                     description="Majorization order, monotone-map theorems and factorial equations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("majorize", parents=[common], help="compare two sequences")
    p.add_argument("a", help="comma-separated positive integers, e.g. 3,1")
    p.add_argument("b")
    p.set_defaults(run=cmd_majorize)

    p = sub.add_parser("enumerate", parents=[common], help="list canonical sequences by weight")
    p.add_argument("--max-sum", type=_positive_int, required=True)
    p.add_argument("--max-len", type=_positive_int, default=None)
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser("solve", parents=[common], help="exhaustively solve one equation")
    p.add_argument("equation", help="one of: " + ", ".join(e.value for e in EquationId))
    p.add_argument("bound", type=_positive_int, nargs="?", default=DEFAULTS.solve_bound,
                   help="max sequence weight, or max k and n for rectangular equations")
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help="one of: " + ", ".join(SUITES))
    p.add_argument("--max-sum", type=_positive_int, default=None)
    p.add_argument("--function", action="append", help="catalog function (repeatable)")
    p.add_argument("--x-max", type=_positive_int, default=DEFAULTS.x_max,
                   help="ratio certificate range for theorem-a")
    p.add_argument("--diff-x-max", type=_positive_int, default=30,
                   help="difference certificate range for theorem-b")
    p.add_argument("--grid", default=DEFAULTS.theorem_c_grid, help="theorem-c grid lo:hi:step")
    p.add_argument("--points", nargs="+", help="theorem-c points (e, pi, p/q, decimals)")
    p.add_argument("--n-max", type=_positive_int, default=None)
    p.add_argument("--source", default="fib-even", help="uniqueness source")
    p.add_argument("--max-index", type=_positive_int, default=None)
    p.add_argument("--tuple-len", type=_positive_int, default=DEFAULTS.uniqueness_tuple_len)
    p.add_argument("--a", default="1..5", help="recurrence a range lo..hi")
    p.add_argument("--b", default="-1..-3", help="recurrence b range lo..hi")
    p.add_argument("--a1", default="0..6", help="recurrence A1 range lo..hi")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("uniqueness", parents=[common], help="search for uniqueness violations")
    p.add_argument("source", help="fib-even, fib-odd or rec:a,b,A1")
    p.add_argument("--max-index", type=_positive_int, default=DEFAULTS.uniqueness_max_index)
    p.add_argument("--tuple-len", type=_positive_int, default=DEFAULTS.uniqueness_tuple_len)
    p.set_defaults(run=cmd_uniqueness)

    p = sub.add_parser("gamma", parents=[common], help="ln Gamma and digamma enclosures at one point")
    p.add_argument("x", help="e, pi, p/q or a decimal")
    p.set_defaults(run=cmd_gamma)

    p = sub.add_parser("fib", parents=[common], help="Fibonacci number F(n), F(0) = F(1) = 1")
    p.add_argument("n", type=int)
    p.add_argument("--binet", action="store_true", help="also check the interval Binet formula up to n")
    p.set_defaults(run=cmd_fib)
    return parser


_SUITE_DEFAULTS = {
    "poset-axioms": {"max_sum": DEFAULTS.poset_max_sum},
    "theorem-a": {"max_sum": DEFAULTS.theorem_a_max_sum},
    "theorem-b": {"max_sum": DEFAULTS.theorem_b_max_sum},
    "fibonacci": {"n_max": DEFAULTS.fib_ratio_n_max},
    "recurrence": {"n_max": DEFAULTS.recurrence_n_max, "max_index": 8},
    "uniqueness": {"max_index": DEFAULTS.uniqueness_max_index},
}


def _fill_defaults(args) -> None:
    for k, v in _COMMON_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.command == "verify":
        for k, v in _SUITE_DEFAULTS.get(args.suite, {}).items():
            if getattr(args, k, None) is None:
                setattr(args, k, v)
    if args.command == "fib" and args.n < 0:
        raise UsageError("n must be >= 0")


def run(argv: Sequence[str] | None = None) -> tuple[RunReport, str]:
    """Parse, execute and render; raises SystemExit(64) on usage errors."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _fill_defaults(args)
        start = time.perf_counter()
        report = args.run(args)
        report.wall_time_ms = int((time.perf_counter() - start) * 1000)
    except (UsageError, InvalidSequence) as exc:
        parser.exit(EXIT_USAGE, f"majorder: error: {exc}\n")
    report.command = ["majorder", *argv]
    text = report.to_json() if args.format == "json" else report.to_csv()
    return report, text


def main(argv: Sequence[str] | None = None) -> int:
    report, text = run(argv)
    sys.stdout.write(text)
    sys.stdout.flush()
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""Acceptance criteria, one test each, every one at its stated bound and time limit.

Each test prints a single ``[PASS]`` or ``[FAIL]`` line through the terminal
reporter (visible under ``pytest -v``) before asserting.
"""

import json
import random
import time
from fractions import Fraction

import pytest

from majorder.cli import run
from majorder.dioph import Classification, solve
from majorder.errors import NotMonotone, Unresolved
from majorder.exact import Ordering, RealInterval, sandwich_check, theorem_c_check
from majorder.monotone import F1, F2, CertKind, diff_profile, factorial_sweep, sum_compare
from majorder.poset import comparable_pairs, enumerate_sequences, majorizes
from majorder.recur import (
    Direction,
    fib,
    fib_odd,
    ratio_monotone_check,
    recurrence_terms,
    uniqueness_check,
    valid_specs,
)

import oracles


@pytest.fixture
def announce(request):
    reporter = request.config.pluginmanager.getplugin("terminalreporter")

    def emit(number: int, ok: bool, seconds: float, detail: str):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2} ({seconds:.1f}s): {detail}"
        if reporter is not None:
            reporter.write_line("")
            reporter.write_line(line)
        else:
            print(line)
    return emit


def cli(*argv):
    report, text = run(list(argv))
    return report.exit_code, json.loads(text)


def pairs_of(records):
    return {(r.a.parts, r.b.parts) for r in records}


# 1 -----------------------------------------------------------------------------

def test_criterion_01_power_equations(announce):
    t = time.perf_counter()
    code_p, plus = cli("solve", "pow-plus", "8")
    code_m, minus = cli("solve", "pow-minus", "8")
    dt = time.perf_counter() - t
    got_p = {(r["k"], r["n"]) for r in plus["records"]}
    got_m = {(r["k"], r["n"]) for r in minus["records"]}
    diag = {(k, k) for k in range(1, 9)}
    ok = got_p == diag and got_m == diag | {(1, 2), (2, 1)} and code_p == code_m == 0 and dt < 5
    announce(1, ok, dt, f"pow-plus {len(got_p)} solutions (diagonal), pow-minus {len(got_m)} "
                        f"(diagonal plus {sorted(got_m - diag)})")
    assert ok


# 2 -----------------------------------------------------------------------------

def test_criterion_02_product_equations(announce):
    t = time.perf_counter()
    code_p, plus = cli("solve", "prod-plus", "12")
    code_m, minus = cli("solve", "prod-minus", "12")
    dt = time.perf_counter() - t
    plus_ok = {r["classification"] for r in plus["records"]} == {"Trivial"}
    trivial = [r for r in minus["records"] if r["classification"] == "Trivial"]
    other = [r for r in minus["records"] if r["classification"] != "Trivial"]

    def small(seq):
        return set(int(x) for x in seq.strip("()").split(",")) <= {1, 2}

    minus_ok = all(small(r["a"]) and small(r["b"]) and r["left"] == r["right"] == "0" for r in other)
    ok = plus_ok and minus_ok and code_p == code_m == 0 and dt < 60
    announce(2, ok, dt, f"prod-plus {len(plus['records'])} trivial; prod-minus {len(trivial)} trivial + "
                        f"{len(other)} with parts in {{1,2}} and both sides 0")
    assert ok


# 3 -----------------------------------------------------------------------------

def test_criterion_03_factorial_products(announce):
    t = time.perf_counter()
    r = factorial_sweep(14)
    dt = time.perf_counter() - t
    identical = sum(oracles.PARTITION_COUNTS[1:15])
    ok = r.clean and r.equal_pairs == identical and dt < 60
    announce(3, ok, dt, f"{r.pairs} comparable pairs, {len(r.violations)} violations, "
                        f"equality on {r.equal_pairs} pairs = {identical} identical pairs")
    assert ok


# 4 -----------------------------------------------------------------------------

def test_criterion_04_radical_product_equations(announce):
    t = time.perf_counter()
    parts = []
    ok = True
    for eq in ("fact-over-power", "ratio-root", "ratio-root-power"):
        stats = {}
        recs = solve(eq, 10, stats=stats)
        bad = [r for r in recs if r.classification is not Classification.TRIVIAL]
        exact_only = "interval" not in stats["methods"]
        ok &= not bad and exact_only
        sample = f" e.g. {bad[0].a} vs {bad[0].b}" if bad else ""
        parts.append(f"{eq}: {len(bad)} non-trivial{sample}, methods {stats['methods']}")
    dt = time.perf_counter() - t
    ok &= dt < 120
    announce(4, ok, dt, "; ".join(parts))
    assert ok


# 5 -----------------------------------------------------------------------------

def test_criterion_05_rectangular_equations(announce):
    t = time.perf_counter()
    parts = []
    ok = True
    for eq in ("rect-fact-over-power", "rect-ratio-root", "rect-ratio-root-power"):
        hits = {r.kn for r in solve(eq, 6)}
        off = sorted(h for h in hits if h[0] != h[1])
        ok &= not off
        parts.append(f"{eq}: off-diagonal {off}")
    dt = time.perf_counter() - t
    ok &= dt < 30
    announce(5, ok, dt, "; ".join(parts))
    assert ok


# 6 -----------------------------------------------------------------------------

def test_criterion_06_sum_functions(announce):
    t = time.perf_counter()
    certs = {}
    ok = True
    for f in (F1, F2):
        try:
            cert = diff_profile(f, 30, max_precision=1024)
            certs[f.name] = cert
            ok &= cert.witness_checked == 30
        except (NotMonotone, Unresolved):
            ok = False
    unresolved = nonstrict = compared = 0
    agree = {"f1": 0, "f2": 0}
    top = 0
    for a, b in comparable_pairs(8):
        if a.parts == b.parts:
            continue
        for f in (F1, F2):
            for shifted in (True, False):
                compared += 1
                try:
                    order, used = sum_compare(f, a, b, max_precision=1024, shifted=shifted)
                except Unresolved:
                    unresolved += 1
                    continue
                top = max(top, used)
                nonstrict += order is Ordering.EQUAL
                if shifted and f.name in certs:
                    want = Ordering.GREATER if certs[f.name].kind.increasing else Ordering.LESS
                    agree[f.name] += order is want
    dt = time.perf_counter() - t
    ok &= unresolved == 0 and nonstrict == 0 and len(certs) == 2 and dt < 120
    kinds = {k: v.kind.value for k, v in certs.items()}
    n_pairs = compared // 4
    announce(6, ok, dt, f"certificates {kinds}; {compared} comparisons over {n_pairs} pairs, "
                        f"{unresolved} unresolved, {nonstrict} ties, max {top} bits; shifted order "
                        f"matches certificate direction f1 {agree['f1']}/{n_pairs}, f2 {agree['f2']}/{n_pairs}")
    assert ok


# 7 -----------------------------------------------------------------------------

def test_criterion_07_fibonacci(announce):
    t = time.perf_counter()
    even_ok = all(fib(2 * n + 2) * fib(2 * n - 2) > fib(2 * n) ** 2 for n in range(1, 201))
    # odd-index analogue: the ratio F(2n+3)/F(2n+1) is strictly monotone (it decreases)
    odd_dir = ratio_monotone_check([fib_odd(n) for n in range(202)])
    odd_greater = sum(fib(2 * n + 3) * fib(2 * n - 1) > fib(2 * n + 1) ** 2 for n in range(1, 201))
    ue = uniqueness_check("fib-even", 10, 3)
    uo = uniqueness_check("fib-odd", 10, 3)
    dt = time.perf_counter() - t
    ok = even_ok and odd_dir is Direction.DECREASING and ue.holds and uo.holds and dt < 30
    announce(7, ok, dt, f"even ratio increasing n<=200: {even_ok}; odd ratio {odd_dir.value} "
                        f"(the '>' form holds for {odd_greater}/200 n); uniqueness violations "
                        f"even {len(ue.violations)}, odd {len(uo.violations)}")
    assert ok


# 8 -----------------------------------------------------------------------------

def test_criterion_08_recurrence_matrix(announce):
    t = time.perf_counter()
    specs = list(valid_specs())
    bad_ratio, bad_unique = [], []
    for spec in specs:
        try:
            ratio_monotone_check(recurrence_terms(spec, 20))
        except NotMonotone:
            bad_ratio.append(spec.label)
        rep = uniqueness_check(spec, 8, 3)
        if not rep.holds:
            bad_unique.append(f"{spec.label} x{len(rep.violations)} e.g. {rep.violations[0]}")
    dt = time.perf_counter() - t
    ok = not bad_ratio and not bad_unique and dt < 60
    announce(8, ok, dt, f"{len(specs)} valid specs; ratio failures {bad_ratio}; "
                        f"uniqueness failures {bad_unique}")
    assert ok


# 9 -----------------------------------------------------------------------------

def test_criterion_09_gamma_bounds(announce):
    t = time.perf_counter()
    rng = random.Random(20240601)
    points = [Fraction(11, 10), Fraction(3, 2), Fraction(2), RealInterval.e, Fraction(5), Fraction(10),
              Fraction(50)]
    for _ in range(100):
        den = rng.randint(1, 1000)
        points.append(1 + Fraction(rng.randint(1, 49 * den), den))
    failed, unresolved, top = [], 0, 0
    for x in points:
        try:
            res = theorem_c_check(x)
        except Unresolved:
            unresolved += 1
            continue
        top = max(top, res.precision)
        if not (res.bound1 and res.bound2):
            failed.append(str(x))
    sandwich_bad = [(x, k) for x in (2, 5, 10, 20) for k, v in sandwich_check(x).items() if v is not True]
    dt = time.perf_counter() - t
    ok = not failed and unresolved == 0 and not sandwich_bad and dt < 30
    announce(9, ok, dt, f"{len(points)} points, {len(failed)} failed, {unresolved} unresolved, "
                        f"max {top} bits; sandwich failures {sandwich_bad}")
    assert ok


# 10 ----------------------------------------------------------------------------

SEQUENCE_BOUNDS = [("prod-plus", 12), ("prod-minus", 12), ("fact-over-power", 10), ("ratio-root", 10),
                   ("ratio-root-power", 10), ("sum-f1", 8), ("sum-f2", 8)]
RECT_BOUNDS = [("pow-plus", 8), ("pow-minus", 8), ("rect-fact-over-power", 6), ("rect-ratio-root", 6),
               ("rect-ratio-root-power", 6)]


def test_criterion_10_oracle_equivalence(announce):
    t = time.perf_counter()
    mismatched = []
    for eq, bound in SEQUENCE_BOUNDS:
        if pairs_of(solve(eq, bound)) != oracles.naive_solutions(eq, bound):
            mismatched.append(eq)
    for eq, bound in RECT_BOUNDS:
        if {r.kn for r in solve(eq, bound)} != oracles.naive_rectangular(eq, bound):
            mismatched.append(eq)
    seq12 = list(enumerate_sequences(12))
    reflexive = all(majorizes(a, a) for a in seq12)
    antisym = all(not (majorizes(a, b) and majorizes(b, a))
                  for i, a in enumerate(seq12) for b in seq12[i + 1:] if len(a) == len(b))
    seq9 = list(enumerate_sequences(9))
    up = {a.parts: {b.parts for b in seq9 if majorizes(a, b)} for a in seq9}
    transitive = all(up[b] <= up[a] for a in up for b in up[a])
    counts = [sum(1 for s in enumerate_sequences(n) if s.total == n) for n in range(1, 9)]
    counts_ok = counts == [oracles.partition_count(n) for n in range(1, 9)] == oracles.PARTITION_COUNTS[1:9]
    dt = time.perf_counter() - t
    ok = not mismatched and reflexive and antisym and transitive and counts_ok
    announce(10, ok, dt, f"solver/oracle mismatches {mismatched}; reflexive {reflexive}, antisymmetric "
                         f"{antisym} (sum<=12), transitive {transitive} (sum<=9); p(1..8) = {counts}")
    assert ok

from fractions import Fraction

import mpmath
import pytest

from majorder.errors import F0NotOne, NotMonotone, PreconditionUnmet, TheoremViolation
from majorder.monotone import (
    BUILTINS,
    F1,
    F2,
    FACT_OVER_SELF_POWER,
    FACTORIAL,
    FIB_EVEN,
    FIB_ODD,
    RATIO_ROOT,
    RATIO_ROOT_POWER,
    CertKind,
    Relation,
    custom,
    diff_profile,
    exp_composition_check,
    factorial_sweep,
    ratio_profile,
    recurrence,
    sum_compare,
    theorem_a_sweep,
    theorem_b_sweep,
    verify_product_inequality,
    verify_sum_inequality,
)
from majorder.exact import Ordering
from majorder.poset import canonicalize
from majorder.recur import RecurrenceSpec

import oracles


def S(*parts):
    return canonicalize(parts)


def total(text):
    return sum(int(x) for x in text.strip("()").split(","))


# -- catalog values -----------------------------------------------------------

def test_catalog_values_at_small_points():
    assert FACTORIAL(5).as_fraction() == 120
    assert FACT_OVER_SELF_POWER(3).as_fraction() == Fraction(6, 27)
    assert RATIO_ROOT(1).as_fraction() == Fraction(3, 2)
    assert RATIO_ROOT(2).as_fraction() == 2
    assert RATIO_ROOT_POWER(1).as_fraction() == 2
    assert RATIO_ROOT_POWER(2).as_fraction() == 8
    assert FIB_EVEN(3).as_fraction() == 13
    assert FIB_ODD(3).as_fraction() == 21
    for f in BUILTINS.values():
        if f.name not in ("f1", "f2"):
            assert f(0).is_one


def test_radical_values_against_mpmath():
    mpmath.mp.dps = 50
    from majorder.exact import pp_interval_eval
    for x in range(2, 9):
        want = mpmath.mpf(x) / mpmath.root(mpmath.factorial(x - 1), x - 1)
        iv = pp_interval_eval(RATIO_ROOT(x), 128)
        assert iv.lo <= want <= iv.hi or abs(iv.midpoint - float(want)) < 1e-30
        want1 = mpmath.root(mpmath.factorial(x + 1), x + 2)
        iv1 = pp_interval_eval(F1(x), 128)
        assert abs(iv1.midpoint - float(want1)) < 1e-12


# -- certificates -------------------------------------------------------------

@pytest.mark.parametrize("f, kind", [
    (FACTORIAL, CertKind.RATIO_INCREASING),
    (FACT_OVER_SELF_POWER, CertKind.RATIO_DECREASING),
    (FIB_EVEN, CertKind.RATIO_INCREASING),
    (FIB_ODD, CertKind.RATIO_DECREASING),
    (RATIO_ROOT, CertKind.RATIO_DECREASING),
    (RATIO_ROOT_POWER, CertKind.RATIO_INCREASING),
    (F1, CertKind.RATIO_DECREASING),
])
def test_ratio_certificates(f, kind):
    cert = ratio_profile(f, 50)
    assert cert.kind is kind
    assert cert.witness_checked == cert.x_max == 50
    assert ratio_profile(f, 50) == cert
    assert ratio_profile(f, 12).interval_steps == 0


def test_ratio_profile_rejects_f0_not_one():
    with pytest.raises(F0NotOne):
        ratio_profile(F2, 10)


def test_ratio_profile_detects_geometric_tie():
    with pytest.raises(NotMonotone):
        ratio_profile(custom("pow2", lambda x: Fraction(2) ** x), 5)


@pytest.mark.parametrize("f, kind", [(F1, CertKind.DIFF_INCREASING), (F2, CertKind.DIFF_DECREASING)])
def test_diff_certificates(f, kind):
    cert = diff_profile(f, 30)
    assert cert.kind is kind and cert.witness_checked == 30
    assert cert.interval_steps == 30 and cert.max_precision_used == 128
    assert diff_profile(f, 30) == cert


def test_diff_directions_against_mpmath():
    mpmath.mp.dps = 60

    def d2(shift, x):
        g = lambda t: mpmath.root(mpmath.factorial(t + shift), t + 2)
        return g(x + 1) - 2 * g(x) + g(x - 1)

    assert all(d2(1, x) > 0 for x in range(1, 31))
    assert all(d2(2, x) < 0 for x in range(1, 31))


def test_linear_probe_is_not_monotone():
    with pytest.raises(NotMonotone):
        diff_profile(custom("linear", lambda x: Fraction(x)), 10)


# -- single-pair conclusions --------------------------------------------------

def test_product_examples():
    cert = ratio_profile(FACTORIAL, 12)
    assert verify_product_inequality(FACTORIAL, S(3, 1), S(2, 2), cert) is Relation.STRICTLY_GREATER
    assert verify_product_inequality(FACTORIAL, S(4, 2), S(4, 2), cert) is Relation.EQUAL
    c2 = ratio_profile(FACT_OVER_SELF_POWER, 12)
    assert verify_product_inequality(FACT_OVER_SELF_POWER, S(3, 1), S(2, 2), c2) is Relation.STRICTLY_LESS


def test_product_preconditions():
    cert = ratio_profile(FACTORIAL, 5)
    with pytest.raises(PreconditionUnmet):
        verify_product_inequality(FACTORIAL, S(2, 2), S(3, 1), cert)
    with pytest.raises(PreconditionUnmet):
        verify_product_inequality(FACTORIAL, S(9), S(8), cert)
    with pytest.raises(PreconditionUnmet):
        verify_product_inequality(FACT_OVER_SELF_POWER, S(3, 1), S(2, 2), cert)


def test_unequal_totals_break_the_product_form():
    # (2) ≻ (1), and the decreasing-ratio certificate predicts f(2) < f(1),
    # but f(2) = 2 > 3/2 = f(1)
    cert = ratio_profile(RATIO_ROOT, 12)
    with pytest.raises(TheoremViolation):
        verify_product_inequality(RATIO_ROOT, S(2), S(1), cert)


def test_sum_examples():
    c1 = diff_profile(F1, 10)
    assert verify_sum_inequality(F1, S(2, 1), S(2, 1), c1) is Relation.EQUAL
    assert verify_sum_inequality(F1, S(3, 1), S(2, 2), c1) is Relation.STRICTLY_GREATER
    c2 = diff_profile(F2, 10)
    # (2) against (1,1): shifted sums differ in length, unshifted order recorded below
    order, _ = sum_compare(F2, S(2), S(1, 1), shifted=False)
    mpmath.mp.dps = 40
    lhs = mpmath.root(24, 4)
    rhs = 2 * mpmath.root(6, 3)
    assert order is (Ordering.GREATER if lhs > rhs else Ordering.LESS)
    assert sum_compare(F2, S(3, 1), S(2, 2))[0] is Ordering.LESS
    assert verify_sum_inequality(F2, S(3, 1), S(2, 2), c2) is Relation.STRICTLY_LESS


def test_sum_compare_matches_mpmath_unshifted():
    mpmath.mp.dps = 60
    for a, b in oracles.pairs(6):
        if a == b:
            continue
        for f, name in ((F1, "sum-f1"), (F2, "sum-f2")):
            want = oracles.sum_side(a, name) - oracles.sum_side(b, name)
            got, _ = sum_compare(f, S(*a), S(*b), shifted=False)
            assert got is (Ordering.GREATER if want > 0 else Ordering.LESS)


# -- sweeps -------------------------------------------------------------------

def test_factorial_sweep_clean():
    r = factorial_sweep(12)
    assert r.clean and r.pairs == 17950
    assert r.equal_pairs == sum(oracles.PARTITION_COUNTS[1:13])


@pytest.mark.parametrize("f", [FACTORIAL, FACT_OVER_SELF_POWER, RATIO_ROOT_POWER, FIB_EVEN])
def test_theorem_a_clean_functions(f):
    r = theorem_a_sweep(f, 10)
    assert r.clean
    assert r.equal_pairs == sum(oracles.PARTITION_COUNTS[1:11])


@pytest.mark.parametrize("f", [RATIO_ROOT, F1, FIB_ODD])
def test_theorem_a_violations_only_on_unequal_totals(f):
    r = theorem_a_sweep(f, 10)
    assert r.violations
    assert all(total(v["a"]) != total(v["b"]) for v in r.violations)
    ties = [v for v in r.violations if v["observed"] == Relation.EQUAL.value]
    assert r.equal_pairs - len(ties) == sum(oracles.PARTITION_COUNTS[1:11])


def test_ratio_root_has_nontrivial_ties():
    # f(3)^2 = 9/2 = f(2) f(1)^2 with f(1) = 3/2
    r = theorem_a_sweep(RATIO_ROOT, 6)
    assert {"a": "(3,3)", "b": "(2,1,1)", "observed": "Equal", "expected": "StrictlyLess"} in r.violations


def test_theorem_a_equal_totals_always_hold():
    for f in (RATIO_ROOT, F1, FIB_ODD, recurrence(RecurrenceSpec(3, -1, 3))):
        r = theorem_a_sweep(f, 9)
        assert not [v for v in r.violations if total(v["a"]) == total(v["b"])]


def test_ratio_root_violation_count_matches_oracle():
    # independent exact count of pairs where the observed order contradicts the
    # decreasing-ratio conclusion
    import math
    bad = 0
    for a, b in oracles.pairs(8):
        if a == b:
            continue
        L = math.lcm(*[x - 1 for x in a + b if x > 1], 1)
        va = oracles._radical_power(a, "ratio-root", L)
        vb = oracles._radical_power(b, "ratio-root", L)
        if not va < vb:
            bad += 1
    assert len(theorem_a_sweep(RATIO_ROOT, 8).violations) == bad > 0


def test_theorem_b():
    r1 = theorem_b_sweep(F1, 6)
    assert r1.clean and not r1.unresolved
    r2 = theorem_b_sweep(F2, 6)
    assert not r2.unresolved
    assert r2.violations and all(total(v["a"]) != total(v["b"]) for v in r2.violations)


def test_threads_do_not_change_results():
    assert theorem_a_sweep(RATIO_ROOT, 7, workers=2).to_dict() == theorem_a_sweep(RATIO_ROOT, 7).to_dict()


def test_exp_composition():
    assert exp_composition_check(F1, 10)
    assert exp_composition_check(F2, 10)

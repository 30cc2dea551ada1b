"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line in the summary."""
import random
import time
from fractions import Fraction

import mpmath

from tutte_ss import evaluations as ev
from tutte_ss import recursion
from tutte_ss.exactmath import UniPoly
from tutte_ss.graphs import build_contracted, build_hanoi, build_sierpinski, edge_count
from tutte_ss.oracle import (
    count_acyclic_orientations,
    count_connected_spanning_subgraphs,
    count_proper_colorings,
    count_spanning_forests,
    ising_partition_exact,
    reliability_exact,
    spanning_tree_count,
    tutte_deletion_contraction,
    tutte_subset_expansion,
)

BUILD = {"sierpinski": build_sierpinski, "hanoi": build_hanoi}


def _rand_rational(rng, lo=-15, hi=15):
    return Fraction(rng.randint(lo, hi), rng.randint(1, 11))


def test_criterion_1_oracle_equality(acceptance_record):
    start = time.perf_counter()
    results = {}
    for family in ("sierpinski", "hanoi"):
        for n in (1, 2):
            g = BUILD[family](n)[0]
            t = recursion.tutte_polynomial(family, n)
            results[f"{family}{n}"] = t == tutte_subset_expansion(g) == tutte_deletion_contraction(g)
    g = build_contracted(2)[0]
    t = recursion.contracted_tutte(2)
    results["contracted2"] = t == tutte_subset_expansion(g) == tutte_deletion_contraction(g)
    elapsed = time.perf_counter() - start
    ok = all(results.values()) and elapsed < 5
    acceptance_record(1, ok, f"exact polynomial equality {results}, {elapsed:.2f}s (< 5s)")
    assert ok


def test_criterion_2_complexity(acceptance_record):
    start = time.perf_counter()
    bad = []
    for family in ("sierpinski", "hanoi"):
        for n in range(1, 5):
            if ev.complexity(family, n) != spanning_tree_count(BUILD[family](n)[0]):
                bad.append(("matrix-tree", family, n))
        for n in range(1, 9):
            pt = recursion.eval_triple_at_point(family, n, 1, 1)
            if pt.total() != ev.closed_form_complexity(family, n):
                bad.append(("closed-tau", family, n))
            if (pt.n, pt.m) != ev.closed_form_reduced_at_one(family, n):
                bad.append(("closed-NM", family, n))
    for n in range(2, 5):
        if recursion.contracted_tutte_at_point(n, 1, 1) != spanning_tree_count(build_contracted(n)[0]):
            bad.append(("matrix-tree", "contracted", n))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    acceptance_record(2, ok, f"complexity vs matrix-tree (n<=4) and closed forms (n<=8), mismatches={bad}, "
                             f"{elapsed:.2f}s (< 10s)")
    assert ok


def test_criterion_3_specializations(acceptance_record):
    start = time.perf_counter()
    g2, s2 = build_sierpinski(2)[0], build_hanoi(2)[0]
    checks = {
        "csub G2=160": ev.connected_spanning_subgraphs("sierpinski", 2) == count_connected_spanning_subgraphs(g2) == 160,
        "csub S2=352": ev.connected_spanning_subgraphs("hanoi", 2) == count_connected_spanning_subgraphs(s2) == 352,
        "forests G2=279": ev.spanning_forests("sierpinski", 2) == count_spanning_forests(g2) == 279,
        "acyclic G2=162": ev.acyclic_orientations("sierpinski", 2) == count_acyclic_orientations(g2) == 162,
        "3-col G2=6": ev.chromatic_at("sierpinski", 2, 3) == count_proper_colorings(g2, 3) == 6,
    }
    elapsed = time.perf_counter() - start
    ok = all(checks.values()) and elapsed < 5
    acceptance_record(3, ok, f"level-2 specializations {checks}, {elapsed:.2f}s (< 5s)")
    assert ok


def test_criterion_4_identity_suite(acceptance_record):
    bad = []
    for n in range(1, 7):
        if ev.total_subgraphs("sierpinski", n) != 2 ** (3 ** n):
            bad.append(("T(2,2)", n))
        if ev.total_subgraphs("hanoi", n) != 2 ** ((3 ** (n + 1) - 3) // 2):
            bad.append(("H(2,2)", n))
        if ev.chromatic_at("sierpinski", n, 3) != 6:
            bad.append(("chi(3)", n))
        s = (-1) ** (n + 1)
        if ev.three_coloring_values(n)[-1] != (2 * s, -3 * s, 9 * s):
            bad.append(("P-values", n))
        for family in ("sierpinski", "hanoi"):
            try:
                ev.acyclic_orientations(family, n)
            except AssertionError:
                bad.append(("acyclic-aggregate", family, n))
    for family in ("sierpinski", "hanoi"):
        for n in (1, 2, 3):
            tr = recursion.full_table_triple(family, n)
            try:
                tr.t1.divide_x_minus_1(1)
                tr.t0.divide_x_minus_1(2)
            except ArithmeticError:
                bad.append(("divisibility", family, n))
    ok = not bad
    acceptance_record(4, ok, f"identity suite n<=6 (2^|E|, chi(3)=6, P-values, aggregates, divisibility n<=3), "
                             f"failures={bad}")
    assert ok


def test_criterion_5_join_identity(acceptance_record):
    start = time.perf_counter()
    symbolic = [recursion.join_identity_residual(n).is_zero() for n in (1, 2)]
    rng = random.Random(20261016)
    points = [(_rand_rational(rng), _rand_rational(rng)) for _ in range(50)]
    at_points = sum(recursion.join_identity_residual_at(3, x0, y0) == 0 for x0, y0 in points)
    elapsed = time.perf_counter() - start
    ok = all(symbolic) and at_points == 50 and elapsed < 60
    acceptance_record(5, ok, f"join residual zero symbolically n=1,2: {symbolic}; zero at {at_points}/50 points n=3; "
                             f"{elapsed:.2f}s (< 60s)")
    assert ok


def test_criterion_6_reliability(acceptance_record):
    p = UniPoly({1: 1}, "p")
    checks = {"R(G1)=3p^2-2p^3": ev.reliability_polynomial("sierpinski", 1) == p * p * 3 - p ** 3 * 2}
    for family in ("sierpinski", "hanoi"):
        checks[f"{family}2 vs oracle"] = ev.reliability_polynomial(family, 2) == reliability_exact(BUILD[family](2)[0])
    grid = [Fraction(k, 1000) for k in range(1001)]
    for family in ("sierpinski", "hanoi"):
        for n in range(1, 5):
            r = ev.reliability_polynomial(family, n)
            values = [r.evaluate(q) for q in grid]
            checks[f"{family}{n} bounds/monotone"] = (
                values[0] == 0 and values[-1] == 1
                and all(0 <= v <= 1 for v in values)
                and all(a <= b for a, b in zip(values, values[1:]))
            )
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    acceptance_record(6, ok, f"reliability exact and monotone on 1001-point grid n<=4, failures={failed}")
    assert ok


def test_criterion_7_ising(acceptance_record):
    checks = {}
    for family in ("sierpinski", "hanoi"):
        checks[f"{family}2 spin enumeration"] = (
            ev.ising_partition(family, 2) == ising_partition_exact(BUILD[family](2)[0])
        )
    rng = random.Random(7)
    ts = [Fraction(rng.randint(11, 60), 10) for _ in range(10)]
    checks["psi product exact n<=5"] = all(
        ev.ising_product_formula("hanoi", n, t) == ev.ising_partition_at("hanoi", n, t)
        for n in range(1, 6) for t in ts
    )
    worst = mpmath.mpf(0)
    with mpmath.workdps(ev.ISING_DIGITS):
        for n in range(1, 6):
            for t in (Fraction(2), Fraction(3, 2), Fraction(7, 3)):
                exact = ev.ising_partition_at("sierpinski", n, t)
                exact = mpmath.mpf(int(exact.numerator)) / int(exact.denominator)
                approx = ev.ising_product_formula("sierpinski", n, t)
                worst = max(worst, abs(approx - exact) / exact)
    checks["phi product rel err < 1e-30"] = worst < mpmath.mpf(10) ** -30
    for family in ("sierpinski", "hanoi"):
        checks[f"{family} A/B recursions n<=3"] = all(
            a.is_zero() and b.is_zero() for _, a, b in ev.hyperbola_residuals(family, 3)
        )
    ok = all(checks.values())
    acceptance_record(7, ok, f"Ising {checks}, worst phi relative error {mpmath.nstr(worst, 3)}")
    assert ok


def test_criterion_8_growth_constants(acceptance_record):
    parts = []
    ok = True
    for family in ("sierpinski", "hanoi"):
        start = time.perf_counter()
        tau = ev.complexity(family, 10)
        elapsed = time.perf_counter() - start
        v = (3 ** 10 + 3) // 2 if family == "sierpinski" else 3 ** 10
        with mpmath.workdps(30):
            gap = abs(mpmath.log(mpmath.mpf(tau)) / v - ev.growth_limit(family))
        ok &= gap < 1e-3 and elapsed < 1
        parts.append(f"{family}: gap {mpmath.nstr(gap, 3)} (< 1e-3), {elapsed:.3f}s (< 1s)")
    acceptance_record(8, ok, "; ".join(parts))
    assert ok


def test_criterion_9_performance(acceptance_record):
    rng = random.Random(99)
    parts = []
    ok = True
    for family in ("sierpinski", "hanoi"):
        x0, y0 = _rand_rational(rng, 2, 40), _rand_rational(rng, 2, 40)
        start = time.perf_counter()
        pt = recursion.eval_triple_at_point(family, 12, x0, y0)
        elapsed = time.perf_counter() - start
        ok &= elapsed < 10 and pt.total() != 0
        parts.append(f"point {family} n=12 at ({x0},{y0}) {elapsed:.2f}s (< 10s)")
    recursion.clear_cache()
    start = time.perf_counter()
    terms = {}
    for family in ("sierpinski", "hanoi"):
        t = recursion.tutte_polynomial(family, 5)
        terms[family] = len(t)
        ok &= t(2, 2) == 2 ** edge_count(family, 5)
    elapsed = time.perf_counter() - start
    ok &= elapsed < 120 and max(terms.values()) < recursion.term_cap()
    parts.append(f"symbolic level 5 both families {elapsed:.2f}s (< 120s), terms {terms}")
    acceptance_record(9, ok, "; ".join(parts))
    assert ok

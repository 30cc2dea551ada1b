import csv
import io
import json
import math
from fractions import Fraction

import mpmath
import pytest

from tutte_ss import evaluations as ev
from tutte_ss.errors import DomainError
from tutte_ss.exactmath import RationalFn, UniPoly
from tutte_ss.graphs import build_hanoi, build_sierpinski, edge_count, vertex_count
from tutte_ss.oracle import (
    count_proper_colorings,
    count_spanning_forests,
    ising_partition_exact,
    reliability_exact,
)
from tutte_ss.recursion import FAMILIES, eval_triple_at_point

BUILD = {"sierpinski": build_sierpinski, "hanoi": build_hanoi}
lam = UniPoly({1: 1}, "λ")
p = UniPoly({1: 1}, "p")
t = UniPoly({1: 1}, "t")


def test_complexity_examples():
    assert ev.complexity("sierpinski", 1) == 3
    assert ev.complexity("sierpinski", 2) == 54
    assert ev.complexity("hanoi", 3) == 3 ** 8 * 5 ** 5


def test_closed_form_examples():
    assert ev.closed_form_complexity("sierpinski", 2) == 54
    assert ev.closed_form_reduced_at_one("sierpinski", 2) == (30, 50)
    assert ev.closed_form_reduced_at_one("hanoi", 2) == (120, 320)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("n", range(1, 9))
def test_closed_forms_match_recursion(family, n):
    pt = eval_triple_at_point(family, n, 1, 1)
    assert pt.total() == ev.closed_form_complexity(family, n)
    assert (pt.n, pt.m) == ev.closed_form_reduced_at_one(family, n)


def test_counting_examples():
    assert ev.connected_spanning_subgraphs("sierpinski", 1) == 4
    assert ev.connected_spanning_subgraphs("sierpinski", 2) == 160
    assert ev.connected_spanning_subgraphs("hanoi", 2) == 352
    assert ev.spanning_forests("sierpinski", 1) == 7
    assert ev.spanning_forests("sierpinski", 2) == 279
    assert ev.spanning_forests("hanoi", 2) == count_spanning_forests(build_hanoi(2)[0])
    assert ev.acyclic_orientations("sierpinski", 1) == 6
    assert ev.acyclic_orientations("sierpinski", 2) == 162
    assert ev.acyclic_orientations("hanoi", 2) == 1674


@pytest.mark.parametrize("family", FAMILIES)
def test_two_to_the_edges(family):
    for n in range(1, 9):
        assert ev.total_subgraphs(family, n) == 1 << edge_count(family, n)


@pytest.mark.parametrize("family", FAMILIES)
def test_acyclic_aggregate_holds_through_level_eight(family):
    assert ev.acyclic_orientations(family, 8) > 0


def test_chromatic_examples():
    assert ev.chromatic_polynomial("sierpinski", 1) == lam * (lam - 1) * (lam - 2)
    for n in range(1, 7):
        assert ev.chromatic_at("sierpinski", n, 3) == 6
    assert ev.chromatic_polynomial("hanoi", 2).evaluate(3) == count_proper_colorings(build_hanoi(2)[0], 3)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_chromatic_paths_agree_and_vanish(family, n):
    a = ev.chromatic_polynomial(family, n)
    assert a == ev.chromatic_polynomial(family, n, "recursion")
    assert [a.evaluate(k) for k in (0, 1, 2)] == [0, 0, 0]
    assert a.degree() == vertex_count(family, n)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("colors", [3, 4])
def test_chromatic_sign_against_colouring_oracle(family, colors):
    for n in (1, 2):
        g = BUILD[family](n)[0]
        assert ev.chromatic_polynomial(family, n).evaluate(colors) == count_proper_colorings(g, colors)


def test_three_colouring_values():
    vals = ev.three_coloring_values(2)
    assert vals[0] == (2, -3, 9)
    assert vals[1] == (-2, 3, -9)
    assert ev.unique_three_colorability_check(1)
    assert ev.unique_three_colorability_check(7)


def test_reliability_examples():
    assert ev.reliability_polynomial("sierpinski", 1) == p * p * 3 - p ** 3 * 2
    for family in FAMILIES:
        g = BUILD[family](2)[0]
        assert ev.reliability_polynomial(family, 2) == reliability_exact(g)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_reliability_endpoints(family, n):
    r = ev.reliability_polynomial(family, n)
    assert r.evaluate(0) == 0 and r.evaluate(1) == 1


def test_ising_examples():
    assert ev.ising_partition("sierpinski", 1) == t ** 3 * 2 + UniPoly({-1: 6}, "t")
    assert ev.ising_partition("hanoi", 2) == ising_partition_exact(build_hanoi(2)[0])


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_ising_symmetries(family, n):
    z = ev.ising_partition(family, n)
    e, v = edge_count(family, n), vertex_count(family, n)
    assert z.degree() == e and z.coeff(e) == 2
    assert all((k - e) % 2 == 0 and c > 0 for k, c in z.items())
    assert z.evaluate(1) == 2 ** v


def test_ising_point_matches_polynomial():
    z = ev.ising_partition("hanoi", 3)
    assert ev.ising_partition_at("hanoi", 3, Fraction(3, 2)) == z.evaluate(Fraction(3, 2))
    assert ev.ising_partition_at("hanoi", 2, Fraction(3, 2)) == ising_partition_exact(build_hanoi(2)[0]).evaluate(
        Fraction(3, 2))


def test_psi_example():
    assert ev.psi_sequence(2, 1) == [2, 2]


def test_product_formula_domain():
    with pytest.raises(DomainError):
        ev.ising_product_formula("hanoi", 2, 1)
    with pytest.raises(DomainError):
        ev.ising_product_formula("sierpinski", 2, Fraction(1, 2))


def test_product_formulas_level_one_and_two():
    for n in (1, 2):
        assert ev.ising_product_formula("hanoi", n, 3) == ev.ising_partition_at("hanoi", n, 3)
        with mpmath.workdps(130):
            exact = ev.ising_partition_at("sierpinski", n, 2)
            exact = mpmath.mpf(int(exact.numerator)) / int(exact.denominator)
            approx = ev.ising_product_formula("sierpinski", n, 2)
            assert abs(approx - exact) / exact < mpmath.mpf(10) ** -30


def test_hyperbola_initial_values():
    y = UniPoly({1: 1}, "y")
    a, b = ev.hyperbola_ab("sierpinski", 1)
    assert a == RationalFn(y * (y + 1), y - 1)
    assert b == RationalFn(y * 4, (y - 1) ** 2)


@pytest.mark.parametrize("family", FAMILIES)
def test_hyperbola_recursions(family):
    for _, ra, rb in ev.hyperbola_residuals(family, 3):
        assert ra.is_zero() and rb.is_zero()


def test_growth_series():
    s = ev.growth_constant_series("sierpinski", 3)
    with mpmath.workdps(30):
        assert abs(s.entries[0][1] - mpmath.log(3) / 3) < mpmath.mpf(10) ** -25
    assert abs(float(ev.growth_limit("sierpinski")) - 1.0485948565930) < 1e-12
    assert abs(float(ev.growth_limit("hanoi")) - (math.log(3) + math.log(5)) / 4) < 1e-15
    rows = list(csv.reader(io.StringIO(s.to_csv())))
    assert rows[0] == ["family", "level", "log_complexity_per_vertex"] and len(rows) == 4


@pytest.mark.parametrize("family", FAMILIES)
def test_report_level_two(family):
    rep = ev.evaluation_report(family, 2)
    assert rep.consistent()
    assert set(rep.values["complexity"]) == {"recursion", "closedForm", "oracle"}
    assert rep.totalSubgraphs == 1 << edge_count(family, 2)
    obj = json.loads(rep.to_json())
    assert obj["values"]["complexity"]["oracle"] == str(rep.complexity)
    assert "oracle" in rep.to_csv()


def test_report_without_oracle():
    rep = ev.evaluation_report("hanoi", 6)
    assert rep.consistent()
    assert "oracle" not in rep.values["complexity"]

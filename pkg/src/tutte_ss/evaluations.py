"""Named specializations of the family Tutte polynomials.

Values at a single point go through the point recursion.  Whole-polynomial
outputs (chromatic, reliability, Ising in ``t``) use symbolic recursion over
univariate rings.  Where an independent route exists (closed formula or
brute-force oracle) :func:`evaluation_report` records every route and checks
that they agree.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import gmpy2
import mpmath

from . import oracle
from .errors import DomainError, InvariantViolation, NotLaurent, ResourceCap, TooLarge, TooManyEdges
from .exactmath import RationalFn, UniPoly, as_rational, rational_str, subst_chromatic, subst_hyperbola
from .graphs import build_hanoi, build_sierpinski, edge_count, vertex_count
from .recursion import (
    FAMILIES,
    OperatorRing,
    _check_family,
    eval_total_at_point,
    point_chain,
    run_table,
    term_cap,
    tutte_polynomial,
    triple,
)

# product-formula precision for the half-integer powers of z
ISING_DIGITS = 128


def _require_int(v) -> int:
    v = as_rational(v)
    if getattr(v, "denominator", 1) != 1:
        raise InvariantViolation(f"expected an integer count, got {v}")
    return int(v.numerator) if not isinstance(v, int) else v


def _sizes(family: str, n: int) -> Tuple[int, int]:
    _check_family(family)
    return vertex_count(family, n), edge_count(family, n)


# ---------------------------------------------------------------------------
# counting sequences
# ---------------------------------------------------------------------------


def complexity(family: str, n: int) -> int:
    """Number of spanning trees."""
    return _require_int(eval_total_at_point(family, n, 1, 1))


def _exp4(num: int) -> int:
    if num % 4:
        raise InvariantViolation("closed-form exponent is not an integer")
    return num // 4


def closed_form_complexity(family: str, n: int) -> int:
    _check_family(family)
    if n < 1:
        raise ValueError("level must be positive")
    t = 3 ** n
    if family == "sierpinski":
        s = 3 ** (n - 1)
        return 2 ** ((s - 1) // 2) * 3 ** _exp4(t + 2 * n - 1) * 5 ** _exp4(s - 2 * n + 1)
    return 3 ** _exp4(t + 2 * n - 1) * 5 ** _exp4(t - 2 * n - 1)


def closed_form_reduced_at_one(family: str, n: int) -> Tuple[int, int]:
    """Closed forms for the reduced components ``(n, m)`` at ``x = y = 1``."""
    _check_family(family)
    if n < 1:
        raise ValueError("level must be positive")
    t = 3 ** n
    if family == "sierpinski":
        s = 3 ** (n - 1)
        two = 2 ** ((s - 1) // 2)
        nn = two * 3 ** _exp4(t - 2 * n - 1) * 5 ** _exp4(s + 2 * n - 3)
        mm = two * 3 ** _exp4(t - 6 * n + 3) * 5 ** _exp4(s + 6 * n - 7)
        return nn, mm
    half = (5 ** n - 3 ** n) // 2
    five = 5 ** _exp4(t - 2 * n - 1)
    nn = 3 ** _exp4(t - 2 * n - 1) * five * half
    mm = 3 ** _exp4(t - 6 * n + 3) * five * half * half
    return nn, mm


def connected_spanning_subgraphs(family: str, n: int) -> int:
    return _require_int(eval_total_at_point(family, n, 1, 2))


def spanning_forests(family: str, n: int) -> int:
    return _require_int(eval_total_at_point(family, n, 2, 1))


def total_subgraphs(family: str, n: int) -> int:
    """``T(2, 2)``; must equal ``2**|E|``."""
    return _require_int(eval_total_at_point(family, n, 2, 2))


def acyclic_orientations(family: str, n: int) -> int:
    """``T(2, 0)``, with the level-to-level cubic identity checked at every step."""
    chain = point_chain(family, n, 2, 0)
    for prev, cur in zip(chain, chain[1:]):
        corner = prev.t2 + prev.n
        base = prev.total() if family == "sierpinski" else 2 * prev.total()
        expected = base ** 3 - 2 * corner ** 3
        if cur.total() != expected:
            raise InvariantViolation(
                f"acyclic-orientation aggregate fails at level {cur.level}: {cur.total()} != {expected}"
            )
    return _require_int(chain[-1].total())


# ---------------------------------------------------------------------------
# chromatic polynomial
# ---------------------------------------------------------------------------


def _chromatic_sign(family: str, n: int) -> int:
    v, _ = _sizes(family, n)
    return -1 if (v - 1) % 2 else 1


def _lam(var: str) -> UniPoly:
    return UniPoly({1: 1}, var)


def chromatic_polynomial(family: str, n: int, method: str = "substitution", var: str = "λ") -> UniPoly:
    """Chromatic polynomial in ``λ``.

    ``method="substitution"`` plugs ``x = 1 - λ, y = 0`` into the symbolic
    Tutte polynomial.  ``method="recursion"`` runs the full corner recursion
    directly over polynomials in ``λ`` (``x - 1 = -λ``, ``y - 1 = -1``).
    """
    _check_family(family)
    sign = _chromatic_sign(family, n)
    if method == "substitution":
        p = subst_chromatic(tutte_polynomial(family, n), var)
    elif method == "recursion":
        v, _ = _sizes(family, n)
        if 13 * v * v > term_cap():
            raise ResourceCap(f"chromatic recursion at level {n} exceeds the term cap")
        minus_lam = UniPoly({1: -1}, var)
        ring = OperatorRing(minus_lam, -1, div_X=lambda a: a.exact_div(minus_lam))
        start = (UniPoly({0: 2}, var), minus_lam, minus_lam * minus_lam)
        p2, p1, p0 = run_table(ring, family, "full", start, n, UniPoly({}, var))
        p = p2 + p1 * 3 + p0
    else:
        raise ValueError("method must be 'substitution' or 'recursion'")
    return p * _lam(var) * sign


def chromatic_at(family: str, n: int, colors: int) -> int:
    """Number of proper colourings with ``colors`` colours, via point evaluation."""
    value = eval_total_at_point(family, n, 1 - colors, 0)
    return _require_int(_chromatic_sign(family, n) * colors * value)


def three_coloring_values(n: int) -> List[Tuple[int, int, int]]:
    """Corner components of the Sierpinski chromatic recursion at ``λ = 3`` for levels ``1..n``."""
    out = []
    for pt in point_chain("sierpinski", n, -2, 0):
        out.append((_require_int(pt.t2), _require_int(pt.t1), _require_int(pt.t0)))
    return out


def unique_three_colorability_check(n: int) -> bool:
    """True when every level up to ``n`` has the alternating corner values and exactly 6 colourings."""
    for level, (p2, p1, p0) in enumerate(three_coloring_values(n), start=1):
        s = 1 if level % 2 else -1
        if (p2, p1, p0) != (2 * s, -3 * s, 9 * s):
            return False
    return chromatic_at("sierpinski", n, 3) == 6


# ---------------------------------------------------------------------------
# reliability
# ---------------------------------------------------------------------------


def tutte_on_x_equal_one(family: str, n: int, var: str = "y") -> UniPoly:
    """``T(1, y)``; only the first corner component survives at ``x = 1``."""
    _check_family(family)
    y = UniPoly({1: 1}, var)
    ring = OperatorRing(0, y - 1)
    one = UniPoly({0: 1}, var)
    t2, _, _ = run_table(ring, family, "reduced", (y + 2, one, one), n, UniPoly({}, var))
    return t2


def reliability_polynomial(family: str, n: int, var: str = "p") -> UniPoly:
    """All-terminal reliability as an exact polynomial in the edge survival probability."""
    v, e = _sizes(family, n)
    cyclomatic = e - v + 1
    if v * (cyclomatic + 1) > term_cap():
        raise ResourceCap(f"reliability at level {n} exceeds the term cap")
    ty = tutte_on_x_equal_one(family, n)
    if ty.degree() > cyclomatic or ty.min_exp() < 0:
        raise InvariantViolation("T(1, y) degree exceeds the cyclomatic number")
    p = UniPoly({1: 1}, var)
    q = UniPoly({0: 1, 1: -1}, var)
    acc = UniPoly({}, var)
    # sum_j a_j q^(cyclomatic - j), Horner in q
    for j in range(cyclomatic + 1):
        acc = acc * q + ty.coeff(j)
    return acc * p ** (v - 1)


# ---------------------------------------------------------------------------
# Ising model
# ---------------------------------------------------------------------------


def _in_t_squared(p: UniPoly, var: str) -> UniPoly:
    return UniPoly({2 * e: c for e, c in p.items()}, var)


def ising_partition(family: str, n: int, var: str = "t") -> UniPoly:
    """Zero-field Ising partition function as a Laurent polynomial in ``t = exp(βJ)``.

    Goes through the rational function ``T((y+1)/(y-1), y)``, substitutes
    ``y = t**2`` and multiplies by ``2 (t^2 - 1)^(|V|-1) t^(-|E|)``.  The
    result must be a Laurent polynomial with integer coefficients.
    """
    v, e = _sizes(family, n)
    rf = subst_hyperbola(tutte_polynomial(family, n), "y")
    num = _in_t_squared(rf.num, var)
    den = _in_t_squared(rf.den, var)
    t2m1 = UniPoly({0: -1, 2: 1}, var)
    prefixed = RationalFn(num * t2m1 ** (v - 1) * 2, den)
    quotient, remainder = divmod(prefixed.num, prefixed.den)
    if not remainder.is_zero():
        raise NotLaurent("Ising partition function is not a Laurent polynomial")
    z = quotient.shift(-e)
    if not z.is_integral():
        raise NotLaurent("Ising partition function has non-integer coefficients")
    return z


def _ising_point(t) -> Tuple[object, object]:
    t = gmpy2.mpq(as_rational(t))
    if t == 0 or t * t == 1:
        raise DomainError("t must be nonzero and different from ±1")
    t2 = t * t
    return (t2 + 1) / (t2 - 1), t2


def ising_partition_at(family: str, n: int, t) -> object:
    """Exact partition function at a rational ``t`` through point evaluation."""
    v, e = _sizes(family, n)
    x0, y0 = _ising_point(t)
    tq = gmpy2.mpq(as_rational(t))
    value = 2 * (tq * tq - 1) ** (v - 1) * eval_total_at_point(family, n, x0, y0) / tq ** e
    value = gmpy2.mpq(value)
    return int(value.numerator) if value.denominator == 1 else value


def _psi_product(n: int, z):
    psi = [None, (z + 1) / z]
    for _ in range(n):
        prev = psi[-1]
        psi.append(prev * prev - 3 * prev + 4)
    prod = z ** (3 ** n)
    for k in range(1, n + 1):
        prod *= psi[k] ** (3 ** (n - k))
    return prod * (psi[n + 1] - 1)


def _phi_product(n: int, z):
    root = mpmath.sqrt(z)
    phi = [None, (z + 1) / root, (z * z + 1) / z]
    # the quadratic map only applies from the third term on
    while len(phi) < n + 2:
        prev = phi[-1]
        phi.append(prev * prev - 3 * prev + 4)
    prod = root ** (3 ** n)
    for k in range(1, n + 1):
        prod *= phi[k] ** (3 ** (n - k))
    return prod * (phi[n + 1] - 1)


def ising_product_formula(family: str, n: int, t, digits: int = ISING_DIGITS):
    """Partition function from the level-product formulas in ``z = tanh(βJ)``.

    Hanoi: exact rational for rational ``t``.  Sierpinski: an ``mpmath`` value
    at ``digits`` significant digits because of the square root of ``z``.
    """
    _check_family(family)
    if family == "hanoi":
        t = gmpy2.mpq(as_rational(t))
        if t <= 1:
            raise DomainError("product formula needs t > 1")
        t2 = t * t
        z = (t2 - 1) / (t2 + 1)
        cosh = (t2 + 1) / (2 * t)
        value = gmpy2.mpq(2) ** (3 ** n) * cosh ** ((3 ** (n + 1) - 3) // 2) * _psi_product(n, z)
        return int(value.numerator) if value.denominator == 1 else value
    with mpmath.workdps(digits):
        if isinstance(t, (mpmath.mpf, float)):
            tv = mpmath.mpf(t)
        else:
            tr = as_rational(t)
            tv = mpmath.mpf(int(tr.numerator)) / int(tr.denominator)
        if tv <= 1:
            raise DomainError("product formula needs t > 1")
        t2 = tv * tv
        z = (t2 - 1) / (t2 + 1)
        cosh = (t2 + 1) / (2 * tv)
        value = mpmath.mpf(2) ** ((3 ** n + 3) // 2) * cosh ** (3 ** n) * _phi_product(n, z)
        return +value


def psi_sequence(n: int, z) -> List:
    """``ψ_1 .. ψ_n`` at ``z`` (exact for rational ``z``)."""
    z = as_rational(z)
    z = Fraction(z) if not isinstance(z, Fraction) else z
    out = [(z + 1) / z]
    while len(out) < n:
        out.append(out[-1] ** 2 - 3 * out[-1] + 4)
    return out


# ---------------------------------------------------------------------------
# hyperbola (x-1)(y-1) = 2
# ---------------------------------------------------------------------------


def hyperbola_ab(family: str, n: int) -> Tuple[RationalFn, RationalFn]:
    """``A = t2 + t1`` and ``B = 2*t1 + t0`` restricted to ``x = (y+1)/(y-1)``."""
    tr = triple(family, n)
    a = subst_hyperbola(tr.t2 + tr.t1, "y")
    b = subst_hyperbola(tr.t1 * 2 + tr.t0, "y")
    return a, b


def hyperbola_step(family: str, a: RationalFn, b: RationalFn) -> Tuple[RationalFn, RationalFn]:
    """Next-level ``(A, B)`` predicted from the current one."""
    y = RationalFn(UniPoly({1: 1}, "y"))
    ym1 = y - 1
    if family == "sierpinski":
        s = a * 2 + b
        return ym1 * a * a * s / 2, ym1 * b * s * (a + b) / 2
    _check_family(family)
    common = b + y * b + y * a * 2
    a_next = (y + 1) * a * a * common / (ym1 * 2)
    inner = (y * a * b * 4 + y * y * a * b + y * y * b * b + a * b * 3
             + y * b * b * 2 + a * a * 4 + b * b)
    b_next = common * inner / (ym1 * ym1 * 2)
    return a_next, b_next


def hyperbola_residuals(family: str, n_max: int) -> List[Tuple[int, RationalFn, RationalFn]]:
    """For each level ``k < n_max``: predicted minus computed ``(A, B)`` at level ``k + 1``."""
    out = []
    prev = hyperbola_ab(family, 1)
    for k in range(1, n_max):
        cur = hyperbola_ab(family, k + 1)
        pred = hyperbola_step(family, *prev)
        out.append((k + 1, pred[0] - cur[0], pred[1] - cur[1]))
        prev = cur
    return out


# ---------------------------------------------------------------------------
# spanning-tree growth
# ---------------------------------------------------------------------------


def growth_limit(family: str):
    """Limit of ``log(τ) / |V|``."""
    _check_family(family)
    log = mpmath.log
    if family == "sierpinski":
        return log(2) / 3 + log(3) / 2 + log(5) / 6
    return (log(3) + log(5)) / 4


@dataclass(frozen=True)
class GrowthSeries:
    family: str
    entries: Tuple[Tuple[int, object], ...]

    @property
    def limit(self):
        return growth_limit(self.family)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "level", "log_complexity_per_vertex"])
        for level, value in self.entries:
            w.writerow([self.family, level, mpmath.nstr(value, 20)])
        return buf.getvalue()


def growth_constant_series(family: str, n_max: int, digits: int = 30) -> GrowthSeries:
    entries = []
    with mpmath.workdps(digits):
        for n in range(1, n_max + 1):
            tau = complexity(family, n)
            entries.append((n, mpmath.log(mpmath.mpf(tau)) / vertex_count(family, n)))
    return GrowthSeries(family, tuple(entries))


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

REPORT_FIELDS = (
    "complexity",
    "connectedSpanning",
    "forests",
    "acyclicOrientations",
    "totalSubgraphs",
    "chromaticAt3",
)


@dataclass
class EvaluationReport:
    family: str
    level: int
    # field -> {provenance -> value}; provenance is recursion, closedForm or oracle
    values: Dict[str, Dict[str, int]] = field(default_factory=dict)

    def value(self, name: str) -> int:
        return self.values[name]["recursion"]

    def __getattr__(self, name):
        if name in REPORT_FIELDS:
            return self.values[name]["recursion"]
        raise AttributeError(name)

    def consistent(self) -> bool:
        return all(len(set(v.values())) == 1 for v in self.values.values())

    def to_json_obj(self) -> dict:
        return {
            "family": self.family,
            "level": self.level,
            "values": {
                name: {src: rational_str(val) for src, val in self.values[name].items()} for name in REPORT_FIELDS
                if name in self.values
            },
            "consistent": self.consistent(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "level", "quantity", "provenance", "value"])
        for name in REPORT_FIELDS:
            for src, val in self.values.get(name, {}).items():
                w.writerow([self.family, self.level, name, src, rational_str(val)])
        return buf.getvalue()


def evaluation_report(family: str, n: int, use_oracle: Optional[bool] = None) -> EvaluationReport:
    """All counting specializations at one level, cross-checked by every available route.

    The oracle route runs only when the graph is small enough to enumerate
    (``use_oracle=None`` decides automatically).
    """
    _check_family(family)
    v, e = _sizes(family, n)
    rep = EvaluationReport(family, n)
    rep.values["complexity"] = {
        "recursion": complexity(family, n),
        "closedForm": closed_form_complexity(family, n),
    }
    rep.values["connectedSpanning"] = {"recursion": connected_spanning_subgraphs(family, n)}
    rep.values["forests"] = {"recursion": spanning_forests(family, n)}
    rep.values["acyclicOrientations"] = {"recursion": acyclic_orientations(family, n)}
    rep.values["totalSubgraphs"] = {"recursion": total_subgraphs(family, n), "closedForm": 1 << e}
    rep.values["chromaticAt3"] = {"recursion": chromatic_at(family, n, 3)}
    if family == "sierpinski":
        rep.values["chromaticAt3"]["closedForm"] = 6

    if use_oracle is None:
        use_oracle = e <= oracle.DEFAULT_EDGE_CAP
    if use_oracle:
        g, _ = build_sierpinski(n) if family == "sierpinski" else build_hanoi(n)
        rep.values["complexity"]["oracle"] = oracle.spanning_tree_count(g)
        try:
            rep.values["connectedSpanning"]["oracle"] = oracle.count_connected_spanning_subgraphs(g)
            rep.values["forests"]["oracle"] = oracle.count_spanning_forests(g)
            rep.values["acyclicOrientations"]["oracle"] = oracle.count_acyclic_orientations(g)
            rep.values["totalSubgraphs"]["oracle"] = sum(oracle.subset_statistics(g).values())
        except TooManyEdges:
            pass
        try:
            rep.values["chromaticAt3"]["oracle"] = oracle.count_proper_colorings(g, 3)
        except TooLarge:
            pass
    return rep


__all__ = [
    "FAMILIES",
    "EvaluationReport",
    "GrowthSeries",
    "acyclic_orientations",
    "chromatic_at",
    "chromatic_polynomial",
    "closed_form_complexity",
    "closed_form_reduced_at_one",
    "complexity",
    "connected_spanning_subgraphs",
    "evaluation_report",
    "growth_constant_series",
    "growth_limit",
    "hyperbola_ab",
    "hyperbola_residuals",
    "hyperbola_step",
    "ising_partition",
    "ising_partition_at",
    "ising_product_formula",
    "psi_sequence",
    "reliability_polynomial",
    "spanning_forests",
    "three_coloring_values",
    "total_subgraphs",
    "tutte_on_x_equal_one",
    "unique_three_colorability_check",
]

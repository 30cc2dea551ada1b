"""Self-similar recursions for the corner-state Tutte triples.

For both families a level-``n`` graph has three distinguished corners.  The
triple ``(t2, t1, t0)`` splits the spanning-subgraph sum by how the corners are
linked; the Tutte polynomial is ``t2 + 3*t1 + t0``.  Because ``x - 1`` divides
``t1`` and ``(x - 1)**2`` divides ``t0``, the engine works with the quotients
``n = t1 / (x - 1)`` and ``m = t0 / (x - 1)**2``, whose recursions never divide.

Each recursion is stored as a small expression over the previous components
``a, b, c`` and the shifted variables ``X = x - 1``, ``Y = y - 1``.  The
expressions are parsed once into coefficient tables, and one generic step
routine evaluates a table over any exact ring: bivariate polynomials,
univariate polynomials after substitution, or rational points.
"""
from __future__ import annotations

import os
import re
import threading
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import gmpy2

from .errors import LevelOutOfRange, ResourceCap
from .exactmath import (
    BiPoly,
    Rational,
    _canon_rational,
    _dumps,
    as_rational,
    bipoly_mul,
)

FAMILIES = ("sierpinski", "hanoi")

DEFAULT_TERM_CAP = 50_000_000
# symbolic levels beyond this are refused before any estimate is made
MAX_SYMBOLIC_LEVEL = 10
MAX_POINT_LEVEL = 40


def term_cap() -> int:
    """Stored-term budget for symbolic work; ``TUTTE_SS_TERM_CAP`` overrides it."""
    env = os.environ.get("TUTTE_SS_TERM_CAP")
    if env:
        return int(env)
    return DEFAULT_TERM_CAP


# ---------------------------------------------------------------------------
# recursion tables
# ---------------------------------------------------------------------------

# full tables: components (t2, t1, t0) of level n feed a, b, c
_SIERPINSKI_FULL = (
    "Y*a^3 + X^-1*(6*a^2*b + 3*a*b^2)",
    "Y*a^2*b + X^-1*(a^2*c + 7*a*b^2 + 2*a*b*c + 4*b^3 + b^2*c)",
    "Y*(3*a*b^2 + b^3) + X^-1*(12*a*b*c + 3*a*c^2 + 14*b^3 + 24*b^2*c + 9*b*c^2 + c^3)",
)

# reduced tables: components (t2, n, m) feed a, b, c
_SIERPINSKI_REDUCED = (
    "Y*a^3 + 3*X*a*b^2 + 6*a^2*b",
    "Y*a^2*b + a^2*c + 7*a*b^2 + X*(2*a*b*c + 4*b^3) + X^2*b^2*c",
    "Y*(X*b^3 + 3*a*b^2) + 12*a*b*c + 14*b^3 + X*(3*a*c^2 + 24*b^2*c)"
    " + 9*X^2*b*c^2 + X^3*c^3",
)

_HANOI_FULL = (
    "Y*a^3 + X^-1*(6*a^2*b + 3*a*b^2) + 3*a^3 + 6*a^2*b + 3*a*b^2",
    "Y*a^2*b + X^-1*(a^2*c + 7*a*b^2 + 2*a*b*c + 4*b^3 + b^2*c)"
    " + 7*a^2*b + 2*a^2*c + 14*a*b^2 + 4*a*b*c + 7*b^3 + 2*b^2*c"
    " + X*(a^3 + 5*a^2*b + a^2*c + 7*a*b^2 + 2*a*b*c + 3*b^3 + b^2*c)",
    "Y*(3*a*b^2 + b^3)"
    " + X^-1*(12*a*b*c + 3*a*c^2 + 14*b^3 + 24*b^2*c + 9*b*c^2 + c^3)"
    " + 3*a^2*c + 36*a*b^2 + 42*a*b*c + 9*a*c^2 + 60*b^3 + 75*b^2*c + 27*b*c^2 + 3*c^3"
    " + X*(12*a^2*b + 6*a^2*c + 60*a*b^2 + 48*a*b*c + 9*a*c^2 + 72*b^3 + 78*b^2*c"
    " + 27*b*c^2 + 3*c^3)"
    " + X^2*(a^3 + 9*a^2*b + 3*a^2*c + 27*a*b^2 + 18*a*b*c + 3*a*c^2 + 27*b^3"
    " + 27*b^2*c + 9*b*c^2 + c^3)",
)

_HANOI_REDUCED = (
    "Y*a^3 + 3*a^3 + 6*a^2*b + X*(6*a^2*b + 3*a*b^2) + 3*X^2*a*b^2",
    "Y*a^2*b + a^3 + 7*a^2*b + a^2*c + 7*a*b^2"
    " + X*(5*a^2*b + 2*a^2*c + 14*a*b^2 + 2*a*b*c + 4*b^3)"
    " + X^2*(a^2*c + 7*a*b^2 + 4*a*b*c + 7*b^3 + b^2*c)"
    " + X^3*(2*a*b*c + 3*b^3 + 2*b^2*c) + X^4*b^2*c",
    "3*Y*a*b^2 + a^3 + 12*a^2*b + 3*a^2*c + 36*a*b^2 + 12*a*b*c + 14*b^3"
    " + X*(Y*b^3 + 9*a^2*b + 6*a^2*c + 60*a*b^2 + 42*a*b*c + 3*a*c^2 + 60*b^3 + 24*b^2*c)"
    " + X^2*(3*a^2*c + 27*a*b^2 + 48*a*b*c + 9*a*c^2 + 72*b^3 + 75*b^2*c + 9*b*c^2)"
    " + X^3*(18*a*b*c + 9*a*c^2 + 27*b^3 + 78*b^2*c + 27*b*c^2 + c^3)"
    " + X^4*(3*a*c^2 + 27*b^2*c + 27*b*c^2 + 3*c^3)"
    " + X^5*(9*b*c^2 + 3*c^3) + X^6*c^3",
)

TABLE_SOURCES: Dict[Tuple[str, str], Tuple[str, str, str]] = {
    ("sierpinski", "full"): _SIERPINSKI_FULL,
    ("sierpinski", "reduced"): _SIERPINSKI_REDUCED,
    ("hanoi", "full"): _HANOI_FULL,
    ("hanoi", "reduced"): _HANOI_REDUCED,
}

# cubic monomials in (a, b, c), fixed order
MONOMIALS: Tuple[Tuple[int, int, int], ...] = (
    (3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
    (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3),
)
_MONO_INDEX = {m: k for k, m in enumerate(MONOMIALS)}
_VARS = ("a", "b", "c", "X", "Y")

_TOKEN = re.compile(r"\s*(?:(\d+)|([abcXY])|(\^-?\d+)|([-+*()]))")

# exponent vector over (a, b, c, X, Y) -> integer coefficient
_Expanded = Dict[Tuple[int, ...], int]


def _tokenize(src: str) -> List[str]:
    pos, out = 0, []
    src = src.rstrip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ValueError(f"bad recursion expression near {src[pos:pos + 12]!r}")
        out.append(m.group(m.lastindex))
        pos = m.end()
    return out


class _Parser:
    """Recursive descent over ``+ - * ^ ( )``, integer literals and the five symbols."""

    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> _Expanded:
        e = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing token {self.peek()!r}")
        return e

    def expr(self) -> _Expanded:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = _scale(self.term(), sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
            acc = _add(acc, _scale(self.term(), sign))
        return acc

    def term(self) -> _Expanded:
        acc = self.factor()
        while self.peek() == "*":
            self.take()
            acc = _mul(acc, self.factor())
        return acc

    def factor(self) -> _Expanded:
        base = self.atom()
        if self.peek() is not None and self.peek().startswith("^"):
            e = int(self.take()[1:])
            return _power(base, e)
        return base

    def atom(self) -> _Expanded:
        t = self.take()
        if t is None:
            raise ValueError("unexpected end of expression")
        if t == "(":
            e = self.expr()
            if self.take() != ")":
                raise ValueError("missing ')'")
            return e
        if t.isdigit():
            return {(0,) * 5: int(t)}
        if t in _VARS:
            v = [0] * 5
            v[_VARS.index(t)] = 1
            return {tuple(v): 1}
        raise ValueError(f"unexpected token {t!r}")


def _add(p: _Expanded, q: _Expanded) -> _Expanded:
    out = dict(p)
    for k, c in q.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _scale(p: _Expanded, s: int) -> _Expanded:
    return {k: c * s for k, c in p.items()}


def _mul(p: _Expanded, q: _Expanded) -> _Expanded:
    out: _Expanded = {}
    for k1, c1 in p.items():
        for k2, c2 in q.items():
            k = tuple(u + v for u, v in zip(k1, k2))
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _power(p: _Expanded, e: int) -> _Expanded:
    if e < 0:
        if len(p) != 1:
            raise ValueError("negative power of a sum")
        (k, c), = p.items()
        if abs(c) != 1:
            raise ValueError("negative power of a non-unit coefficient")
        return {tuple(u * e for u in k): c ** abs(e)}
    out: _Expanded = {(0,) * 5: 1}
    for _ in range(e):
        out = _mul(out, p)
    return out


@dataclass(frozen=True)
class RecursionTable:
    """Parsed recursion: for each output component, ``{(X_pow, Y_pow): [(monomial, coeff)]}``."""

    family: str
    kind: str
    components: Tuple[Dict[Tuple[int, int], Tuple[Tuple[int, int], ...]], ...]

    @property
    def max_x_power(self) -> int:
        return max(k for comp in self.components for (k, _) in comp)

    @property
    def min_x_power(self) -> int:
        return min(k for comp in self.components for (k, _) in comp)

    @property
    def max_y_power(self) -> int:
        return max(l for comp in self.components for (_, l) in comp)

    def coefficient(self, component: int, monomial: Tuple[int, int, int], x_pow: int, y_pow: int) -> int:
        for mi, c in self.components[component].get((x_pow, y_pow), ()):
            if MONOMIALS[mi] == monomial:
                return c
        return 0


def parse_table(family: str, kind: str, sources: Sequence[str]) -> RecursionTable:
    comps = []
    for src in sources:
        expanded = _Parser(src).parse()
        grouped: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
        for (ea, eb, ec, ex, ey), c in sorted(expanded.items()):
            if ea + eb + ec != 3 or ea < 0 or eb < 0 or ec < 0:
                raise ValueError(f"recursion term is not cubic in a, b, c: {(ea, eb, ec)}")
            if ey < 0:
                raise ValueError("negative power of Y")
            grouped.setdefault((ex, ey), []).append((_MONO_INDEX[(ea, eb, ec)], c))
        comps.append({k: tuple(v) for k, v in grouped.items()})
    return RecursionTable(family, kind, tuple(comps))


_TABLES: Dict[Tuple[str, str], RecursionTable] = {}


def get_table(family: str, kind: str = "reduced") -> RecursionTable:
    key = (family, kind)
    if key not in _TABLES:
        if key not in TABLE_SOURCES:
            raise ValueError(f"no recursion table for {key}")
        _TABLES[key] = parse_table(family, kind, TABLE_SOURCES[key])
    return _TABLES[key]


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------


class OperatorRing:
    """Ring given by Python operators, with fixed values substituted for ``X`` and ``Y``.

    ``div_X`` is only needed for full tables; pass ``None`` when the ring has
    no exact division by ``X``.
    """

    def __init__(self, x_value, y_value, div_X: Optional[Callable] = None):
        self.x_value = x_value
        self.y_value = y_value
        self._div = div_X

    def mul(self, a, b):
        return a * b

    def add(self, a, b):
        return a + b

    def lincomb(self, pairs):
        acc = None
        for e, c in pairs:
            t = e * c
            acc = t if acc is None else acc + t
        return acc

    def mul_X(self, a):
        return a * self.x_value

    def mul_Y(self, a):
        return a * self.y_value

    def div_X(self, a):
        if self._div is None:
            raise ArithmeticError("this ring has no division by X")
        return self._div(a)


class BiPolyRing:
    """Bivariate ring where ``X = x - 1`` and ``Y = y - 1``; shifts avoid general products."""

    def mul(self, a: BiPoly, b: BiPoly) -> BiPoly:
        return bipoly_mul(a, b)

    def add(self, a: BiPoly, b: BiPoly) -> BiPoly:
        return a + b

    def lincomb(self, pairs) -> BiPoly:
        out: Dict[Tuple[int, int], int] = {}
        for e, c in pairs:
            for k, v in e._terms.items():
                out[k] = out.get(k, 0) + v * c
        return BiPoly._wrap({k: v for k, v in out.items() if v})

    @staticmethod
    def _shift_sub(a: BiPoly, axis: int) -> BiPoly:
        out: Dict[Tuple[int, int], int] = {}
        for (i, j), c in a._terms.items():
            k = (i + 1, j) if axis == 0 else (i, j + 1)
            out[k] = out.get(k, 0) + c
            out[(i, j)] = out.get((i, j), 0) - c
        return BiPoly._wrap({k: v for k, v in out.items() if v})

    def mul_X(self, a: BiPoly) -> BiPoly:
        return self._shift_sub(a, 0)

    def mul_Y(self, a: BiPoly) -> BiPoly:
        return self._shift_sub(a, 1)

    def div_X(self, a: BiPoly) -> BiPoly:
        return a.divide_x_minus_1(1)


def _horner(ring, coeffs: Dict[int, object], mul_var):
    """``sum coeffs[p] * V**p`` for nonnegative ``p`` (``None`` means zero)."""
    acc = None
    for p in range(max(coeffs), -1, -1):
        if acc is not None:
            acc = mul_var(acc)
        e = coeffs.get(p)
        if e is not None:
            acc = e if acc is None else ring.add(acc, e)
    return acc


def apply_table(ring, table: RecursionTable, a, b, c, zero):
    """One recursion step: evaluate all three components of ``table`` at ``(a, b, c)``."""
    cache: Dict[object, object] = {}

    def quad(i, j):
        key = (min(i, j), max(i, j))
        if key not in cache:
            v = (a, b, c)
            cache[key] = ring.mul(v[key[0]], v[key[1]])
        return cache[key]

    def mono(mi):
        if mi not in cache:
            ea, eb, ec = MONOMIALS[mi]
            idx = [0] * ea + [1] * eb + [2] * ec
            cache[mi] = ring.mul(quad(idx[0], idx[1]), (a, b, c)[idx[2]])
        return cache[mi]

    shift = -min(0, table.min_x_power)
    results = []
    for comp in table.components:
        pos: Dict[int, Dict[int, object]] = {}
        neg: Dict[int, Dict[int, object]] = {}
        for (k, l), pairs in comp.items():
            lin = ring.lincomb([(mono(mi), cf) for mi, cf in pairs])
            if k >= 0:
                pos.setdefault(l, {})[k] = lin
            else:
                neg.setdefault(l, {})[k + shift] = lin
        total = None
        for part, is_neg in ((pos, False), (neg, True)):
            if not part:
                continue
            by_y = {l: _horner(ring, xs, ring.mul_X) for l, xs in part.items()}
            by_y = {l: v for l, v in by_y.items() if v is not None}
            if not by_y:
                continue
            v = _horner(ring, by_y, ring.mul_Y)
            if is_neg:
                for _ in range(shift):
                    v = ring.div_X(v)
            total = v if total is None else ring.add(total, v)
        results.append(zero if total is None else total)
    return tuple(results)


# ---------------------------------------------------------------------------
# triples
# ---------------------------------------------------------------------------


def _check_family(family: str) -> None:
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")


def _check_level(n, cap: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1 or n > cap:
        raise LevelOutOfRange(f"level must be in [1, {cap}], got {n!r}")


_X = BiPoly({(1, 0): 1, (0, 0): -1})


@dataclass(frozen=True)
class TutteTriple:
    """Corner-state components of one graph: ``total = t2 + 3*t1 + t0``."""

    family: str
    level: int
    t2: BiPoly
    t1: BiPoly
    t0: BiPoly

    def total(self) -> BiPoly:
        return self.t2 + self.t1 * 3 + self.t0

    def reduced(self) -> "ReducedTriple":
        return ReducedTriple(
            self.family, self.level, self.t2, self.t1.divide_x_minus_1(1), self.t0.divide_x_minus_1(2)
        )


@dataclass(frozen=True)
class ReducedTriple:
    """``(t2, n, m)`` with ``t1 = (x-1)*n`` and ``t0 = (x-1)**2 * m``."""

    family: str
    level: int
    t2: BiPoly
    n: BiPoly
    m: BiPoly

    def expand(self) -> TutteTriple:
        ring = BiPolyRing()
        t1 = ring.mul_X(self.n)
        t0 = ring.mul_X(ring.mul_X(self.m))
        return TutteTriple(self.family, self.level, self.t2, t1, t0)

    def total(self) -> BiPoly:
        return self.expand().total()

    def term_count(self) -> int:
        return len(self.t2) + len(self.n) + len(self.m)

    def to_json_obj(self) -> dict:
        return {
            "family": self.family,
            "level": self.level,
            "t2": self.t2.to_json_obj(),
            "n": self.n.to_json_obj(),
            "m": self.m.to_json_obj(),
        }

    def to_json(self) -> str:
        return _dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ReducedTriple":
        return cls(
            obj["family"],
            obj["level"],
            BiPoly.from_json_obj(obj["t2"]),
            BiPoly.from_json_obj(obj["n"]),
            BiPoly.from_json_obj(obj["m"]),
        )


@dataclass(frozen=True)
class PointTriple:
    """Reduced triple evaluated at ``(x0, y0)``."""

    family: str
    level: int
    x0: Rational
    y0: Rational
    t2: Rational
    n: Rational
    m: Rational
    # exact total when the producer computed it more cheaply than the fields allow
    total_value: Optional[Rational] = None

    @property
    def t1(self) -> Rational:
        return _canon_rational((self.x0 - 1) * self.n)

    @property
    def t0(self) -> Rational:
        return _canon_rational((self.x0 - 1) ** 2 * self.m)

    def total(self) -> Rational:
        if self.total_value is not None:
            return self.total_value
        d = self.x0 - 1
        return _canon_rational(self.t2 + 3 * d * self.n + d * d * self.m)


def _initial_reduced() -> Tuple[BiPoly, BiPoly, BiPoly]:
    return BiPoly({(0, 1): 1, (0, 0): 2}), BiPoly.const(1), BiPoly.const(1)


def graph_size(family: str, n: int) -> Tuple[int, int]:
    """Vertices and loopless edges of the level-``n`` graph."""
    if family == "sierpinski":
        return (3 ** n + 3) // 2, 3 ** n
    return 3 ** n, (3 ** (n + 1) - 3) // 2


def estimate_terms(family: str, n: int) -> int:
    """Upper estimate of terms stored while producing level ``n``.

    Each of the three outputs and the ten cubic products is bounded by the
    degree rectangle of the level-``n`` Tutte polynomial.
    """
    v, e = graph_size(family, n)
    rect = v * (e - v + 2)
    return 13 * rect


class _Cache:
    def __init__(self):
        self._lock = threading.RLock()
        self._symbolic: Dict[str, List[ReducedTriple]] = {f: [] for f in FAMILIES}

    def clear(self):
        with self._lock:
            for f in FAMILIES:
                self._symbolic[f] = []


_cache = _Cache()


def clear_cache() -> None:
    _cache.clear()


def _reduced_chain(family: str, n: int) -> ReducedTriple:
    _check_family(family)
    _check_level(n, MAX_SYMBOLIC_LEVEL)
    cap = term_cap()
    with _cache._lock:
        chain = _cache._symbolic[family]
        if not chain:
            t2, nn, mm = _initial_reduced()
            chain.append(ReducedTriple(family, 1, t2, nn, mm))
        ring = BiPolyRing()
        table = get_table(family, "reduced")
        while len(chain) < n:
            level = len(chain) + 1
            est = estimate_terms(family, level)
            if est > cap:
                raise ResourceCap(
                    f"symbolic {family} level {level} needs about {est} terms, cap is {cap}; "
                    "use point evaluation instead"
                )
            prev = chain[-1]
            t2, nn, mm = apply_table(ring, table, prev.t2, prev.n, prev.m, BiPoly())
            nxt = ReducedTriple(family, level, t2, nn, mm)
            if nxt.term_count() > cap:
                raise ResourceCap(f"symbolic {family} level {level} stored {nxt.term_count()} terms")
            chain.append(nxt)
        return chain[n - 1]


def sierpinski_reduced(n: int) -> ReducedTriple:
    return _reduced_chain("sierpinski", n)


def hanoi_reduced(n: int) -> ReducedTriple:
    return _reduced_chain("hanoi", n)


def sierpinski_triple(n: int) -> TutteTriple:
    """Symbolic corner triple of the level-``n`` Sierpinski graph."""
    return sierpinski_reduced(n).expand()


def hanoi_triple(n: int) -> TutteTriple:
    """Symbolic corner triple of the loopless level-``n`` Hanoi Schreier graph."""
    return hanoi_reduced(n).expand()


def triple(family: str, n: int) -> TutteTriple:
    return _reduced_chain(family, n).expand()


def tutte_polynomial(family: str, n: int) -> BiPoly:
    """Tutte polynomial of the loopless level-``n`` graph of ``family``."""
    return triple(family, n).total()


def full_table_triple(family: str, n: int) -> TutteTriple:
    """Same triple computed from the tables with ``1/(x-1)`` factors.

    Slower than the reduced route; kept as an independent cross-check.
    """
    _check_family(family)
    _check_level(n, MAX_SYMBOLIC_LEVEL)
    ring = BiPolyRing()
    table = get_table(family, "full")
    t2 = BiPoly({(0, 1): 1, (0, 0): 2})
    t1 = _X
    t0 = _X * _X
    for _ in range(n - 1):
        t2, t1, t0 = apply_table(ring, table, t2, t1, t0, BiPoly())
    return TutteTriple(family, n, t2, t1, t0)


# ---------------------------------------------------------------------------
# point evaluation
# ---------------------------------------------------------------------------


def _point_coefficients(table: RecursionTable, p, q, r, s):
    """Integer weights per (component, monomial) after clearing the X and Y denominators.

    With ``X = (p - q)/q`` and ``Y = (r - s)/s``, a term ``X**k * Y**l`` becomes
    ``(p-q)**k * q**(K-k) * (r-s)**l * s**(L-l)`` over the common ``q**K * s**L``.
    """
    K, L = table.max_x_power, table.max_y_power
    dx, dy = p - q, r - s
    weights = []
    for comp in table.components:
        w = [0] * len(MONOMIALS)
        for (k, l), pairs in comp.items():
            f = dx ** k * q ** (K - k) * dy ** l * s ** (L - l)
            for mi, cf in pairs:
                w[mi] += cf * f
        weights.append(tuple((mi, gmpy2.mpz(c)) for mi, c in enumerate(w) if c))
    return weights, gmpy2.mpz(q ** K * s ** L)


def _point_chain(family: str, n: int, x0: Rational, y0: Rational, table: Optional[RecursionTable] = None):
    """Reduced components at every level ``1..n`` as integer numerators over a shared denominator."""
    x0 = as_rational(x0)
    y0 = as_rational(y0)
    p, q = int(x0.numerator), int(x0.denominator)
    r, s = int(y0.numerator), int(y0.denominator)
    table = table or get_table(family, "reduced")
    if table.min_x_power < 0:
        raise ValueError("point mode needs a division-free table")
    weights, scale = _point_coefficients(table, p, q, r, s)
    A, B, C, D = gmpy2.mpz(r + 2 * s), gmpy2.mpz(s), gmpy2.mpz(s), gmpy2.mpz(s)
    out = [(A, B, C, D)]
    for _ in range(n - 1):
        a2, b2, c2 = A * A, B * B, C * C
        mons = [a2 * A, a2 * B, a2 * C, b2 * A, A * B * C, c2 * A, b2 * B, b2 * C, c2 * B, c2 * C]
        new = []
        for w in weights:
            acc = gmpy2.mpz(0)
            for mi, c in w:
                acc += c * mons[mi]
            new.append(acc)
        A, B, C = new
        D = D * D * D * scale
        out.append((A, B, C, D))
    return out


def _to_rational(num, den) -> Rational:
    v = gmpy2.mpq(num, den)
    if v.denominator == 1:
        return int(v.numerator)
    return v


def _point_triple(family, level, x0, y0, A, B, C, D) -> PointTriple:
    # total = (q^2 A + 3 (p-q) q B + (p-q)^2 C) / (q^2 D), one gcd instead of several
    p, q = gmpy2.mpz(x0.numerator), gmpy2.mpz(x0.denominator)
    num = q * q * A + 3 * (p - q) * q * B + (p - q) * (p - q) * C
    total = _to_rational(num, q * q * D)
    return PointTriple(
        family, level, x0, y0, _to_rational(A, D), _to_rational(B, D), _to_rational(C, D), total
    )


def eval_triple_at_point(family: str, n: int, x0, y0) -> PointTriple:
    """Reduced triple at a rational point, exactly.

    Runs the division-free recursion on integers with one shared denominator,
    so ``x0 = 1`` is fine.
    """
    _check_family(family)
    _check_level(n, MAX_POINT_LEVEL)
    x0, y0 = as_rational(x0), as_rational(y0)
    A, B, C, D = _point_chain(family, n, x0, y0)[-1]
    return _point_triple(family, n, x0, y0, A, B, C, D)


def eval_total_at_point(family: str, n: int, x0, y0) -> Rational:
    _check_family(family)
    _check_level(n, MAX_POINT_LEVEL)
    x0, y0 = as_rational(x0), as_rational(y0)
    A, B, C, D = _point_chain(family, n, x0, y0)[-1]
    p, q = gmpy2.mpz(x0.numerator), gmpy2.mpz(x0.denominator)
    num = q * q * A + 3 * (p - q) * q * B + (p - q) * (p - q) * C
    return _to_rational(num, q * q * D)


def point_chain(family: str, n: int, x0, y0) -> List[PointTriple]:
    """Point triples for all levels ``1..n``."""
    _check_family(family)
    _check_level(n, MAX_POINT_LEVEL)
    x0, y0 = as_rational(x0), as_rational(y0)
    return [
        _point_triple(family, k + 1, x0, y0, A, B, C, D)
        for k, (A, B, C, D) in enumerate(_point_chain(family, n, x0, y0))
    ]


def run_table(ring, family: str, kind: str, initial, n: int, zero):
    """Iterate one table over an arbitrary ring from a level-1 triple."""
    table = get_table(family, kind)
    a, b, c = initial
    for _ in range(n - 1):
        a, b, c = apply_table(ring, table, a, b, c, zero)
    return a, b, c


# ---------------------------------------------------------------------------
# contracted family and the join identity
# ---------------------------------------------------------------------------


def contracted_reduced(n: int) -> ReducedTriple:
    """Corner triple of the contracted graph: one Sierpinski-shaped step on the Hanoi level ``n-1``."""
    if not isinstance(n, int) or n < 2:
        raise LevelOutOfRange(f"contracted graphs start at level 2, got {n!r}")
    prev = hanoi_reduced(n - 1)
    est = estimate_terms("hanoi", n)
    if est > term_cap():
        raise ResourceCap(f"contracted level {n} needs about {est} terms")
    t2, nn, mm = apply_table(BiPolyRing(), get_table("sierpinski", "reduced"), prev.t2, prev.n, prev.m, BiPoly())
    return ReducedTriple("contracted", n, t2, nn, mm)


def contracted_tutte(n: int) -> BiPoly:
    """Tutte polynomial of the Hanoi graph with its three special edges contracted."""
    return contracted_reduced(n).total()


def contracted_tutte_at_point(n: int, x0, y0) -> Rational:
    if not isinstance(n, int) or n < 2:
        raise LevelOutOfRange(f"contracted graphs start at level 2, got {n!r}")
    x0, y0 = as_rational(x0), as_rational(y0)
    A, B, C, D = _point_chain("hanoi", n - 1, x0, y0)[-1]
    a, b, c = gmpy2.mpq(A, D), gmpy2.mpq(B, D), gmpy2.mpq(C, D)
    ring = OperatorRing(gmpy2.mpq(x0) - 1, gmpy2.mpq(y0) - 1)
    t2, nn, mm = apply_table(ring, get_table("sierpinski", "reduced"), a, b, c, gmpy2.mpq(0))
    d = gmpy2.mpq(x0) - 1
    return _canon_rational(t2 + 3 * d * nn + d * d * mm)


_XX1 = BiPoly({(2, 0): 1, (1, 0): 1, (0, 0): 1})


def join_identity_residual(n: int) -> BiPoly:
    """``H_{n+1} - (x^2 + x + 1) * H_n^3 - T(I_{n+1})``; zero when the identity holds."""
    _check_level(n, MAX_SYMBOLIC_LEVEL - 1)
    h_next = tutte_polynomial("hanoi", n + 1)
    h = tutte_polynomial("hanoi", n)
    return h_next - _XX1 * h * h * h - contracted_tutte(n + 1)


def join_identity_residual_at(n: int, x0, y0) -> Rational:
    """Same residual evaluated at a rational point through point mode."""
    _check_level(n, MAX_POINT_LEVEL - 1)
    x0, y0 = as_rational(x0), as_rational(y0)
    h_next = eval_total_at_point("hanoi", n + 1, x0, y0)
    h = eval_total_at_point("hanoi", n, x0, y0)
    return _canon_rational(h_next - (x0 * x0 + x0 + 1) * h ** 3 - contracted_tutte_at_point(n + 1, x0, y0))


def with_loops(total: BiPoly) -> BiPoly:
    """Account for the three outer loops of the Hanoi graph (each contributes a factor ``y``)."""
    return total * BiPoly({(0, 3): 1})

"""Exact polynomial arithmetic over the integers and rationals.

Three value types live here:

* :class:`BiPoly` -- sparse polynomials in ``x`` and ``y`` with integer
  coefficients.  Every Tutte polynomial and triple component is one of these.
* :class:`UniPoly` -- sparse univariate polynomials with integer or rational
  coefficients.  Negative exponents are allowed, which turns it into a Laurent
  polynomial (used for Ising partition functions in ``t``).
* :class:`RationalFn` -- quotient of two :class:`UniPoly`, normalized so the
  denominator is monic.

All values are immutable; operations return new objects.  Zero coefficients
are never stored, so structural equality is mathematical equality.

Integers are Python ``int``; rationals are :class:`fractions.Fraction`, though
``gmpy2.mpq`` values are accepted wherever a rational is expected.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Dict, Mapping, Optional, Tuple, Union

import gmpy2

from .errors import NotDivisible

Rational = Union[int, Fraction, "gmpy2.mpq"]
Term = Tuple[int, int]

# below this many coefficient products the schoolbook loop beats packing
_KRONECKER_MIN_WORK = 4096
_KRONECKER_MIN_TERMS = 12


def _is_rational(v) -> bool:
    return isinstance(v, (int, Fraction, _RationalABC)) or type(v) is type(gmpy2.mpq())


def as_rational(v) -> Rational:
    """Coerce ``v`` to an exact rational (int, Fraction or mpq pass through)."""
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, int) or isinstance(v, Fraction):
        return v
    if type(v) is type(gmpy2.mpq()):
        return v
    if type(v) is type(gmpy2.mpz()):
        return int(v)
    if isinstance(v, str):
        return rational_from_string(v)
    if isinstance(v, _RationalABC):
        return Fraction(v.numerator, v.denominator)
    raise TypeError(f"not an exact rational: {v!r}")


def _canon_rational(c):
    """Return ints for integral rationals so coefficient arithmetic stays fast."""
    if isinstance(c, int):
        return c
    if c.denominator == 1:
        return int(c.numerator)
    if not isinstance(c, Fraction):
        return Fraction(int(c.numerator), int(c.denominator))
    return c


# str()/int() on huge ints trip CPython's digit limit; gmpy2 has none.
def int_str(v) -> str:
    return gmpy2.mpz(v).digits()


def rational_str(c) -> str:
    """Decimal ``"a"`` or ``"a/b"`` of any size."""
    c = _canon_rational(c)
    if isinstance(c, int):
        return int_str(c)
    return f"{int_str(c.numerator)}/{int_str(c.denominator)}"


_coeff_str = rational_str


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


# ---------------------------------------------------------------------------
# bivariate
# ---------------------------------------------------------------------------


class BiPoly:
    """Sparse polynomial in ``x`` and ``y`` with integer coefficients.

    Terms are stored in a dict keyed by ``(x_exponent, y_exponent)``.

    >>> x, y = BiPoly.x(), BiPoly.y()
    >>> str((x - 1) * (x + 1))
    'x^2 - 1'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Term, int]] = None):
        clean: Dict[Term, int] = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent in term {(i, j)}")
                c = int(c)
                if c:
                    clean[(int(i), int(j))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: Dict[Term, int]) -> "BiPoly":
        # trusted constructor: caller guarantees no zero coefficients
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Dict[Term, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, i: int, j: int) -> int:
        return self._terms.get((i, j), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree_x(self) -> int:
        return max((i for i, _ in self._terms), default=-1)

    def degree_y(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def sorted_terms(self):
        return sorted(self._terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({(0, 0): other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- ring operations --------------------------------------------------

    @staticmethod
    def _coerce(v) -> "BiPoly":
        if isinstance(v, BiPoly):
            return v
        if isinstance(v, int):
            return BiPoly.const(v)
        raise TypeError(f"cannot combine BiPoly with {type(v).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for k, c in small.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return BiPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return BiPoly._wrap({})
            return BiPoly._wrap({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        return bipoly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = BiPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- evaluation and substitution --------------------------------------

    def evaluate(self, x0, y0):
        return bipoly_eval(self, x0, y0)

    __call__ = evaluate

    def divide_x_minus_1(self, k: int = 1) -> "BiPoly":
        return divide_exact_x_minus_1(self, k)

    # -- display / serialization -------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        order = sorted(self._terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))
        parts = []
        for (i, j), c in order:
            mono = []
            if i:
                mono.append("x" if i == 1 else f"x^{i}")
            if j:
                mono.append("y" if j == 1 else f"y^{j}")
            mono_s = "*".join(mono)
            mag = abs(c)
            if not mono_s:
                body = int_str(mag)
            elif mag == 1:
                body = mono_s
            else:
                body = f"{int_str(mag)}*{mono_s}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"BiPoly({str(self)!r})"

    def to_json_obj(self) -> dict:
        return {
            "vars": ["x", "y"],
            "terms": [{"e": [i, j], "c": int_str(c)} for (i, j), c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        """Canonical JSON: terms ascending by ``(i, j)``, coefficients as decimal strings."""
        return _dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "BiPoly":
        if obj.get("vars") != ["x", "y"]:
            raise ValueError("expected vars ['x', 'y']")
        return cls({tuple(t["e"]): int(gmpy2.mpz(t["c"])) for t in obj["terms"]})

    @classmethod
    def from_json(cls, s: str) -> "BiPoly":
        return cls.from_json_obj(json.loads(s))


def bipoly_add(a: BiPoly, b: BiPoly) -> BiPoly:
    return a + b


def mul_schoolbook(a: BiPoly, b: BiPoly) -> BiPoly:
    """Plain term-by-term product with an accumulation map."""
    acc: Dict[Term, int] = {}
    get = acc.get
    for (i1, j1), c1 in a._terms.items():
        for (i2, j2), c2 in b._terms.items():
            k = (i1 + i2, j1 + j2)
            acc[k] = get(k, 0) + c1 * c2
    return BiPoly._wrap({k: c for k, c in acc.items() if c})


def _pack(terms: Mapping[Term, int], dy: int, nbytes: int, nslots: int) -> "gmpy2.mpz":
    pos = bytearray(nslots * nbytes)
    neg = None
    for (i, j), c in terms.items():
        off = (i * dy + j) * nbytes
        if c > 0:
            pos[off:off + nbytes] = c.to_bytes(nbytes, "little")
        else:
            if neg is None:
                neg = bytearray(nslots * nbytes)
            neg[off:off + nbytes] = (-c).to_bytes(nbytes, "little")
    value = gmpy2.mpz(int.from_bytes(pos, "little"))
    if neg is not None:
        value -= gmpy2.mpz(int.from_bytes(neg, "little"))
    return value


def mul_kronecker(a: BiPoly, b: BiPoly) -> BiPoly:
    """Product via Kronecker substitution into one big integer.

    Each coefficient gets a fixed-width slot wide enough for any product
    coefficient plus a sign bit; slots are laid out row-major in ``(i, j)``
    with row length ``deg_y(a) + deg_y(b) + 1``.  Adding half a slot to every
    slot before unpacking keeps all digits nonnegative, so no carries cross
    slot boundaries.
    """
    if not a._terms or not b._terms:
        return BiPoly._wrap({})
    ax, ay = a.degree_x(), a.degree_y()
    bx, by = b.degree_x(), b.degree_y()
    dy = ay + by + 1
    ma = max(abs(c) for c in a._terms.values())
    mb = max(abs(c) for c in b._terms.values())
    bound = ma * mb * min(len(a._terms), len(b._terms))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    bits = 8 * nbytes
    nslots = (ax + bx) * dy + (ay + by) + 1

    prod = _pack(a._terms, dy, nbytes, ax * dy + ay + 1) * _pack(b._terms, dy, nbytes, bx * dy + by + 1)

    half_slot = b"\x00" * (nbytes - 1) + b"\x80"
    offset = gmpy2.mpz(int.from_bytes(half_slot * nslots, "little"))
    raw = int(prod + offset).to_bytes(nslots * nbytes, "little")
    half = 1 << (bits - 1)
    out: Dict[Term, int] = {}
    from_bytes = int.from_bytes
    for slot in range(nslots):
        off = slot * nbytes
        chunk = raw[off:off + nbytes]
        if chunk == half_slot:
            continue
        out[divmod(slot, dy)] = from_bytes(chunk, "little") - half
    return BiPoly._wrap(out)


def bipoly_mul(a: BiPoly, b: BiPoly) -> BiPoly:
    na, nb = len(a._terms), len(b._terms)
    if min(na, nb) < _KRONECKER_MIN_TERMS or na * nb < _KRONECKER_MIN_WORK:
        return mul_schoolbook(a, b)
    return mul_kronecker(a, b)


def bipoly_eval(p: BiPoly, x0, y0):
    """Exact value of ``p`` at ``(x0, y0)``."""
    x0 = as_rational(x0)
    y0 = as_rational(y0)
    if not p._terms:
        return 0
    rows: Dict[int, Dict[int, int]] = {}
    for (i, j), c in p._terms.items():
        rows.setdefault(i, {})[j] = c
    total = 0
    # Horner in x over y-polynomials
    for i in range(max(rows), -1, -1):
        row = rows.get(i)
        inner = 0
        if row:
            for j in range(max(row), -1, -1):
                inner = inner * y0 + row.get(j, 0)
        total = total * x0 + inner
    return _canon_rational(total) if not isinstance(total, int) else total


def divide_exact_x_minus_1(p: BiPoly, k: int = 1) -> BiPoly:
    """Return ``q`` with ``p == (x - 1)**k * q``.

    Raises :class:`NotDivisible` if any stage of the division leaves a
    remainder.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    terms = p._terms
    for stage in range(k):
        cols: Dict[int, Dict[int, int]] = {}
        for (i, j), c in terms.items():
            cols.setdefault(j, {})[i] = c
        out: Dict[Term, int] = {}
        for j, col in cols.items():
            # synthetic division by (x - 1), highest degree first
            carry = 0
            for i in range(max(col), 0, -1):
                carry += col.get(i, 0)
                if carry:
                    out[(i - 1, j)] = carry
            if carry + col.get(0, 0) != 0:
                raise NotDivisible(f"(x-1)^{stage + 1} does not divide the polynomial")
        terms = out
    return BiPoly._wrap(terms)


def subst_chromatic(p: BiPoly, var: str = "λ") -> "UniPoly":
    """Substitute ``y = 0`` and ``x = 1 - λ``."""
    coeffs: Dict[int, int] = {}
    for (i, j), c in p._terms.items():
        if j == 0:
            coeffs[i] = c
    if not coeffs:
        return UniPoly({}, var)
    one_minus = UniPoly({0: 1, 1: -1}, var)
    acc = UniPoly({}, var)
    for i in range(max(coeffs), -1, -1):
        acc = acc * one_minus + coeffs.get(i, 0)
    return acc


def subst_x1(p: BiPoly, var: str = "y") -> "UniPoly":
    """Restrict to the line ``x = 1``; the result is a polynomial in ``y``."""
    coeffs: Dict[int, int] = {}
    for (i, j), c in p._terms.items():
        coeffs[j] = coeffs.get(j, 0) + c
    return UniPoly(coeffs, var)


def subst_hyperbola(p: BiPoly, var: str = "y") -> "RationalFn":
    """Substitute ``x = (y + 1) / (y - 1)``, giving a rational function in ``y``.

    Uses the common denominator ``(y - 1)**deg_x(p)``.
    """
    if not p._terms:
        return RationalFn(UniPoly({}, var), UniPoly({0: 1}, var))
    d = p.degree_x()
    rows: Dict[int, Dict[int, int]] = {}
    for (i, j), c in p._terms.items():
        rows.setdefault(i, {})[j] = c
    yp1 = UniPoly({0: 1, 1: 1}, var)
    ym1 = UniPoly({0: -1, 1: 1}, var)
    plus_pows = [UniPoly({0: 1}, var)]
    minus_pows = [UniPoly({0: 1}, var)]
    for _ in range(d):
        plus_pows.append(plus_pows[-1] * yp1)
        minus_pows.append(minus_pows[-1] * ym1)
    num = UniPoly({}, var)
    for i, row in rows.items():
        num = num + plus_pows[i] * minus_pows[d - i] * UniPoly(row, var)
    return RationalFn(num, minus_pows[d])


# ---------------------------------------------------------------------------
# univariate / Laurent
# ---------------------------------------------------------------------------


class UniPoly:
    """Sparse univariate polynomial with exact rational coefficients.

    Exponents may be negative (Laurent polynomial).  ``var`` is only a display
    and serialization name; arithmetic between different names is refused.
    """

    __slots__ = ("_c", "var")

    def __init__(self, coeffs: Optional[Mapping[int, Rational]] = None, var: str = "x"):
        clean: Dict[int, Rational] = {}
        if coeffs:
            for e, c in coeffs.items():
                c = _canon_rational(as_rational(c))
                if c:
                    clean[int(e)] = c
        self._c = clean
        self.var = var

    @classmethod
    def _wrap(cls, c: Dict[int, Rational], var: str) -> "UniPoly":
        p = object.__new__(cls)
        p._c = c
        p.var = var
        return p

    @classmethod
    def monomial(cls, e: int, c: Rational = 1, var: str = "x") -> "UniPoly":
        return cls({e: c}, var)

    @property
    def coeffs(self) -> Dict[int, Rational]:
        return dict(self._c)

    def coeff(self, e: int):
        return self._c.get(e, 0)

    def items(self):
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def degree(self) -> int:
        return max(self._c, default=-1)

    def min_exp(self) -> int:
        return min(self._c, default=0)

    def is_laurent(self) -> bool:
        return self.min_exp() < 0

    def _is_constant(self) -> bool:
        return all(e == 0 for e in self._c)

    def leading(self):
        return self._c[self.degree()] if self._c else 0

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._c.values())

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self._c == other._c
        if _is_rational(other):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def _coerce(self, v) -> "UniPoly":
        if isinstance(v, UniPoly):
            if v.var != self.var and not (v._is_constant() or self._is_constant()):
                raise ValueError(f"variable mismatch: {self.var} vs {v.var}")
            return v
        if _is_rational(v):
            return UniPoly({0: v}, self.var)
        raise TypeError

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._c)
        for e, c in other._c.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _canon_rational(s)
            else:
                out.pop(e, None)
        return UniPoly._wrap(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._wrap({e: -c for e, c in self._c.items()}, self.var)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RationalFn):
            return NotImplemented
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        acc: Dict[int, Rational] = {}
        get = acc.get
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                k = e1 + e2
                acc[k] = get(k, 0) + c1 * c2
        return UniPoly._wrap({e: _canon_rational(c) for e, c in acc.items() if c}, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) == 1:
                (e, c), = self._c.items()
                return UniPoly({e * n: Fraction(1) / Fraction(c) ** (-n)}, self.var)
            raise ValueError("negative power of a non-monomial")
        result = UniPoly({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "UniPoly":
        """Multiply by ``var**k`` (``k`` may be negative)."""
        return UniPoly._wrap({e + k: c for e, c in self._c.items()}, self.var)

    def __divmod__(self, other: "UniPoly"):
        """Euclidean division over the rationals (nonnegative exponents only)."""
        other = self._coerce(other)
        if not other._c:
            raise ZeroDivisionError("polynomial division by zero")
        if self.min_exp() < 0 or other.min_exp() < 0:
            raise ValueError("division of Laurent polynomials")
        rem = dict(self._c)
        dd = other.degree()
        lc = Fraction(other.leading())
        quot: Dict[int, Rational] = {}
        while rem:
            dr = max(rem)
            if dr < dd:
                break
            f = _canon_rational(rem[dr] / lc)
            quot[dr - dd] = f
            for e, c in other._c.items():
                k = e + dr - dd
                s = rem.get(k, 0) - f * c
                if s:
                    rem[k] = _canon_rational(s)
                else:
                    rem.pop(k, None)
        return UniPoly._wrap(quot, self.var), UniPoly._wrap(rem, self.var)

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise NotDivisible("polynomial division leaves a remainder")
        return q

    def evaluate(self, v):
        v = as_rational(v)
        if not self._c:
            return 0
        lo = self.min_exp()
        acc = 0
        for e in range(self.degree(), lo - 1, -1):
            acc = acc * v + self._c.get(e, 0)
        if lo < 0:
            inv = Fraction(1, v) if isinstance(v, int) else 1 / v
            acc = acc * inv ** (-lo)
        elif lo > 0:
            acc = acc * v ** lo
        return _canon_rational(acc) if not isinstance(acc, int) else acc

    __call__ = evaluate

    def content(self):
        """Positive rational content (gcd of numerators / lcm of denominators)."""
        num = 0
        den = 1
        for c in self._c.values():
            c = Fraction(c)
            num = gmpy2.gcd(num, c.numerator)
            den = gmpy2.lcm(den, c.denominator)
        return _canon_rational(Fraction(int(num), int(den))) if num else 0

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            c = self._c[e]
            mag = abs(c)
            if e == 0:
                mono = ""
            elif e == 1:
                mono = self.var
            else:
                mono = f"{self.var}^{e}"
            if not mono:
                body = _coeff_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_coeff_str(mag)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"UniPoly({str(self)!r}, var={self.var!r})"

    def to_json_obj(self, laurent: Optional[bool] = None) -> dict:
        if laurent is None:
            laurent = self.is_laurent()
        obj: dict = {"vars": [self.var]}
        if laurent:
            lo = self.min_exp()
            obj["minExp"] = lo
            obj["terms"] = [{"e": [e - lo], "c": _coeff_str(c)} for e, c in sorted(self._c.items())]
        else:
            obj["terms"] = [{"e": [e], "c": _coeff_str(c)} for e, c in sorted(self._c.items())]
        return obj

    def to_json(self, laurent: Optional[bool] = None) -> str:
        return _dumps(self.to_json_obj(laurent))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "UniPoly":
        (var,) = obj["vars"]
        lo = obj.get("minExp", 0)
        return cls({t["e"][0] + lo: rational_from_string(t["c"]) for t in obj["terms"]}, var)

    @classmethod
    def from_json(cls, s: str) -> "UniPoly":
        return cls.from_json_obj(json.loads(s))


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


class RationalFn:
    """``num / den`` with ``den`` monic.  Equality is by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = 1
        var = num.var if isinstance(num, UniPoly) else (den.var if isinstance(den, UniPoly) else "y")
        if not isinstance(num, UniPoly):
            num = UniPoly({0: num}, var)
        if not isinstance(den, UniPoly):
            den = UniPoly({0: den}, var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.min_exp() < 0 or num.min_exp() < 0:
            lo = min(den.min_exp(), num.min_exp())
            num, den = num.shift(-lo), den.shift(-lo)
        lc = den.leading()
        if lc != 1:
            inv = Fraction(1) / Fraction(lc)
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @property
    def var(self):
        return self.num.var

    def _coerce(self, v) -> "RationalFn":
        if isinstance(v, RationalFn):
            return v
        if isinstance(v, UniPoly):
            return RationalFn(v)
        if _is_rational(v):
            return RationalFn(UniPoly({0: v}, self.var))
        raise TypeError

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return RationalFn(self.num + o.num, self.den)
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFn(1) / (self ** (-n))
        return RationalFn(self.num ** n, self.den ** n)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        raise TypeError("RationalFn is unhashable (equality is not structural)")

    def reduced(self) -> "RationalFn":
        """Cancel the polynomial gcd of numerator and denominator."""
        g = poly_gcd(self.num, self.den)
        if g.degree() <= 0:
            return self
        return RationalFn(self.num.exact_div(g), self.den.exact_div(g))

    def to_polynomial(self) -> UniPoly:
        """Exact polynomial value; raises :class:`NotDivisible` otherwise."""
        return self.num.exact_div(self.den)

    def evaluate(self, v):
        d = self.den.evaluate(v)
        if d == 0:
            raise ZeroDivisionError("pole")
        return _canon_rational(Fraction(self.num.evaluate(v)) / Fraction(d))

    __call__ = evaluate

    def __str__(self):
        if self.den.degree() == 0:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFn({str(self)!r})"

    def to_json_obj(self) -> dict:
        return {"num": self.num.to_json_obj(False), "den": self.den.to_json_obj(False)}


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over the rationals (Euclid)."""
    while not b.is_zero():
        a, b = b, divmod(a, b)[1]
    if a.is_zero():
        return a
    return a * (Fraction(1) / Fraction(a.leading()))


_PLAIN_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?")


def rational_from_string(s: str) -> Rational:
    s = s.strip()
    if _PLAIN_RATIONAL.fullmatch(s):
        q = gmpy2.mpq(s)
        return _canon_rational(Fraction(int(q.numerator), int(q.denominator)))
    return _canon_rational(Fraction(s))


__all__ = [
    "BiPoly",
    "UniPoly",
    "RationalFn",
    "Rational",
    "as_rational",
    "bipoly_add",
    "bipoly_mul",
    "bipoly_eval",
    "mul_schoolbook",
    "mul_kronecker",
    "divide_exact_x_minus_1",
    "subst_chromatic",
    "subst_hyperbola",
    "subst_x1",
    "poly_gcd",
    "rational_from_string",
    "rational_str",
    "int_str",
]


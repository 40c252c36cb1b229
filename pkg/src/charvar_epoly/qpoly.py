"""
Exact univariate polynomials in q with rational coefficients.

QPoly is the carrier of every E-polynomial in the package. Values are
immutable and hashable; coefficients are fractions.Fraction, so (q+1)^r stays
exact for any r the CLI accepts.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .config import MAX_DEGREE
from .errors import DegreeGuard, NonExactDivision, NonIntegralPolynomial, PolynomialParseError

Scalar = Union[int, Fraction]


class QPoly:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        c: dict[int, Fraction] = {}
        for e, v in (coeffs or {}).items():
            e = int(e)
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            v = Fraction(v)
            if v:
                c[e] = c.get(e, 0) + v
                if not c[e]:
                    del c[e]
        self._set(c)

    def _set(self, c: dict[int, Fraction]) -> None:
        if c:
            d = max(c)
            if d > MAX_DEGREE:
                raise DegreeGuard(d, MAX_DEGREE)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict[int, Fraction]) -> QPoly:
        # c must already be free of zero entries
        p = cls.__new__(cls)
        p._set(c)
        return p

    # ---------- Constructors ----------
    @classmethod
    def const(cls, value: Scalar) -> QPoly:
        return cls({0: value})

    @classmethod
    def q(cls) -> QPoly:
        return cls({1: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: Scalar = 1) -> QPoly:
        return cls({exponent: coefficient})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, Scalar]]) -> QPoly:
        acc: dict[int, Fraction] = {}
        for e, v in terms:
            acc[e] = acc.get(e, Fraction(0)) + Fraction(v)
        return cls(acc)

    # ---------- Inspection ----------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self._c) if self._c else -1

    @property
    def leading_coefficient(self) -> Fraction:
        return self._c[self.degree] if self._c else Fraction(0)

    def coefficient(self, exponent: int) -> Fraction:
        return self._c.get(exponent, Fraction(0))

    def terms(self) -> list[tuple[int, Fraction]]:
        """(exponent, coefficient) pairs, highest degree first."""
        return sorted(self._c.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._c

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self._c.values())

    # ---------- Ring operations ----------
    @staticmethod
    def _coerce(other) -> QPoly | None:
        if isinstance(other, QPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return QPoly.const(other)
        return None

    def __add__(self, other) -> QPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c = dict(self._c)
        for e, v in o._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return QPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> QPoly:
        return QPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> QPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> QPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> QPoly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._c or not o._c:
            return QPoly()
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in o._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return QPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QPoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {n!r}")
        result = QPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # ---------- Equality / hashing ----------
    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._c)

    def __repr__(self) -> str:
        return f"QPoly('{to_canonical_string(self)}')"

    def __str__(self) -> str:
        return to_canonical_string(self)

    # ---------- Method forms of the module functions ----------
    def exact_div(self, divisor: QPoly) -> QPoly:
        return exact_div(self, divisor)

    def eval_at(self, x: Scalar) -> Fraction:
        return eval_at(self, x)

    def assert_integral(self) -> QPoly:
        return assert_integral(self)


# ---------- Module-level operations ----------
def add(a: QPoly, b: QPoly) -> QPoly:
    return a + b


def mul(a: QPoly, b: QPoly) -> QPoly:
    return a * b


def pow_(a: QPoly, n: int) -> QPoly:
    return a**n


def exact_div(a: QPoly, b: QPoly) -> QPoly:
    """Synthetic long division; any nonzero remainder raises NonExactDivision."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.degree
    lb = b.leading_coefficient
    rem = dict(a._c)
    quot: dict[int, Fraction] = {}
    while rem:
        d = max(rem)
        if d < db:
            break
        c = rem[d] / lb
        k = d - db
        quot[k] = c
        for e, v in b._c.items():
            nv = rem.get(e + k, 0) - c * v
            if nv:
                rem[e + k] = nv
            else:
                rem.pop(e + k, None)
    if rem:
        raise NonExactDivision(
            to_canonical_string(a), to_canonical_string(b), to_canonical_string(QPoly._raw(rem))
        )
    return QPoly._raw(quot)


def eval_at(a: QPoly, x: Scalar) -> Fraction:
    """Sparse Horner evaluation, exact."""
    x = Fraction(x)
    acc = Fraction(0)
    prev = None
    for e, c in a.terms():
        if prev is not None:
            acc *= x ** (prev - e)
        acc += c
        prev = e
    if prev:
        acc *= x**prev
    return acc


def eval_int(a: QPoly, x: int) -> int:
    """Evaluation that must land on an integer (point counts, Euler numbers)."""
    v = eval_at(a, x)
    if v.denominator != 1:
        raise NonIntegralPolynomial(to_canonical_string(a), 0, f"value {v} at q={x}")
    return v.numerator


def assert_integral(a: QPoly) -> QPoly:
    for e, v in a.terms():
        if v.denominator != 1:
            raise NonIntegralPolynomial(to_canonical_string(a), e, str(v))
    return a


# ---------- Text form ----------
def _term_str(e: int, c: Fraction) -> str:
    if e == 0:
        return str(c)
    var = "q" if e == 1 else f"q^{e}"
    return var if c == 1 else f"{c}*{var}"


def to_canonical_string(a: QPoly) -> str:
    """Descending exponents, e.g. "q^8 - q^6 - q^5 + q^3"; "0" for zero."""
    terms = a.terms()
    if not terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(terms):
        body = _term_str(e, abs(c))
        if i == 0:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


_TERM = re.compile(r"([+-])?(?:(\d+)(?:/(\d+))?)?(?:(\*)?(q)(?:\^(\d+))?)?")


def parse(text: str) -> QPoly:
    """
    Inverse of to_canonical_string. Accepts:
    - integer or a/b coefficients, optional '*' before q
    - '^' exponents, arbitrary whitespace, a leading sign, unicode minus
    """
    s = re.sub(r"\s+", "", text.replace("−", "-"))
    if not s:
        raise PolynomialParseError(f"empty polynomial text {text!r}")
    acc: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, den, star, var, exp = m.groups()
        if m.end() == pos or (num is None and var is None):
            raise PolynomialParseError(f"unexpected {s[pos:]!r} in {text!r}")
        if pos > 0 and sign is None:
            raise PolynomialParseError(f"missing '+' or '-' before {s[pos:]!r} in {text!r}")
        if star and num is None:
            raise PolynomialParseError(f"'*' without a coefficient in {text!r}")
        if den is not None and int(den) == 0:
            raise PolynomialParseError(f"zero denominator in {text!r}")
        coef = Fraction(int(num) if num else 1, int(den) if den else 1)
        if sign == "-":
            coef = -coef
        e = int(exp) if exp else (1 if var else 0)
        acc[e] = acc.get(e, Fraction(0)) + coef
        pos = m.end()
    return QPoly(acc)


Q = QPoly.q()
ONE = QPoly.const(1)
ZERO = QPoly()

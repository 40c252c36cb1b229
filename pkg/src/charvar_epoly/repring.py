"""
Equivariant E-polynomials with coefficients in R(Sigma3)[q] and R(Z2)[q].

A Sigma3Class aT + bS + cV records how Sigma3 acts on the cohomology of a
space: T trivial, S sign, V the two-dimensional standard representation
(V*V = T + S + V). A Z2Class aT + bN does the same for an involution. The
trivial coefficient of a class is the E-polynomial of the quotient.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import PolynomialParseError
from .qpoly import ONE, Q, ZERO, QPoly, parse


@dataclass(frozen=True)
class Sigma3Class:
    t: QPoly
    s: QPoly = ZERO
    v: QPoly = ZERO

    @classmethod
    def one(cls) -> Sigma3Class:
        return cls(ONE)

    @property
    def dim(self) -> QPoly:
        return dim(self)

    def __add__(self, other: Sigma3Class) -> Sigma3Class:
        return Sigma3Class(self.t + other.t, self.s + other.s, self.v + other.v)

    def __sub__(self, other: Sigma3Class) -> Sigma3Class:
        return Sigma3Class(self.t - other.t, self.s - other.s, self.v - other.v)

    def __mul__(self, other: Sigma3Class) -> Sigma3Class:
        return sigma3_mul(self, other)

    def __pow__(self, r: int) -> Sigma3Class:
        return sigma3_pow(self, r)

    def __str__(self) -> str:
        return f"({self.t})T + ({self.s})S + ({self.v})V"


@dataclass(frozen=True)
class Z2Class:
    t: QPoly
    n: QPoly = ZERO

    @classmethod
    def one(cls) -> Z2Class:
        return cls(ONE)

    @property
    def dim(self) -> QPoly:
        return self.t + self.n

    def __add__(self, other: Z2Class) -> Z2Class:
        return Z2Class(self.t + other.t, self.n + other.n)

    def __sub__(self, other: Z2Class) -> Z2Class:
        return Z2Class(self.t - other.t, self.n - other.n)

    def __mul__(self, other: Z2Class) -> Z2Class:
        return z2_mul(self, other)

    def __pow__(self, r: int) -> Z2Class:
        return z2_pow(self, r)

    def __str__(self) -> str:
        return f"({self.t})T + ({self.n})N"


# ---------- Sigma3 ----------
def sigma3_mul(x: Sigma3Class, y: Sigma3Class) -> Sigma3Class:
    vv = x.v * y.v
    return Sigma3Class(
        t=x.t * y.t + x.s * y.s + vv,
        s=x.t * y.s + x.s * y.t + vv,
        v=x.t * y.v + x.v * y.t + x.s * y.v + x.v * y.s + vv,
    )


def sigma3_pow(x: Sigma3Class, r: int) -> Sigma3Class:
    if r < 0:
        raise ValueError(f"exponent must be non-negative, got {r}")
    result = Sigma3Class.one()
    base = x
    while r:
        if r & 1:
            result = sigma3_mul(result, base)
        r >>= 1
        if r:
            base = sigma3_mul(base, base)
    return result


def _a(b: int) -> int:
    # a_b = (2^b - (-1)^b)/3: 0, 1, 1, 3, 5, 11, ...
    return (2**b - (-1) ** b) // 3


def v_power(b: int) -> Sigma3Class:
    """V^b = a_b V + a_{b-1}(T + S); V^0 is 1T."""
    if b < 0:
        raise ValueError(f"exponent must be non-negative, got {b}")
    if b == 0:
        return Sigma3Class.one()
    lower = QPoly.const(_a(b - 1))
    return Sigma3Class(t=lower, s=lower, v=QPoly.const(_a(b)))


def equivariant_torus_power(r: int) -> Sigma3Class:
    """Closed form of (q^2 T + S - qV)^r, the class of the r-th power of the maximal torus."""
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    half, sixth, third = Fraction(1, 2), Fraction(1, 6), Fraction(1, 3)
    a = (Q**2 - 1) ** r
    b = (Q - 1) ** (2 * r)
    c = (Q**2 + Q + 1) ** r
    return Sigma3Class(
        t=half * a + sixth * b + third * c,
        s=-half * a + sixth * b + third * c,
        v=third * (b - c),
    )


def invariant_part(x: Sigma3Class) -> QPoly:
    return x.t


def dim(x: Sigma3Class) -> QPoly:
    return x.t + x.s + 2 * x.v


def sigma3_from_quotients(e_total: QPoly, e_mod_h: QPoly, e_mod_sigma3: QPoly) -> Sigma3Class:
    """
    Recover aT + bS + cV from e(X), e(X/H) and e(X/Sigma3), H the order-2
    subgroup: a = e(X/Sigma3), c = e(X/H) - a, b = e(X) - a - 2c.
    """
    a = e_mod_sigma3
    c = e_mod_h - a
    b = e_total - a - 2 * c
    return Sigma3Class(a, b, c)


# ---------- Z2 ----------
def restrict_to_z2(x: Sigma3Class) -> Z2Class:
    # T -> T, S -> N, V -> T + N
    return Z2Class(t=x.t + x.v, n=x.s + x.v)


def z2_mul(x: Z2Class, y: Z2Class) -> Z2Class:
    return Z2Class(t=x.t * y.t + x.n * y.n, n=x.t * y.n + x.n * y.t)


def z2_pow(x: Z2Class, r: int) -> Z2Class:
    if r < 0:
        raise ValueError(f"exponent must be non-negative, got {r}")
    result = Z2Class.one()
    base = x
    while r:
        if r & 1:
            result = z2_mul(result, base)
        r >>= 1
        if r:
            base = z2_mul(base, base)
    return result


def z2_invariant_part(x: Z2Class) -> QPoly:
    return x.t


# ---------- Text form ----------
_SIGMA3_RE = re.compile(r"^\s*\((.*)\)\s*T\s*\+\s*\((.*)\)\s*S\s*\+\s*\((.*)\)\s*V\s*$")
_Z2_RE = re.compile(r"^\s*\((.*)\)\s*T\s*\+\s*\((.*)\)\s*N\s*$")


def parse_sigma3(text: str) -> Sigma3Class:
    m = _SIGMA3_RE.match(text)
    if not m:
        raise PolynomialParseError(f"not a Sigma3 class: {text!r}")
    return Sigma3Class(*(parse(g) for g in m.groups()))


def parse_z2(text: str) -> Z2Class:
    m = _Z2_RE.match(text)
    if not m:
        raise PolynomialParseError(f"not a Z2 class: {text!r}")
    return Z2Class(*(parse(g) for g in m.groups()))


# ---------- Named classes ----------
# diagonal torus (C*)^2 of SL3 under the Weyl group
TORUS_CLASS = Sigma3Class(Q**2, ONE, -Q)
# C* under inversion
INVERSION_CLASS = Z2Class(Q, -ONE)
# PGL2/D under the swap of the two diagonal entries
PGL2_MOD_D_CLASS = Z2Class(Q**2, Q)

# Regular-semisimple eigenvalue triples with one forced value, and the flag
# variety PGL3/D; quotient data (total, mod H, mod Sigma3) taken as given.
REGULAR_EIGENVALUES_QUOTIENTS = (Q**2 - 5 * Q + 10, Q**2 - 3 * Q + 5, Q**2 - Q + 1)
PGL3_MOD_D_QUOTIENTS = (
    Q**6 + 2 * Q**5 + 2 * Q**4 + Q**3,
    Q**6 + Q**5 + Q**4,
    Q**6,
)
REGULAR_EIGENVALUES_CLASS = sigma3_from_quotients(*REGULAR_EIGENVALUES_QUOTIENTS)
PGL3_MOD_D_CLASS = sigma3_from_quotients(*PGL3_MOD_D_QUOTIENTS)

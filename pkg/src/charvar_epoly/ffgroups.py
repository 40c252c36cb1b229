"""
Finite fields GF(p^k), 2x2 and 3x3 matrices over them, enumeration of
SL(n, F_q), and eigenlines over extension fields.

Elements are encoded as integers sum(c_i * p^i) for the residue
c_0 + c_1 x + ... modulo the field's modulus; this encoding is also the
canonical element order. Arithmetic goes through exp/log/Zech tables built
once per field. Whole-group scans use numpy lookups into q x q tables.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from dataclasses import field as dataclass_field
from enum import Enum
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .config import MAX_ENUMERATION, MAX_EXTENSION_DEGREE, MAX_FIELD_ORDER
from .errors import ExtensionTooSmall, GuardExceeded, NotASubfield, NotPrime

# numpy lookup tables are q x q; only base fields get them
MAX_TABLE_ORDER = 256


# ---------- Polynomials over F_p (coefficient lists, constant term first) ----------
def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic m, as a list of length deg(m)."""
    a = [x % p for x in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            base = i - dm
            for j in range(dm + 1):
                a[base + j] = (a[base + j] - c * m[j]) % p
    a = a[:dm]
    return a + [0] * (dm - len(a))


def _poly_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_mod(prod, m, p)


def _poly_powmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = _poly_mod([1], m, p)
    base = list(a)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _poly_mulmod(base, base, m, p)
    return result


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    k = len(f) - 1
    if k == 1:
        return True
    if f[0] == 0:
        return False
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not any(_poly_mod(f, list(tail) + [1], p)):
                return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    # itertools.product walks constant-term-first tuples in lexicographic order
    for tail in itertools.product(range(p), repeat=k):
        f = list(tail) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {k} over F_{p}")


# ---------- Fields ----------
@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    modulus: tuple[int, ...]
    exp: list[int] = field(compare=False, repr=False)
    log: list[int] = field(compare=False, repr=False)
    zech: list[int] = field(compare=False, repr=False)

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def order(self) -> int:
        """Order of the multiplicative group."""
        return self.q - 1

    def __str__(self) -> str:
        return f"F_{self.q}"

    # ---- arithmetic on encoded elements ----
    def add(self, a: int, b: int) -> int:
        if not a:
            return b
        if not b:
            return a
        m = self.q - 1
        la = self.log[a]
        d = self.log[b] - la
        if d < 0:
            d += m
        z = self.zech[d]
        if z < 0:
            return 0
        s = la + z
        return self.exp[s - m if s >= m else s]

    def neg(self, a: int) -> int:
        if not a or self.p == 2:
            return a
        m = self.q - 1
        s = self.log[a] + m // 2
        return self.exp[s - m if s >= m else s]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        m = self.q - 1
        s = self.log[a] + self.log[b]
        return self.exp[s - m if s >= m else s]

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError(f"0 has no inverse in {self}")
        m = self.q - 1
        return self.exp[(-self.log[a]) % m]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if not a:
            if e < 0:
                raise ZeroDivisionError(f"0 has no inverse in {self}")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def frobenius(self, a: int, power: int = 1) -> int:
        """x -> x^(p^power)."""
        return self.pow(a, self.p**power)

    # ---- encoding ----
    def coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            a, c = divmod(a, self.p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, cs: Sequence[int]) -> int:
        if len(cs) > self.k:
            raise ValueError(f"{len(cs)} coefficients for a degree-{self.k} field")
        return sum((c % self.p) * self.p**i for i, c in enumerate(cs))

    def element(self, value: int) -> FqElem:
        return FqElem(self, value)

    def element_str(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs(a)))):
            if not c:
                continue
            var = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not var:
                terms.append(str(c))
            else:
                terms.append(var if c == 1 else f"{c}{var}")
        return "+".join(terms) if terms else "0"


def _build_tables(p: int, k: int, modulus: tuple[int, ...]) -> tuple[list[int], list[int], list[int]]:
    q = p**k
    m = q - 1

    def encode(cs: Sequence[int]) -> int:
        return sum(c * p**i for i, c in enumerate(cs))

    def decode(v: int) -> list[int]:
        out = []
        for _ in range(k):
            v, c = divmod(v, p)
            out.append(c)
        return out

    # primitive element: smallest encoding of multiplicative order q-1
    factors = _prime_factors(m)
    one = _poly_mod([1], modulus, p)
    gen = None
    for v in range(1, q):
        g = decode(v)
        if all(_poly_powmod(g, m // f, modulus, p) != one for f in factors):
            gen = g
            break
    if gen is None:
        raise AssertionError(f"no primitive element in F_{q}")

    exp = [0] * m
    cur = one
    for i in range(m):
        exp[i] = encode(cur)
        cur = _poly_mulmod(cur, gen, modulus, p)
    log = [-1] * q
    for i, v in enumerate(exp):
        log[v] = i

    # zech[n] = log(1 + g^n), -1 when 1 + g^n = 0
    zech = [-1] * m
    for n, v in enumerate(exp):
        c0 = v % p
        w = v - c0 + (c0 + 1) % p
        zech[n] = log[w] if w else -1
    return exp, log, zech


@lru_cache(maxsize=None)
def field_make(p: int, k: int = 1) -> FieldSpec:
    """GF(p^k) with the lexicographically smallest monic irreducible modulus."""
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not 1 <= k <= MAX_EXTENSION_DEGREE or p**k > MAX_FIELD_ORDER:
        raise GuardExceeded(f"GF({p}^{k}) is outside the supported range (k <= {MAX_EXTENSION_DEGREE}, q <= {MAX_FIELD_ORDER})")
    modulus = _smallest_irreducible(p, k)
    exp, log, zech = _build_tables(p, k, modulus)
    return FieldSpec(p, k, modulus, exp, log, zech)


def field_of_order(q: int) -> FieldSpec:
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            n = q
            while n % p == 0:
                n //= p
                k += 1
            if n != 1:
                raise NotPrime(f"{q} is not a prime power")
            return field_make(p, k)
    raise NotPrime(f"{q} is not a prime power")


def extension(base: FieldSpec, degree: int) -> FieldSpec:
    return field_make(base.p, base.k * degree)


@dataclass(frozen=True)
class FqElem:
    field: FieldSpec
    value: int

    def _check(self, other: FqElem) -> None:
        if self.field != other.field:
            raise ValueError(f"mixing elements of {self.field} and {other.field}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def __add__(self, other: FqElem) -> FqElem:
        self._check(other)
        return FqElem(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other: FqElem) -> FqElem:
        self._check(other)
        return FqElem(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other: FqElem) -> FqElem:
        self._check(other)
        return FqElem(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: FqElem) -> FqElem:
        self._check(other)
        return FqElem(self.field, self.field.div(self.value, other.value))

    def __neg__(self) -> FqElem:
        return FqElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int) -> FqElem:
        return FqElem(self.field, self.field.pow(self.value, e))

    def __bool__(self) -> bool:
        return self.value != 0

    def inverse(self) -> FqElem:
        return FqElem(self.field, self.field.inv(self.value))

    def __str__(self) -> str:
        return self.field.element_str(self.value)


# ---------- Embeddings ----------
def poly_eval(coeffs: Sequence[int], F: FieldSpec, x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


@lru_cache(maxsize=None)
def embedding_table(sub: FieldSpec, sup: FieldSpec) -> tuple[int, ...]:
    """Image in sup of every element of sub, indexed by encoding."""
    if sub.p != sup.p or sup.k % sub.k:
        raise NotASubfield(f"{sub} is not a subfield of {sup}")
    if sub.k == 1 or sub == sup:
        return tuple(range(sub.q))
    # prime-field coefficients encode identically in every field of characteristic p
    root = next(x for x in range(sup.q) if poly_eval(sub.modulus, sup, x) == 0)
    powers = [sup.pow(root, i) for i in range(sub.k)]
    table = []
    for v in range(sub.q):
        acc = 0
        for c, pw in zip(sub.coeffs(v), powers):
            if c:
                acc = sup.add(acc, sup.mul(c, pw))
        table.append(acc)
    return tuple(table)


def embed(e: FqElem, sub: FieldSpec, sup: FieldSpec) -> FqElem:
    if e.field != sub:
        raise ValueError(f"element of {e.field} passed as element of {sub}")
    return FqElem(sup, embedding_table(sub, sup)[e.value])


def _synthetic_div(f: Sequence[int], F: FieldSpec, x: int) -> list[int]:
    """Quotient of f by (X - x); f constant term first."""
    n = len(f) - 1
    out = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc = F.add(F.mul(acc, x), f[i])
        out[i - 1] = acc
    return out


@lru_cache(maxsize=4096)
def poly_roots(coeffs: tuple[int, ...], base: FieldSpec, ext: FieldSpec) -> tuple[tuple[int, int], ...]:
    """Roots in ext, with multiplicity, of a polynomial over base (exhaustive search)."""
    emb = embedding_table(base, ext)
    f = [emb[c] for c in coeffs]
    degree = len(f) - 1
    roots = []
    found = 0
    for x in range(ext.q):
        if poly_eval(f, ext, x):
            continue
        mult = 0
        g = f
        while len(g) > 1 and poly_eval(g, ext, x) == 0:
            g = _synthetic_div(g, ext, x)
            mult += 1
        roots.append((x, mult))
        found += mult
        if found == degree:
            break
    return tuple(roots)


# ---------- Matrices ----------
@dataclass(frozen=True)
class FqMatrix:
    field: FieldSpec
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n not in (2, 3) or any(len(row) != n for row in self.rows):
            raise ValueError(f"expected a 2x2 or 3x3 matrix, got {self.rows}")

    @classmethod
    def from_rows(cls, F: FieldSpec, rows) -> FqMatrix:
        return cls(F, tuple(tuple(x.value if isinstance(x, FqElem) else int(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, F: FieldSpec, n: int) -> FqMatrix:
        return cls.scalar(F, n, 1)

    @classmethod
    def scalar(cls, F: FieldSpec, n: int, c: int) -> FqMatrix:
        return cls(F, tuple(tuple(c if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> FqElem:
        return FqElem(self.field, self.rows[i][j])

    def __matmul__(self, other: FqMatrix) -> FqMatrix:
        F = self.field
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = 0
                for t in range(n):
                    acc = F.add(acc, F.mul(self.rows[i][t], other.rows[t][j]))
                row.append(acc)
            out.append(tuple(row))
        return FqMatrix(F, tuple(out))

    def transpose(self) -> FqMatrix:
        return FqMatrix(self.field, tuple(zip(*self.rows)))

    def trace(self) -> int:
        F = self.field
        acc = 0
        for i in range(self.n):
            acc = F.add(acc, self.rows[i][i])
        return acc

    def _minor2(self, r0: int, r1: int, c0: int, c1: int) -> int:
        F = self.field
        a = self.rows
        return F.sub(F.mul(a[r0][c0], a[r1][c1]), F.mul(a[r0][c1], a[r1][c0]))

    def det(self) -> int:
        F = self.field
        a = self.rows
        if self.n == 2:
            return self._minor2(0, 1, 0, 1)
        acc = F.mul(a[0][0], self._minor2(1, 2, 1, 2))
        acc = F.sub(acc, F.mul(a[0][1], self._minor2(1, 2, 0, 2)))
        return F.add(acc, F.mul(a[0][2], self._minor2(1, 2, 0, 1)))

    def char_poly(self) -> tuple[int, ...]:
        """det(xI - A), monic, constant term first."""
        F = self.field
        tr = self.trace()
        if self.n == 2:
            return (self.det(), F.neg(tr), 1)
        sigma2 = F.add(F.add(self._minor2(0, 1, 0, 1), self._minor2(0, 2, 0, 2)), self._minor2(1, 2, 1, 2))
        return (F.neg(self.det()), sigma2, F.neg(tr), 1)

    def inverse(self) -> FqMatrix:
        F = self.field
        d = self.det()
        if not d:
            raise ZeroDivisionError("singular matrix")
        di = F.inv(d)
        a = self.rows
        if self.n == 2:
            adj = ((a[1][1], F.neg(a[0][1])), (F.neg(a[1][0]), a[0][0]))
        else:
            cof = [[0] * 3 for _ in range(3)]
            for i in range(3):
                for j in range(3):
                    rs = [x for x in range(3) if x != i]
                    cs = [x for x in range(3) if x != j]
                    m = self._minor2(rs[0], rs[1], cs[0], cs[1])
                    cof[i][j] = m if (i + j) % 2 == 0 else F.neg(m)
            adj = tuple(tuple(cof[j][i] for j in range(3)) for i in range(3))
        return FqMatrix(F, tuple(tuple(F.mul(di, x) for x in row) for row in adj))

    def is_scalar(self) -> bool:
        c = self.rows[0][0]
        return all(self.rows[i][j] == (c if i == j else 0) for i in range(self.n) for j in range(self.n))

    def embed_into(self, ext: FieldSpec) -> FqMatrix:
        if ext == self.field:
            return self
        emb = embedding_table(self.field, ext)
        return FqMatrix(ext, tuple(tuple(emb[x] for x in row) for row in self.rows))

    def __str__(self) -> str:
        el = self.field.element_str
        return "[" + ", ".join("[" + " ".join(el(x) for x in row) + "]" for row in self.rows) + "]"


def companion(F: FieldSpec, coeffs: Sequence[int]) -> FqMatrix:
    """
    Companion matrix of the monic x^n + ... with the given lower coefficients
    (constant first); its char_poly returns (*coeffs, 1).
    """
    n = len(coeffs)
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = F.neg(coeffs[i])
    return FqMatrix.from_rows(F, rows)


# ---------- Linear algebra over a field ----------
def nullspace(rows: Sequence[Sequence[int]], F: FieldSpec) -> list[tuple[int, ...]]:
    """Basis of the kernel, read off the reduced row echelon form."""
    m = [list(r) for r in rows]
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    basis = []
    for fc in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(m[i][fc])
        basis.append(tuple(v))
    return basis


def canonical(F: FieldSpec, v: Sequence[int]) -> tuple[int, ...]:
    """Projective representative with first nonzero coordinate 1."""
    lead = next(x for x in v if x)
    inv = F.inv(lead)
    return tuple(F.mul(inv, x) for x in v)


def dot(F: FieldSpec, u: Sequence[int], v: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(u, v):
        acc = F.add(acc, F.mul(x, y))
    return acc


def cross(F: FieldSpec, u: Sequence[int], v: Sequence[int]) -> tuple[int, int, int]:
    return (
        F.sub(F.mul(u[1], v[2]), F.mul(u[2], v[1])),
        F.sub(F.mul(u[2], v[0]), F.mul(u[0], v[2])),
        F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0])),
    )


# ---------- Eigenlines ----------
class LineKind(str, Enum):
    FINITE = "Finite"
    PLANE = "PlaneFamily"
    ALL = "AllLines"


@dataclass(frozen=True)
class EigenlineSet:
    """
    The invariant lines of one matrix (or their common part for a tuple).
    - all_lines: every line (scalar matrix)
    - normal/plane: every line inside one plane, given by its canonical
      normal vector and an echelon basis
    - points: finitely many further lines, never inside the plane
    """

    field: FieldSpec = field(compare=False, repr=False)
    points: frozenset[tuple[int, ...]] = frozenset()
    normal: tuple[int, ...] | None = None
    plane: tuple[tuple[int, ...], ...] | None = dataclass_field(default=None, compare=False)
    all_lines: bool = False

    @property
    def kind(self) -> LineKind:
        if self.all_lines:
            return LineKind.ALL
        if self.normal is not None:
            return LineKind.PLANE
        return LineKind.FINITE

    @property
    def is_empty(self) -> bool:
        return not self.all_lines and not self.points and self.normal is None

    @property
    def key(self) -> tuple:
        return (self.all_lines, self.points, self.normal)

    def contains(self, point: tuple[int, ...]) -> bool:
        if self.all_lines or point in self.points:
            return True
        return self.normal is not None and dot(self.field, self.normal, point) == 0

    def meets(self, other: EigenlineSet) -> bool:
        if self.all_lines or other.all_lines:
            return True
        if self.normal is not None and other.normal is not None:
            # two planes in 3-space always share a line
            return True
        if not self.points.isdisjoint(other.points):
            return True
        if other.normal is not None and any(dot(self.field, other.normal, p) == 0 for p in self.points):
            return True
        return self.normal is not None and any(dot(self.field, self.normal, p) == 0 for p in other.points)

    def meet(self, other: EigenlineSet) -> EigenlineSet:
        if self.all_lines:
            return other
        if other.all_lines:
            return self
        F = self.field
        if self.normal is not None and self.normal == other.normal:
            return EigenlineSet(F, self.points & other.points, self.normal, self.plane)
        pts = set(self.points & other.points)
        if other.normal is not None:
            pts.update(p for p in self.points if dot(F, other.normal, p) == 0)
        if self.normal is not None:
            pts.update(p for p in other.points if dot(F, self.normal, p) == 0)
        if self.normal is not None and other.normal is not None:
            pts.add(canonical(F, cross(F, self.normal, other.normal)))
        return EigenlineSet(F, frozenset(pts))

    def apply_frobenius(self, power: int) -> EigenlineSet:
        """Coordinate-wise x -> x^(p^power); canonical vectors stay canonical."""
        F = self.field

        def fr(v):
            return None if v is None else tuple(F.frobenius(x, power) for x in v)

        plane = None if self.plane is None else tuple(fr(b) for b in self.plane)
        return EigenlineSet(F, frozenset(fr(p) for p in self.points), fr(self.normal), plane, self.all_lines)


def eigenlines(A: FqMatrix, ext: FieldSpec) -> EigenlineSet:
    """Invariant lines of A over ext."""
    if A.is_scalar():
        return EigenlineSet(ext, all_lines=True)
    roots = poly_roots(A.char_poly(), A.field, ext)
    if sum(m for _, m in roots) < A.n:
        raise ExtensionTooSmall(f"char poly of {A} does not split in {ext}")
    M = A.embed_into(ext)
    F = ext
    points = set()
    normal = None
    plane = None
    for lam, _ in roots:
        shifted = [[F.sub(x, lam) if i == j else x for j, x in enumerate(row)] for i, row in enumerate(M.rows)]
        kernel = nullspace(shifted, F)
        if len(kernel) == 1:
            points.add(canonical(F, kernel[0]))
        elif len(kernel) == 2:
            plane = tuple(kernel)
            normal = canonical(F, cross(F, kernel[0], kernel[1]))
    return EigenlineSet(F, frozenset(points), normal, plane)


def splitting_extension(base: FieldSpec, n: int) -> FieldSpec:
    """Degree-2 extension for 2x2 matrices, degree-6 for 3x3."""
    return extension(base, 2 if n == 2 else 6)


# ---------- Enumeration of SL(n, F_q) ----------
def _check_enumeration(n: int, F: FieldSpec) -> None:
    if n not in (2, 3):
        raise ValueError(f"n must be 2 or 3, got {n}")
    if F.q ** (n * n) > MAX_ENUMERATION:
        raise GuardExceeded(f"enumerating SL({n}, F_{F.q}) scans {F.q}^{n * n} candidates, above {MAX_ENUMERATION}")


@lru_cache(maxsize=None)
def np_tables(F: FieldSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(add, mul, neg, sub) lookup arrays over encoded elements."""
    if F.q > MAX_TABLE_ORDER:
        raise GuardExceeded(f"lookup tables for {F} exceed order {MAX_TABLE_ORDER}")
    q = F.q
    add = np.array([[F.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    mul = np.array([[F.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    neg = np.array([F.neg(a) for a in range(q)], dtype=np.int64)
    sub = add[:, neg]
    return add, mul, neg, sub


@lru_cache(maxsize=None)
def _vectors(F: FieldSpec, n: int) -> np.ndarray:
    """All of F^n in lexicographic order, shape (q^n, n)."""
    return np.array(list(itertools.product(range(F.q), repeat=n)), dtype=np.int64).reshape(-1, n)


def sl_prefix_count(n: int, F: FieldSpec) -> int:
    """Number of first-row prefixes; the unit of work partitioning."""
    return F.q**n


def _sl_batch(n: int, F: FieldSpec, prefix: int) -> np.ndarray:
    add, mul, _, sub = np_tables(F)
    V = _vectors(F, n)
    a = V[prefix]
    if not a.any():
        return np.empty((0, n, n), dtype=np.int64)
    if n == 2:
        det = sub[mul[a[0], V[:, 1]], mul[a[1], V[:, 0]]]
        (j,) = np.nonzero(det == 1)
        out = np.empty((len(j), 2, 2), dtype=np.int64)
        out[:, 0, :] = a
        out[:, 1, :] = V[j]
        return out
    # a . (v x w) = w . (a x v)
    c0 = sub[mul[a[1], V[:, 2]], mul[a[2], V[:, 1]]]
    c1 = sub[mul[a[2], V[:, 0]], mul[a[0], V[:, 2]]]
    c2 = sub[mul[a[0], V[:, 1]], mul[a[1], V[:, 0]]]
    det = add[
        add[mul[c0[:, None], V[None, :, 0]], mul[c1[:, None], V[None, :, 1]]],
        mul[c2[:, None], V[None, :, 2]],
    ]
    j, k = np.nonzero(det == 1)
    out = np.empty((len(j), 3, 3), dtype=np.int64)
    out[:, 0, :] = a
    out[:, 1, :] = V[j]
    out[:, 2, :] = V[k]
    return out


def sl_batches(n: int, F: FieldSpec, start: int = 0, stop: int | None = None) -> Iterator[np.ndarray]:
    """
    SL(n, F_q) as numpy blocks of shape (m, n, n), one block per first row,
    in row-major lexicographic order. [start, stop) selects first rows.
    """
    _check_enumeration(n, F)
    total = sl_prefix_count(n, F)
    stop = total if stop is None else min(stop, total)
    for prefix in range(start, stop):
        batch = _sl_batch(n, F, prefix)
        if len(batch):
            yield batch


def matrix_from_array(F: FieldSpec, arr: np.ndarray) -> FqMatrix:
    return FqMatrix(F, tuple(tuple(int(x) for x in row) for row in arr))


def enumerate_sl(n: int, F: FieldSpec, start: int = 0, stop: int | None = None) -> Iterator[FqMatrix]:
    """Every determinant-one matrix exactly once, row-major lexicographic."""
    for batch in sl_batches(n, F, start, stop):
        for arr in batch:
            yield matrix_from_array(F, arr)


def random_sl(n: int, F: FieldSpec, rng: random.Random) -> FqMatrix:
    """Uniform element of SL(n, F_q): random invertible matrix, first row rescaled."""
    while True:
        rows = [[rng.randrange(F.q) for _ in range(n)] for _ in range(n)]
        A = FqMatrix.from_rows(F, rows)
        d = A.det()
        if d:
            di = F.inv(d)
            rows[0] = [F.mul(di, x) for x in rows[0]]
            return FqMatrix.from_rows(F, rows)

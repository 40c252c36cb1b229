"""
Group E-polynomials, stratum records, and the conjugation strata of SL3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from .config import MAX_GROUP_RANK, MAX_RANK
from .errors import RankGuard, StratumSumMismatch
from .qpoly import Q, QPoly, assert_integral, exact_div
from .repring import PGL3_MOD_D_CLASS, REGULAR_EIGENVALUES_CLASS, invariant_part, sigma3_mul

SCHEMA_VERSION = "charvar-epoly/1"


class GroupFamily(str, Enum):
    GL = "GL"
    SL = "SL"
    PGL = "PGL"


@dataclass(frozen=True)
class GroupKind:
    family: GroupFamily
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"group rank must be positive, got {self.n}")

    def __str__(self) -> str:
        return f"{self.family.value}{self.n}"


def validate_rank(r: int) -> int:
    """Number of free generators; 1 <= r <= MAX_RANK."""
    if not isinstance(r, int) or isinstance(r, bool) or not 1 <= r <= MAX_RANK:
        raise RankGuard(f"r must be an integer in 1..{MAX_RANK}, got {r!r}")
    return r


@lru_cache(maxsize=None)
def group_epoly(g: GroupKind) -> QPoly:
    if g.n > MAX_GROUP_RANK:
        raise RankGuard(f"group rank {g.n} exceeds guard {MAX_GROUP_RANK}")
    n = g.n
    if g.family is GroupFamily.SL:
        # q^(n(n-1)/2) * prod_{i=2..n} (q^i - 1)
        out = Q ** (n * (n - 1) // 2)
        for i in range(2, n + 1):
            out = out * (Q**i - 1)
        return out
    gl = QPoly.const(1)
    for i in range(n):
        gl = gl * (Q**n - Q**i)
    if g.family is GroupFamily.GL:
        return gl
    # GL_n -> PGL_n is a C* fibration
    return exact_div(gl, Q - 1)


E_SL2 = group_epoly(GroupKind(GroupFamily.SL, 2))
E_SL3 = group_epoly(GroupKind(GroupFamily.SL, 3))
E_PGL3 = group_epoly(GroupKind(GroupFamily.PGL, 3))
E_GL2 = group_epoly(GroupKind(GroupFamily.GL, 2))


# ---------- Stratum records ----------
@dataclass(frozen=True)
class StratumEntry:
    id: str
    description: str
    epoly: QPoly

    def to_dict(self) -> dict:
        return {"id": self.id, "description": self.description, "epoly": str(self.epoly)}


def expect_equal(stratum_id: str, computed: QPoly, printed: QPoly) -> QPoly:
    """Return computed if it matches the closed form, else raise StratumSumMismatch."""
    if computed != printed:
        raise StratumSumMismatch(stratum_id, str(computed), str(printed))
    return computed


@dataclass(frozen=True)
class EulerCharacteristics:
    chi_M: int
    chi_M_smooth: int
    chi_M_singular: int
    chi_M_abelian: int | None = None
    chi_M_abelian_claimed: int | None = None
    abelian_discrepancy: bool | None = None
    note: str | None = None

    def to_dict(self) -> dict:
        return {
            "chi_M": self.chi_M,
            "chi_M_smooth": self.chi_M_smooth,
            "chi_M_singular": self.chi_M_singular,
            "chi_M_abelian": self.chi_M_abelian,
            "chi_M_abelian_claimed": self.chi_M_abelian_claimed,
            "abelian_discrepancy": self.abelian_discrepancy,
            "note": self.note,
        }


@dataclass(frozen=True)
class StrataReport:
    group: str
    r: int
    entries: tuple[StratumEntry, ...]
    aggregates: tuple[StratumEntry, ...]
    euler: EulerCharacteristics | None = None
    flags: dict[str, bool] = field(init=False, compare=False)

    def __post_init__(self):
        ids = [e.id for e in (*self.entries, *self.aggregates)]
        if len(ids) != len(set(ids)):
            raise ValueError(f"duplicate stratum ids in {self.group} report: {ids}")
        flags = {e.id: e.epoly.is_integral() for e in (*self.entries, *self.aggregates)}
        object.__setattr__(self, "flags", flags)

    def entry(self, stratum_id: str) -> QPoly:
        for e in (*self.entries, *self.aggregates):
            if e.id == stratum_id:
                return e.epoly
        raise KeyError(stratum_id)

    def ids(self) -> list[str]:
        return [e.id for e in (*self.entries, *self.aggregates)]

    def assert_integral(self) -> StrataReport:
        for e in (*self.entries, *self.aggregates):
            assert_integral(e.epoly)
        return self

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "group": self.group,
            "r": self.r,
            "strata": [e.to_dict() for e in self.entries],
            "aggregates": {e.id: str(e.epoly) for e in self.aggregates},
            "euler": self.euler.to_dict() if self.euler else None,
            "flags": dict(self.flags),
        }


# ---------- Conjugation strata of SL3 (one generator) ----------
CONJUGATION_STRATA = (
    ("X0", "scalar matrices xi*I with xi^3 = 1"),
    ("X1", "xi*(I + N) with N nilpotent of rank 1, xi^3 = 1"),
    ("X2", "xi times a regular unipotent (single Jordan block), xi^3 = 1"),
    ("X3", "diagonalizable with eigenvalues (l, l, l^-2), l^3 != 1"),
    ("X4", "non-diagonalizable with eigenvalues (l, l, l^-2), l^3 != 1"),
    ("X5", "three distinct eigenvalues (regular semisimple)"),
)

X5_PRINTED = Q**8 - Q**7 - Q**6 + 2 * Q**5 + 4 * Q**4 + Q**3


def conjugation_stratum_names() -> tuple[tuple[str, str], ...]:
    return CONJUGATION_STRATA


@lru_cache(maxsize=1)
def sl3_conjugation_strata() -> tuple[StratumEntry, ...]:
    """X0..X5 as orbit-type counts times stabilizer quotients of PGL3."""
    e = E_SL3
    polys = {
        "X0": QPoly.const(3),
        "X1": 3 * exact_div(e, Q**3 * (Q - 1)),
        "X2": 3 * exact_div(e, Q**2),
        "X3": (Q - 4) * exact_div(e, E_GL2),
        "X4": (Q - 4) * exact_div(e, Q * (Q - 1)),
        # eigenvalue triples of B are permuted by Sigma3 together with the
        # flag variety PGL3/D; X5 is the quotient of the product
        "X5": expect_equal("X5", invariant_part(sigma3_mul(REGULAR_EIGENVALUES_CLASS, PGL3_MOD_D_CLASS)), X5_PRINTED),
    }
    return tuple(StratumEntry(sid, desc, assert_integral(polys[sid])) for sid, desc in CONJUGATION_STRATA)


def sl3_conjugation_sum_check() -> QPoly:
    total = sum((e.epoly for e in sl3_conjugation_strata()), QPoly())
    return expect_equal("X0+...+X5", total, E_SL3)


def m_1_3() -> QPoly:
    """SL3 character variety of the free group on one generator."""
    return Q**2

"""
SL2 and PGL2 character varieties of the free group F_r.

Each reducible stratum is computed from its fibration data; the closed forms
are kept next to them and every sum is checked against its closed form.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import EulerMismatch
from .grpvar import E_SL2, EulerCharacteristics, StrataReport, StratumEntry, expect_equal, validate_rank
from .qpoly import ONE, Q, QPoly, assert_integral, eval_int, exact_div
from .repring import INVERSION_CLASS, PGL2_MOD_D_CLASS, Z2Class, z2_invariant_part, z2_pow

HALF = Fraction(1, 2)

# PGL2 / (upper triangular unipotent x diagonal)
_FLAG_FIBRE = exact_div(E_SL2, Q * (Q - 1))


# ---------- Closed forms ----------
def sl2_m_red_printed(r: int) -> QPoly:
    return HALF * ((Q + 1) ** r + (Q - 1) ** r)


def sl2_r_red_printed(r: int) -> QPoly:
    return (
        HALF * (Q**2 - Q) * (Q + 1) ** r
        + HALF * (Q**2 + Q) * (Q - 1) ** r
        + (Q ** (r - 1) - 1) * (Q - 1) ** (r - 1) * (Q**3 - Q)
    )


def sl2_m_irr_printed(r: int) -> QPoly:
    return (
        (Q**3 - Q) ** (r - 1)
        - HALF * (Q + 1) ** (r - 1)
        - HALF * (Q - 1) ** (r - 1)
        - (Q ** (r - 1) - 1) * (Q - 1) ** (r - 1)
    )


def sl2_m_printed(r: int) -> QPoly:
    return (
        (Q**3 - Q) ** (r - 1)
        + HALF * Q * (Q + 1) ** (r - 1)
        + HALF * Q * (Q - 1) ** (r - 1)
        - Q ** (r - 1) * (Q - 1) ** (r - 1)
    )


# ---------- SL2 ----------
@lru_cache(maxsize=None)
def sl2_m_red(r: int) -> QPoly:
    """Diagonal tuples modulo the Weyl group: ((C*)^r)/Z2."""
    validate_rank(r)
    return expect_equal("Mred", z2_invariant_part(z2_pow(INVERSION_CLASS, r)), sl2_m_red_printed(r))


def _red_strata(r: int, scalars: int, prefix: str) -> tuple[StratumEntry, ...]:
    # scalars = number of central tuples: 2^r for SL2, 1 for PGL2
    b = z2_pow(INVERSION_CLASS, r) - Z2Class(QPoly.const(scalars))
    polys = [
        QPoly.const(scalars),
        z2_invariant_part(PGL2_MOD_D_CLASS * b),
        scalars * (Q**r - 1) * _FLAG_FIBRE,
        (Q**r - Q) * ((Q - 1) ** r - scalars) * _FLAG_FIBRE,
    ]
    descriptions = [
        "central tuples",
        "diagonalizable, not all central (PGL2/D x_Z2 B)",
        "central times unipotent, not all central",
        "upper triangular, not diagonalizable, not central times unipotent",
    ]
    return tuple(StratumEntry(f"{prefix}R{i}", d, p) for i, (d, p) in enumerate(zip(descriptions, polys)))


@lru_cache(maxsize=None)
def sl2_red_strata(r: int) -> tuple[StratumEntry, ...]:
    validate_rank(r)
    strata = _red_strata(r, 2**r, "")
    expect_equal("R2", strata[2].epoly, 2**r * (Q**r - 1) * (Q + 1))
    return strata


@lru_cache(maxsize=None)
def sl2_r_red(r: int) -> QPoly:
    total = sum((e.epoly for e in sl2_red_strata(r)), QPoly())
    return expect_equal("Rred", total, sl2_r_red_printed(r))


def sl2_r_irr(r: int) -> QPoly:
    return E_SL2**r - sl2_r_red(r)


@lru_cache(maxsize=None)
def sl2_m_irr(r: int) -> QPoly:
    # PGL2 acts freely on the irreducible locus
    return expect_equal("Mirr", exact_div(sl2_r_irr(r), E_SL2), sl2_m_irr_printed(r))


@lru_cache(maxsize=None)
def sl2_m(r: int) -> QPoly:
    total = sl2_m_irr(r) + sl2_m_red(r)
    return assert_integral(expect_equal("M", total, sl2_m_printed(r)))


# ---------- PGL2 ----------
@lru_cache(maxsize=None)
def pgl2_red_strata(r: int) -> tuple[StratumEntry, ...]:
    validate_rank(r)
    strata = _red_strata(r, 1, "bar")
    expect_equal("barR0", strata[0].epoly, ONE)
    expect_equal("barR2", strata[2].epoly, exact_div(sl2_red_strata(r)[2].epoly, QPoly.const(2**r)))
    return strata


@lru_cache(maxsize=None)
def pgl2_r_red(r: int) -> QPoly:
    total = sum((e.epoly for e in pgl2_red_strata(r)), QPoly())
    return expect_equal("barRred", total, sl2_r_red(r))


def pgl2_r_irr(r: int) -> QPoly:
    return E_SL2**r - pgl2_r_red(r)


@lru_cache(maxsize=None)
def pgl2_m(r: int) -> QPoly:
    m_irr = exact_div(pgl2_r_irr(r), E_SL2)
    # the maximal torus of PGL2 is again C* under inversion
    total = m_irr + sl2_m_red(r)
    return assert_integral(expect_equal("barM", total, sl2_m(r)))


# ---------- Reports ----------
def sl2_euler(r: int) -> EulerCharacteristics:
    chi = eval_int(sl2_m(r), 1)
    expected = 2 ** (r - 2) if r >= 2 else 1
    if chi != expected:
        raise EulerMismatch("chi_M", chi, expected)
    return EulerCharacteristics(
        chi_M=chi,
        chi_M_smooth=eval_int(sl2_m_irr(r), 1),
        chi_M_singular=eval_int(sl2_m_red(r), 1),
    )


def _aggregates(r: int, r_red: QPoly, m_irr: QPoly, m: QPoly) -> tuple[StratumEntry, ...]:
    return (
        StratumEntry("Rred", "reducible representations", r_red),
        StratumEntry("Rirr", "irreducible representations", E_SL2**r - r_red),
        StratumEntry("Mirr", "irreducible character variety (smooth locus)", m_irr),
        StratumEntry("Mred", "reducible character variety, (C*)^r / Z2", sl2_m_red(r)),
        StratumEntry("M", "character variety", m),
    )


def sl2_strata(r: int) -> StrataReport:
    validate_rank(r)
    report = StrataReport(
        group="SL2",
        r=r,
        entries=sl2_red_strata(r),
        aggregates=_aggregates(r, sl2_r_red(r), sl2_m_irr(r), sl2_m(r)),
        euler=sl2_euler(r),
    )
    return report.assert_integral()


def pgl2_strata(r: int) -> StrataReport:
    validate_rank(r)
    m = pgl2_m(r)
    report = StrataReport(
        group="PGL2",
        r=r,
        entries=pgl2_red_strata(r),
        aggregates=_aggregates(r, pgl2_r_red(r), exact_div(pgl2_r_irr(r), E_SL2), m),
        euler=sl2_euler(r),
    )
    return report.assert_integral()

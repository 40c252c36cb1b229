"""
SL3 and PGL3 character varieties of the free group F_r.

The reducible locus R^red of SL3^r splits into four families by eigenvalue
pattern; every fine stratum is (parameter count) x e(PGL3)/e(stabilizer),
or an equivariant product when a Weyl group permutes eigenvalues. Family
sums are checked against their closed forms, and the assembled e(M) against
the six-term main formula.

PGL3 = SL3/mu_3 reuses the same pipelines with the central parameter count
s = 3^r replaced by 1 (the "bar" strata).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import EulerMismatch
from .grpvar import (
    E_GL2,
    E_PGL3,
    E_SL2,
    E_SL3,
    EulerCharacteristics,
    StrataReport,
    StratumEntry,
    expect_equal,
    validate_rank,
)
from .qpoly import Q, QPoly, assert_integral, eval_int, exact_div
from .repring import (
    PGL3_MOD_D_CLASS,
    TORUS_CLASS,
    Sigma3Class,
    Z2Class,
    dim,
    equivariant_torus_power,
    invariant_part,
    restrict_to_z2,
    sigma3_mul,
    sigma3_pow,
    z2_invariant_part,
)
from .sl2 import pgl2_r_irr, sl2_m_irr, sl2_r_irr

P = Q**2 + Q + 1

# stabilizer E-polynomials (modulo the centre)
H_BOREL = (Q - 1) ** 2 * Q**3
H_GL2 = E_GL2
H_PARABOLIC = E_GL2 * Q**2
H_TORUS_C2 = (Q - 1) ** 2 * Q**2
H_TORUS_C = (Q - 1) ** 2 * Q

# PGL3/H33 = P^2 x P^2 minus the diagonal, with the factor swap
PGL3_MOD_H33_CLASS = Z2Class(Q**4 + Q**3 + Q**2, Q**3 + Q**2 + Q)


def _fibre(stabilizer: QPoly) -> QPoly:
    return exact_div(E_PGL3, stabilizer)


def _central(r: int, bar: bool) -> int:
    # number of tuples of scalar matrices: mu_3^r in SL3, one point in PGL3
    return 1 if bar else 3**r


def _prefix(bar: bool) -> str:
    return "bar" if bar else ""


def _entries(bar: bool, rows) -> tuple[StratumEntry, ...]:
    return tuple(StratumEntry(_prefix(bar) + sid, desc, poly) for sid, desc, poly in rows)


# ---------- Closed forms ----------
def r1_printed(r: int, s: int) -> QPoly:
    return s * (1 + P * (Q ** (3 * r + 1) + Q ** (3 * r) - 2 * Q ** (2 * r + 1) + Q - 1))


def r2_printed(r: int, s: int) -> QPoly:
    return (
        ((Q - 1) ** r - s)
        * P
        * (3 * Q ** (3 * r + 1) + 3 * Q ** (3 * r) - 2 * Q ** (2 * r + 2) - 4 * Q ** (2 * r + 1) + Q**3)
    )


def r3_printed(r: int, s: int) -> QPoly:
    t1 = (Q - 1) ** r
    t2 = (Q - 1) ** (2 * r)
    sq = (Q**2 - 1) ** r
    pr = P**r
    sixth = Fraction(1, 6)
    return (
        (2 * s - 3 * t1 + t2) * (Q + 1) * P * (Q**r - Q) * (Q**2 + Q ** (2 * r) - Q ** (r + 1))
        + (2 * s - 2 * t1 + t2 - sq) * Q * P * (Q**r - Q) * (Q**r - Q**2)
        + (2 * s - 4 * t1 + t2 + sq) * Q**2 * P * (Q**r - 1) * (Q**r - Q)
        + sixth * Q**3 * (t2 - 3 * sq + 2 * pr + 2 * Q * (Q + 1) * (3 * s - 3 * t1 + t2 - pr))
        + sixth * Q**6 * (-6 * t1 + t2 + 3 * sq + 2 * pr)
    )


def r_red_printed(r: int) -> QPoly:
    third = Fraction(1, 3)
    return (
        third * P**r * (Q - 1) ** 2 * Q**3 * (Q + 1)
        + P * (2 * Q ** (2 * r) - Q**2) * (Q - 1) ** (2 * r) * Q**r * (Q + 1) ** r
        - third * (Q - 1) ** (2 * r) * (Q + 1) * P * (3 * Q ** (3 * r) - 3 * Q ** (r + 2) + Q**3)
    )


def m1_printed(r: int) -> QPoly:
    return Fraction(1, 2) * (Q**2 - 1) ** r + Fraction(1, 6) * (Q - 1) ** (2 * r) + Fraction(1, 3) * P**r


@lru_cache(maxsize=None)
def theorem_main(r: int) -> QPoly:
    """Closed form of e(M) for the SL3 character variety of F_r."""
    validate_rank(r)
    k = r - 1
    return assert_integral(
        E_SL3**k
        + (Q - 1) ** (2 * k) * (Q ** (3 * k) - Q**r)
        + Fraction(1, 6) * (Q - 1) ** (2 * k) * Q * (Q + 1)
        + Fraction(1, 2) * (Q**2 - 1) ** k * Q * (Q - 1)
        + Fraction(1, 3) * P**k * Q * (Q + 1)
        - (Q - 1) ** k * Q**k * (Q**2 - 1) ** k * (2 * Q ** (2 * k) - Q)
    )


# ---------- R0: an irreducible rank-2 piece ----------
@lru_cache(maxsize=None)
def _family_r0(r: int, bar: bool) -> tuple[StratumEntry, ...]:
    validate_rank(r)
    r2irr = sl2_r_irr(r)
    r01 = (Q - 1) ** r * Q ** (2 * r) * r2irr * _fibre(H_PARABOLIC)
    cap = (Q - 1) ** r * r2irr * _fibre(H_GL2)
    return _entries(
        bar,
        [
            ("R01", "invariant line, irreducible rank-2 quotient", r01),
            ("R02", "invariant plane, irreducible rank-2 restriction", r01),
            ("R01capR02", "line plus complementary plane, irreducible rank-2 block", cap),
            ("R0", "reducible with an irreducible rank-2 piece", 2 * r01 - cap),
        ],
    )


# ---------- R1: all eigenvalues equal ----------
@lru_cache(maxsize=None)
def _family_r1(r: int, bar: bool) -> tuple[StratumEntry, ...]:
    validate_rank(r)
    s = _central(r, bar)
    qr = Q**r
    rows = [
        ("R11", "central tuples xi_i*I", QPoly.const(s)),
        ("R12", "xi_i*I plus one off-diagonal entry a, a != 0", s * (qr - 1) * _fibre(H_BOREL)),
        ("R13", "xi_i*I plus last column (a, b), independent", s * (qr - 1) * (qr - Q) * _fibre(H_PARABOLIC)),
        ("R14", "xi_i*I plus first row (a, b), independent", s * (qr - 1) * (qr - Q) * _fibre(H_PARABOLIC)),
        ("R15", "xi_i times unipotent upper triangular, a != 0 and c != 0", s * (qr - 1) ** 2 * qr * _fibre(H_BOREL)),
    ]
    total = sum((p for _, _, p in rows), QPoly())
    total = expect_equal(_prefix(bar) + "R1", total, r1_printed(r, s))
    return _entries(bar, rows + [("R1", "eigenvalues (xi_i, xi_i, xi_i)", total)])


# ---------- R2: eigenvalues (l, l, m) ----------
@lru_cache(maxsize=None)
def _family_r2(r: int, bar: bool) -> tuple[StratumEntry, ...]:
    validate_rank(r)
    s = _central(r, bar)
    base = (Q - 1) ** r - s
    qr = Q**r
    # (id, shape, count of off-diagonal data, stabilizer)
    shapes = [
        ("R21", "diag(l, l, m)", QPoly.const(1), H_GL2),
        ("R22", "l-block with a != 0 over m", (qr - 1) * Q ** (2 * r), H_BOREL),
        ("R23", "diag(l, l, m) with a in the (2,3) slot", qr - Q, H_TORUS_C2),
        ("R24", "diag(l, l, m) with independent (a, b) in the last column", (qr - Q) * (qr - Q**2), H_PARABOLIC),
        ("R25", "m over an l-block, a generic and c != 0", (qr - 1) * (qr - Q) * qr, H_BOREL),
        ("R26", "m over an l-block, b generic and c != 0", (qr - 1) * (qr - Q), H_TORUS_C2),
        ("R27", "diag(m, l, l) with a in the (1,2) slot", qr - Q, H_TORUS_C2),
        ("R28", "diag(m, l, l) with independent (a, b) in the first row", (qr - Q) * (qr - Q**2), H_PARABOLIC),
        ("R29", "l, m, l upper triangular, a and c generic", (qr - Q) ** 2 * qr, H_BOREL),
    ]
    rows = [(sid, desc, base * count * _fibre(stab)) for sid, desc, count, stab in shapes]
    total = sum((p for _, _, p in rows), QPoly())
    total = expect_equal(_prefix(bar) + "R2", total, r2_printed(r, s))
    return _entries(bar, rows + [("R2", "eigenvalues (l_i, l_i, l_i^-2), not all central", total)])


# ---------- R3: distinct eigenvalue vectors ----------
def eigenvalue_base_class(r: int, bar: bool = False) -> Sigma3Class:
    """
    Sigma3 class of B_r, the triples of eigenvalue vectors (l, m, g) that are
    pairwise different as vectors: the torus power minus C_r, where two of
    the three vectors coincide.
    """
    s = _central(r, bar)
    t1 = (Q - 1) ** r
    repeated = Sigma3Class(t1, QPoly(), t1 - s)
    return equivariant_torus_power(r) - repeated


@lru_cache(maxsize=None)
def _family_r3(r: int, bar: bool) -> tuple[StratumEntry, ...]:
    validate_rank(r)
    s = _central(r, bar)
    b_class = eigenvalue_base_class(r, bar)
    e_b = expect_equal(
        _prefix(bar) + "B_r",
        dim(b_class),
        (Q - 1) ** (2 * r) - 3 * (Q - 1) ** r + 2 * s,
    )
    qr = Q**r
    # (C^r - C)^2 with the two factors swapped
    offdiag = Z2Class(Q ** (2 * r) - Q ** (r + 1), Q**2 - Q ** (r + 1))
    r33 = z2_invariant_part(restrict_to_z2(b_class) * offdiag * PGL3_MOD_H33_CLASS)
    rows = [
        ("R31", "diagonalizable, pairwise distinct eigenvalue vectors", invariant_part(sigma3_mul(b_class, PGL3_MOD_D_CLASS))),
        ("R32", "diag(l) plus a 2x2 block (m, a; 0, g), a generic", e_b * (qr - Q) * _fibre(H_TORUS_C)),
        ("R33", "upper triangular, last column (a, b) generic", r33),
        # same count as R33 with rows and columns exchanged
        ("R34", "upper triangular, first row (a, b) generic", r33),
        ("R35", "full upper triangular, a and c generic", e_b * (qr - Q) ** 2 * qr * _fibre(H_BOREL)),
    ]
    total = sum((p for _, _, p in rows), QPoly())
    total = expect_equal(_prefix(bar) + "R3", total, r3_printed(r, s))
    return _entries(bar, rows + [("R3", "eigenvalue vectors pairwise distinct", total)])


# ---------- Public SL3 families ----------
def sl3_r0(r: int) -> tuple[StratumEntry, ...]:
    return _family_r0(r, False)


def sl3_r1(r: int) -> tuple[StratumEntry, ...]:
    return _family_r1(r, False)


def sl3_r2(r: int) -> tuple[StratumEntry, ...]:
    return _family_r2(r, False)


def sl3_r3(r: int) -> tuple[StratumEntry, ...]:
    return _family_r3(r, False)


def _family_total(entries: tuple[StratumEntry, ...]) -> QPoly:
    return entries[-1].epoly


@lru_cache(maxsize=None)
def _r_red(r: int, bar: bool) -> QPoly:
    families = (_family_r0(r, bar), _family_r1(r, bar), _family_r2(r, bar), _family_r3(r, bar))
    total = sum((_family_total(f) for f in families), QPoly())
    return assert_integral(expect_equal(_prefix(bar) + "Rred", total, r_red_printed(r)))


def sl3_r_red(r: int) -> QPoly:
    return _r_red(r, False)


def sl3_r_irr(r: int) -> QPoly:
    return E_SL3**r - sl3_r_red(r)


@lru_cache(maxsize=None)
def sl3_m_irr(r: int) -> QPoly:
    # PGL3 acts freely on irreducibles
    return exact_div(sl3_r_irr(r), E_SL3)


@lru_cache(maxsize=None)
def sl3_m0(r: int) -> QPoly:
    validate_rank(r)
    return (Q - 1) ** r * sl2_m_irr(r)


@lru_cache(maxsize=None)
def sl3_m1(r: int) -> QPoly:
    """(C*^2)^r / Sigma3, equivalently the abelian character variety."""
    validate_rank(r)
    via_closed_form = invariant_part(equivariant_torus_power(r))
    via_product = invariant_part(sigma3_pow(TORUS_CLASS, r))
    expect_equal("M1", via_closed_form, via_product)
    return assert_integral(expect_equal("M1", via_closed_form, m1_printed(r)))


def sl3_m_red(r: int) -> QPoly:
    return sl3_m0(r) + sl3_m1(r)


@lru_cache(maxsize=None)
def sl3_m(r: int) -> QPoly:
    total = sl3_m_irr(r) + sl3_m_red(r)
    return assert_integral(expect_equal("M", total, theorem_main(r)))


# ---------- PGL3 ----------
def pgl3_r0(r: int) -> tuple[StratumEntry, ...]:
    return _family_r0(r, True)


def pgl3_r1(r: int) -> tuple[StratumEntry, ...]:
    fam = _family_r1(r, True)
    expect_equal("barR1", _family_total(fam), exact_div(_family_total(sl3_r1(r)), QPoly.const(3**r)))
    return fam


def pgl3_r2(r: int) -> tuple[StratumEntry, ...]:
    return _family_r2(r, True)


def pgl3_r3(r: int) -> tuple[StratumEntry, ...]:
    return _family_r3(r, True)


def pgl3_r_red(r: int) -> QPoly:
    pgl3_r1(r)
    return expect_equal("barRred", _r_red(r, True), sl3_r_red(r))


@lru_cache(maxsize=None)
def pgl3_m_irr(r: int) -> QPoly:
    return exact_div(E_PGL3**r - pgl3_r_red(r), E_PGL3)


@lru_cache(maxsize=None)
def pgl3_m0(r: int) -> QPoly:
    validate_rank(r)
    return (Q - 1) ** r * exact_div(pgl2_r_irr(r), E_SL2)


@lru_cache(maxsize=None)
def pgl3_m(r: int) -> QPoly:
    # (C*^2)^r / mu_3^r is again a rank-2 torus power, so M1 is unchanged
    total = pgl3_m_irr(r) + pgl3_m0(r) + sl3_m1(r)
    return assert_integral(expect_equal("barM", total, sl3_m(r)))


# ---------- Euler characteristics ----------
def euler_characteristics(r: int) -> EulerCharacteristics:
    validate_rank(r)
    if r < 2:
        raise ValueError("Euler characteristic formulas need r >= 2")
    chi = eval_int(sl3_m(r), 1)
    expected = 2 * 3 ** (r - 2)
    if chi != expected:
        raise EulerMismatch("chi_M", chi, expected)
    abelian = eval_int(sl3_m1(r), 1)
    claimed = 3 ** (r - 2)
    discrepancy = abelian != claimed
    note = None
    if discrepancy:
        note = (
            f"e(M1) at q=1 gives {abelian} = 3^(r-1), while the closed-form claim "
            f"for the abelian locus is 3^(r-2) = {claimed}; both reported, neither chosen"
        )
    return EulerCharacteristics(
        chi_M=chi,
        chi_M_smooth=eval_int(sl3_m_irr(r), 1),
        chi_M_singular=eval_int(sl3_m_red(r), 1),
        chi_M_abelian=abelian,
        chi_M_abelian_claimed=claimed,
        abelian_discrepancy=discrepancy,
        note=note,
    )


# ---------- Reports ----------
def _aggregates(r: int, r_red: QPoly, m_irr: QPoly, m0: QPoly, m1: QPoly, m: QPoly) -> tuple[StratumEntry, ...]:
    # locus labels only make sense once r >= 2
    smooth = " (smooth locus)" if r >= 2 else ""
    singular = " (singular locus)" if r >= 2 else ""
    abelian = " (abelian locus)" if r >= 2 else ""
    return (
        StratumEntry("Rred", "reducible representations", r_red),
        StratumEntry("Rirr", "irreducible representations", E_SL3**r - r_red),
        StratumEntry("Mirr", "irreducible character variety" + smooth, m_irr),
        StratumEntry("M0", "semisimple 1+2 split, irreducible rank-2 part", m0),
        StratumEntry("M1", "semisimple, three rank-1 pieces" + abelian, m1),
        StratumEntry("Mred", "reducible character variety" + singular, m0 + m1),
        StratumEntry("M", "character variety", m),
    )


def sl3_strata(r: int) -> StrataReport:
    validate_rank(r)
    entries = sl3_r0(r) + sl3_r1(r) + sl3_r2(r) + sl3_r3(r)
    report = StrataReport(
        group="SL3",
        r=r,
        entries=entries,
        aggregates=_aggregates(r, sl3_r_red(r), sl3_m_irr(r), sl3_m0(r), sl3_m1(r), sl3_m(r)),
        euler=euler_characteristics(r) if r >= 2 else None,
    )
    return report.assert_integral()


def pgl3_strata(r: int) -> StrataReport:
    validate_rank(r)
    entries = pgl3_r0(r) + pgl3_r1(r) + pgl3_r2(r) + pgl3_r3(r)
    report = StrataReport(
        group="PGL3",
        r=r,
        entries=entries,
        aggregates=_aggregates(r, pgl3_r_red(r), pgl3_m_irr(r), pgl3_m0(r), sl3_m1(r), pgl3_m(r)),
        euler=euler_characteristics(r) if r >= 2 else None,
    )
    return report.assert_integral()

from fractions import Fraction

import pytest
import sympy

from charvar_epoly.errors import RankGuard
from charvar_epoly.grpvar import E_SL2
from charvar_epoly.qpoly import Q, QPoly, eval_int
from charvar_epoly.sl2 import (
    pgl2_m,
    pgl2_r_red,
    pgl2_red_strata,
    pgl2_strata,
    sl2_euler,
    sl2_m,
    sl2_m_irr,
    sl2_m_red,
    sl2_r_irr,
    sl2_r_red,
    sl2_red_strata,
    sl2_strata,
)

q = sympy.Symbol("q")


def from_sympy(expr) -> QPoly:
    poly = sympy.Poly(sympy.expand(expr), q)
    return QPoly({m[0]: Fraction(int(c.p), int(c.q)) for m, c in zip(poly.monoms(), poly.coeffs())})


@pytest.mark.parametrize("r", range(1, 21))
def test_m_closed_form(r):
    half = sympy.Rational(1, 2)
    closed = (q**3 - q) ** (r - 1) + half * q * (q + 1) ** (r - 1) + half * q * (q - 1) ** (r - 1) - q ** (r - 1) * (q - 1) ** (r - 1)
    m = sl2_m(r)
    assert m == from_sympy(closed)
    assert m.is_integral()


def test_small_ranks():
    assert sl2_m(1) == Q
    assert sl2_m(2) == Q**3
    assert sl2_m_red(1) == Q
    assert sl2_r_red(1) == E_SL2


def test_values_over_f3():
    assert eval_int(sl2_r_red(2), 3) == 168
    assert eval_int(sl2_m_irr(2), 3) == 17
    assert eval_int(sl2_r_irr(2), 3) == 24**2 - 168


def test_reducible_strata():
    r = 3
    strata = {e.id: e.epoly for e in sl2_red_strata(r)}
    assert list(strata) == ["R0", "R1", "R2", "R3"]
    assert strata["R0"] == 8
    assert strata["R2"] == 8 * (Q**3 - 1) * (Q + 1)
    assert sum(strata.values(), QPoly()) == sl2_r_red(r)


def test_pgl2_strata():
    strata = {e.id: e.epoly for e in pgl2_red_strata(3)}
    assert list(strata) == ["barR0", "barR1", "barR2", "barR3"]
    assert strata["barR0"] == 1
    assert strata["barR2"] * 8 == sl2_red_strata(3)[2].epoly


@pytest.mark.parametrize("r", range(1, 21))
def test_pgl2_matches_sl2(r):
    assert pgl2_m(r) == sl2_m(r)
    assert pgl2_r_red(r) == sl2_r_red(r)


@pytest.mark.parametrize("r", range(1, 21))
def test_consistency_chain(r):
    assert E_SL2**r == sl2_r_red(r) + E_SL2 * sl2_m_irr(r)


@pytest.mark.parametrize("r, chi", [(1, 1), (2, 1), (3, 2), (4, 4), (6, 16)])
def test_euler(r, chi):
    euler = sl2_euler(r)
    assert euler.chi_M == chi
    assert euler.chi_M_smooth + euler.chi_M_singular == chi
    assert euler.chi_M_abelian is None


def test_reports():
    report = sl2_strata(2)
    assert report.group == "SL2"
    assert report.ids() == ["R0", "R1", "R2", "R3", "Rred", "Rirr", "Mirr", "Mred", "M"]
    assert report.entry("M") == Q**3
    assert all(report.flags.values())
    bar = pgl2_strata(2)
    assert bar.ids()[:4] == ["barR0", "barR1", "barR2", "barR3"]
    assert bar.entry("M") == report.entry("M")
    assert report.to_dict()["euler"]["chi_M"] == 1


def test_rank_guard():
    with pytest.raises(RankGuard):
        sl2_m(0)
    with pytest.raises(RankGuard):
        sl2_strata(65)

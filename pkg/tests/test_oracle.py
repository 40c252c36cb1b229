import itertools
import time

import pytest

from charvar_epoly import oracle
from charvar_epoly.errors import GuardExceeded, UnsupportedField
from charvar_epoly.ffgroups import FqMatrix, enumerate_sl, field_make, field_of_order, random_sl
from charvar_epoly.grpvar import E_SL3
from charvar_epoly.oracle import (
    ALL_SCALAR_TUPLES,
    CSV_HEADER,
    REDUCIBLE_TUPLES,
    TOTAL_TUPLES,
    CountPredicate,
    PredicateKind,
    classify_sl3,
    conjugation_predicates,
    count_reducible,
    count_sl2,
    count_sl3,
    is_reducible,
    partitions,
    reference_poly,
    symbolic_suite,
    verify_suite,
)
from charvar_epoly.qpoly import eval_int
from charvar_epoly.sl3 import sl3_r_red

X_AT_4 = {"X0": 3, "X1": 945, "X2": 11340, "X3": 0, "X4": 0, "X5": 48192}


def conjugate(g: FqMatrix, A: FqMatrix) -> FqMatrix:
    return g @ A @ g.inverse()


# ---------- SL2 ----------
@pytest.mark.parametrize(
    "r, predicate, count",
    [
        (1, REDUCIBLE_TUPLES, 24),
        (2, REDUCIBLE_TUPLES, 168),
        (2, ALL_SCALAR_TUPLES, 4),
        (2, TOTAL_TUPLES, 576),
        (3, ALL_SCALAR_TUPLES, 8),
    ],
)
def test_sl2_over_f3(r, predicate, count):
    report = count_sl2(r, field_make(3), predicate)
    assert report.raw_count == count
    assert report.matched
    assert report.diagnostic is None


def test_sl2_reducible_pairs_by_brute_force():
    F = field_make(3)
    group = list(enumerate_sl(2, F))
    assert sum(is_reducible([A, B]) for A, B in itertools.product(group, repeat=2)) == 168


@pytest.mark.parametrize("r", [1, 2, 3])
def test_sl2_reducible_f3_all_ranks(r):
    assert count_sl2(r, field_make(3), REDUCIBLE_TUPLES).matched


@pytest.mark.parametrize("r", [1, 2])
def test_sl2_reducible_f5(r):
    report = count_sl2(r, field_make(5), REDUCIBLE_TUPLES)
    assert report.matched


@pytest.mark.slow
@pytest.mark.parametrize("q", [5, 7])
def test_sl2_reducible_three_generators(q):
    assert count_sl2(3, field_make(q), REDUCIBLE_TUPLES).matched


def test_sl2_preconditions():
    with pytest.raises(UnsupportedField):
        count_sl2(1, field_make(2, 2), TOTAL_TUPLES)
    with pytest.raises(GuardExceeded):
        count_sl2(4, field_make(3), TOTAL_TUPLES)
    with pytest.raises(GuardExceeded):
        count_sl2(1, field_make(3, 2), TOTAL_TUPLES)
    with pytest.raises(ValueError):
        count_sl2(1, field_make(3), conjugation_predicates()[0])


def test_parallel_matches_serial():
    F = field_make(3)
    assert count_reducible(2, F, 2, jobs=1) == count_reducible(2, F, 2, jobs=3) == 168


# ---------- SL3 ----------
def test_sl3_classification_over_f4():
    F = field_make(2, 2)
    counts = classify_sl3(F)
    assert counts == X_AT_4
    assert sum(counts.values()) == eval_int(E_SL3, 4)
    for predicate in conjugation_predicates():
        report = count_sl3(1, F, predicate)
        assert report.matched, report.to_dict()
    assert count_sl3(1, F, conjugation_predicates()[0]).raw_count == 3
    assert count_sl3(1, F, conjugation_predicates()[3]).raw_count == 0


def test_sl3_classification_parallel(monkeypatch):
    F = field_make(2, 2)
    monkeypatch.setattr(oracle, "_CLASSIFY_CACHE", {})
    assert classify_sl3(F, jobs=2) == X_AT_4


def test_sl3_totals_over_f4():
    F = field_make(2, 2)
    assert count_sl3(1, F, TOTAL_TUPLES).raw_count == 60480
    assert count_sl3(2, F, TOTAL_TUPLES).raw_count == 60480**2
    assert count_sl3(1, F, ALL_SCALAR_TUPLES).raw_count == 3
    assert count_sl3(2, F, ALL_SCALAR_TUPLES).matched


def test_sl3_preconditions():
    with pytest.raises(UnsupportedField):
        count_sl3(1, field_make(3), TOTAL_TUPLES)
    with pytest.raises(UnsupportedField):
        count_sl3(1, field_make(5), TOTAL_TUPLES)
    with pytest.raises(GuardExceeded):
        count_sl3(3, field_make(2, 2), TOTAL_TUPLES)
    with pytest.raises(GuardExceeded):
        count_sl3(1, field_make(7), REDUCIBLE_TUPLES)


def test_reducibility_is_conjugation_invariant_and_symmetric(rng):
    F = field_make(2, 2)
    upper = [FqMatrix.from_rows(F, [[1, a, b], [0, 1, c], [0, 0, 1]]) for a, b, c in [(1, 2, 3), (0, 1, 2), (3, 0, 1)]]
    tuples = [[random_sl(3, F, rng), random_sl(3, F, rng)] for _ in range(40)]
    tuples += [[upper[0], upper[1]], [upper[1], upper[2]], [random_sl(3, F, rng), FqMatrix.identity(F, 3)]]
    seen = set()
    for tup in tuples:
        verdict = is_reducible(tup)
        seen.add(verdict)
        g = random_sl(3, F, rng)
        assert is_reducible([conjugate(g, A) for A in tup]) == verdict
        assert is_reducible(list(reversed(tup))) == verdict
    assert seen == {True, False}


@pytest.mark.slow
def test_sl3_reducible_one_generator():
    assert count_sl3(1, field_make(2, 2), REDUCIBLE_TUPLES).raw_count == 60480


@pytest.mark.slow
def test_sl3_classification_over_f7():
    F = field_make(7)
    for predicate in conjugation_predicates():
        assert count_sl3(1, F, predicate).matched


@pytest.mark.slow
def test_sl3_reducible_pairs_over_f4():
    F = field_make(2, 2)
    expected = eval_int(sl3_r_red(2), 4)
    assert expected == 305061120
    assert count_reducible(3, F, 2, jobs=1) == expected
    assert count_reducible(3, F, 2, jobs=4) == expected


# ---------- Reports and suites ----------
def test_predicates():
    with pytest.raises(ValueError):
        CountPredicate(PredicateKind.CONJUGATION)
    with pytest.raises(ValueError):
        CountPredicate(PredicateKind.TOTAL, "X0")
    assert str(conjugation_predicates()[5]) == "ConjStratumClassification:X5"
    with pytest.raises(ValueError):
        reference_poly(2, 1, conjugation_predicates()[0])


def test_report_serialization():
    report = count_sl2(2, field_make(3), REDUCIBLE_TUPLES)
    d = report.to_dict()
    assert d["kind"] == "count"
    assert (d["count"], d["expected"], d["matched"]) == (168, 168, True)
    row = report.csv_row()
    assert len(row) == len(CSV_HEADER)
    assert row[:7] == ["2", "3", "2", "ReducibleTuples", "168", "168", "true"]


def test_mismatch_diagnostic():
    F = field_make(3)
    report = oracle._report(2, F, 2, REDUCIBLE_TUPLES, 167, time.perf_counter())
    assert not report.matched
    assert report.diagnostic["difference"] == -1
    witness = report.diagnostic["witness"]
    assert witness["counted"] is True and witness["recomputed"] is True
    assert len(witness["tuple"]) == 2


def test_partitions():
    assert partitions(10, 1) == [(0, 2), (2, 5), (5, 7), (7, 10)]
    for total, jobs in [(64, 3), (5, 8), (1, 4)]:
        parts = partitions(total, jobs)
        assert parts[0][0] == 0 and parts[-1][1] == total
        assert all(a < b == c for (a, b), (c, _) in zip(parts, parts[1:]))
    assert partitions(0, 2) == []


def test_verify_suite_smoke():
    reports = verify_suite("smoke")
    assert len(reports) == 6
    assert all(r.matched for r in reports)
    with pytest.raises(KeyError):
        verify_suite("nope")


def test_symbolic_suite():
    checks = symbolic_suite(3)
    assert all(c.passed for c in checks), [c for c in checks if not c.passed]
    names = {c.name for c in checks}
    assert {"main_formula", "pgl3_equals_sl3", "conjugation_strata_sum", "sl3_euler"} <= names
    euler = [c for c in checks if c.name == "sl3_euler"]
    assert [c.r for c in euler] == [2, 3]
    assert all("3^(r-2)" in c.detail for c in euler)


def test_field_of_order_dispatch():
    assert reference_poly(3, 1, REDUCIBLE_TUPLES) == E_SL3
    assert field_of_order(4) == field_make(2, 2)


def test_tuple_totals_are_powers_of_one_group_scan():
    F = field_make(3)
    assert oracle.group_counts(2, F) == (24, 2)
    assert count_sl2(3, F, TOTAL_TUPLES).raw_count == 24**3
    assert count_sl2(3, F, ALL_SCALAR_TUPLES).raw_count == 2**3

"""
Brute-force point counts over finite fields, compared with E-polynomials.

A variety whose number of F_q-points is a polynomial in q has that
polynomial as its E-polynomial, so each count of a subset of SL(n, F_q)^r
is checked against the matching E-polynomial evaluated at q.

Field restrictions are hard preconditions:
- n = 2 needs q odd; in characteristic 2 the scalars +1 and -1 coincide
  and the central strata collapse.
- n = 3 needs q = 1 mod 3 so the cube roots of unity lie in F_q; otherwise
  #{l : l^3 != 1} = q - 1 - gcd(3, q - 1) and the strata are not
  polynomial-count, so a mismatch would mean nothing.
"""

from __future__ import annotations

import itertools
import logging
import multiprocessing as mp
import sys
import time
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache, reduce
from typing import Callable, Sequence

import numpy as np
from tqdm import tqdm

from .config import MAX_EIGENLINE_ELEMENTS, RUNTIME_CFG, effective_level
from .errors import GuardExceeded, UnsupportedField, VerificationError
from .ffgroups import (
    EigenlineSet,
    FieldSpec,
    FqMatrix,
    eigenlines,
    enumerate_sl,
    field_make,
    field_of_order,
    np_tables,
    poly_roots,
    sl_batches,
    sl_prefix_count,
    splitting_extension,
)
from .grpvar import (
    E_SL2,
    E_SL3,
    SCHEMA_VERSION,
    conjugation_stratum_names,
    sl3_conjugation_strata,
    sl3_conjugation_sum_check,
    validate_rank,
)
from .logs import progress_enabled
from .qpoly import Q, QPoly, eval_int
from .sl2 import pgl2_m, pgl2_r_red, sl2_m, sl2_m_irr, sl2_r_red, sl2_strata
from .sl3 import euler_characteristics, pgl3_m, pgl3_r_red, sl3_m, sl3_m_irr, sl3_r_red, sl3_strata, theorem_main

log = logging.getLogger(__name__)

SL2_FIELDS = (3, 5, 7)
SL2_MAX_RANK = 3
SL3_ENVELOPE = {(1, 4), (1, 7), (2, 4)}

CSV_HEADER = ("n", "q", "r", "predicate", "count", "expected", "match", "seconds")


# ---------- Predicates ----------
class PredicateKind(str, Enum):
    TOTAL = "TotalTuples"
    REDUCIBLE = "ReducibleTuples"
    SCALAR = "AllScalarTuples"
    CONJUGATION = "ConjStratumClassification"


PREDICATE_ALIASES = {
    "total": PredicateKind.TOTAL,
    "reducible": PredicateKind.REDUCIBLE,
    "scalar": PredicateKind.SCALAR,
    "conjugation": PredicateKind.CONJUGATION,
}


@dataclass(frozen=True)
class CountPredicate:
    kind: PredicateKind
    stratum: str | None = None

    def __post_init__(self):
        ids = [sid for sid, _ in conjugation_stratum_names()]
        if self.kind is PredicateKind.CONJUGATION and self.stratum not in ids:
            raise ValueError(f"conjugation predicate needs a stratum id in {ids}, got {self.stratum!r}")
        if self.kind is not PredicateKind.CONJUGATION and self.stratum is not None:
            raise ValueError(f"{self.kind.value} takes no stratum")

    def __str__(self) -> str:
        return self.kind.value if self.stratum is None else f"{self.kind.value}:{self.stratum}"


TOTAL_TUPLES = CountPredicate(PredicateKind.TOTAL)
REDUCIBLE_TUPLES = CountPredicate(PredicateKind.REDUCIBLE)
ALL_SCALAR_TUPLES = CountPredicate(PredicateKind.SCALAR)


def conjugation_predicates() -> list[CountPredicate]:
    return [CountPredicate(PredicateKind.CONJUGATION, sid) for sid, _ in conjugation_stratum_names()]


# ---------- Reports ----------
@dataclass
class CountReport:
    n: int
    q: int
    r: int
    predicate: CountPredicate
    raw_count: int
    poly: QPoly
    poly_at_q: int
    elapsed: float
    diagnostic: dict | None = None
    matched: bool = field(init=False)

    def __post_init__(self):
        self.matched = self.raw_count == self.poly_at_q

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "kind": "count",
            "n": self.n,
            "q": self.q,
            "r": self.r,
            "predicate": str(self.predicate),
            "count": self.raw_count,
            "poly": str(self.poly),
            "expected": self.poly_at_q,
            "matched": self.matched,
            "seconds": round(self.elapsed, 3),
            "diagnostic": self.diagnostic,
        }

    def csv_row(self) -> list[str]:
        return [
            str(self.n),
            str(self.q),
            str(self.r),
            str(self.predicate),
            str(self.raw_count),
            str(self.poly_at_q),
            "true" if self.matched else "false",
            f"{self.elapsed:.3f}",
        ]


@dataclass(frozen=True)
class SymbolicCheck:
    name: str
    r: int | None
    passed: bool
    detail: str | None = None

    def to_dict(self) -> dict:
        return {"schema": SCHEMA_VERSION, "kind": "symbolic", "name": self.name, "r": self.r, "passed": self.passed, "detail": self.detail}


def reference_poly(n: int, r: int, predicate: CountPredicate) -> QPoly:
    kind = predicate.kind
    if n == 2:
        polys = {PredicateKind.TOTAL: E_SL2**r, PredicateKind.REDUCIBLE: sl2_r_red(r), PredicateKind.SCALAR: QPoly.const(2**r)}
        if kind not in polys:
            raise ValueError(f"{kind.value} is not defined for SL2")
        return polys[kind]
    if kind is PredicateKind.CONJUGATION:
        return {e.id: e.epoly for e in sl3_conjugation_strata()}[predicate.stratum]
    return {PredicateKind.TOTAL: E_SL3**r, PredicateKind.REDUCIBLE: sl3_r_red(r), PredicateKind.SCALAR: QPoly.const(3**r)}[kind]


# ---------- Preconditions ----------
def _check_sl2(r: int, F: FieldSpec) -> None:
    validate_rank(r)
    if F.p == 2:
        raise UnsupportedField(f"SL2 counts need odd q, got {F.q}")
    if F.q not in SL2_FIELDS or r > SL2_MAX_RANK:
        raise GuardExceeded(f"SL2 counts are supported for q in {SL2_FIELDS} and r <= {SL2_MAX_RANK}, got q={F.q}, r={r}")


def _check_sl3(r: int, F: FieldSpec) -> None:
    validate_rank(r)
    if (F.q - 1) % 3:
        raise UnsupportedField(f"SL3 counts need q = 1 mod 3, got {F.q}")
    if (r, F.q) not in SL3_ENVELOPE:
        raise GuardExceeded(f"SL3 counts are supported for (r, q) in {sorted(SL3_ENVELOPE)}, got ({r}, {F.q})")


# ---------- Partitioned execution ----------
def partitions(total: int, jobs: int) -> list[tuple[int, int]]:
    """Contiguous index ranges covering [0, total); fixed for a given jobs value."""
    chunks = max(1, min(total, 4 * jobs))
    bounds = [total * i // chunks for i in range(chunks + 1)]
    return [(a, b) for a, b in zip(bounds, bounds[1:]) if a < b]


def _run(func: Callable, tasks: list, jobs: int, desc: str, initializer=None, initargs=()) -> list:
    bar = tqdm(total=len(tasks), desc=desc, file=sys.stderr, disable=not progress_enabled(), leave=False)
    out = []
    if jobs <= 1 or len(tasks) <= 1:
        if initializer is not None:
            initializer(*initargs)
        for t in tasks:
            out.append(func(t))
            bar.update()
    else:
        ctx = mp.get_context("fork")
        with ctx.Pool(jobs, initializer=initializer, initargs=initargs) as pool:
            for res in pool.imap(func, tasks):
                out.append(res)
                bar.update()
    bar.close()
    return out


# ---------- Whole-group scans ----------
def _group_range(task: tuple) -> tuple[int, int]:
    n, p, k, start, stop = task
    F = field_make(p, k)
    total = scalar = 0
    for batch in sl_batches(n, F, start, stop):
        total += len(batch)
        flat = batch.reshape(len(batch), n * n)
        diag = flat[:, :: n + 1]
        off = np.delete(flat, np.arange(0, n * n, n + 1), axis=1)
        scalar += int(np.count_nonzero(~off.any(axis=1) & (diag == diag[:, :1]).all(axis=1)))
    return total, scalar


_GROUP_CACHE: dict[tuple[int, FieldSpec], tuple[int, int]] = {}


def group_counts(n: int, F: FieldSpec, jobs: int = 1) -> tuple[int, int]:
    """
    (|SL(n, F_q)|, number of scalar matrices in it), by enumerating the
    group once. TotalTuples and AllScalarTuples for r > 1 are the r-th powers
    of these two numbers, not an enumeration of tuples.
    """
    key = (n, F)
    if key not in _GROUP_CACHE:
        tasks = [(n, F.p, F.k, a, b) for a, b in partitions(sl_prefix_count(n, F), jobs)]
        parts = _run(_group_range, tasks, jobs, f"SL({n},{F.q})")
        _GROUP_CACHE[key] = (sum(t for t, _ in parts), sum(s for _, s in parts))
    return _GROUP_CACHE[key]


# ---------- Conjugation classification of SL3 ----------
TRIPLE, DOUBLE, DISTINCT = 0, 1, 2


@lru_cache(maxsize=None)
def root_patterns(F: FieldSpec) -> tuple[np.ndarray, np.ndarray]:
    """
    For x^3 - s x^2 + t x - 1 indexed by (s, t): the root pattern
    (TRIPLE, DOUBLE or DISTINCT) and the repeated root when there is one.
    """
    q = F.q
    pattern = np.full((q, q), DISTINCT, dtype=np.int64)
    lam = np.zeros((q, q), dtype=np.int64)
    minus_one = F.neg(1)
    for s in range(q):
        for t in range(q):
            for root, mult in poly_roots((minus_one, t, F.neg(s), 1), F, F):
                if mult == 3:
                    pattern[s, t] = TRIPLE
                    lam[s, t] = root
                elif mult == 2:
                    pattern[s, t] = DOUBLE
                    lam[s, t] = root
    return pattern, lam


def _classify_batch(F: FieldSpec, A: np.ndarray) -> np.ndarray:
    add, mul, _, sub = np_tables(F)

    def minor(M, i, j, k, l):
        return sub[mul[M[:, i, k], M[:, j, l]], mul[M[:, i, l], M[:, j, k]]]

    s = add[add[A[:, 0, 0], A[:, 1, 1]], A[:, 2, 2]]
    t = add[add[minor(A, 0, 1, 0, 1), minor(A, 0, 2, 0, 2)], minor(A, 1, 2, 1, 2)]
    pattern, lam = root_patterns(F)
    pat = pattern[s, t]
    shift = lam[s, t]

    B = A.copy()
    for i in range(3):
        B[:, i, i] = sub[A[:, i, i], shift]
    zero = ~B.reshape(len(B), 9).any(axis=1)
    rank2 = np.zeros(len(B), dtype=bool)
    for i, j in itertools.combinations(range(3), 2):
        for k, l in itertools.combinations(range(3), 2):
            rank2 |= minor(B, i, j, k, l) != 0

    triple = pat == TRIPLE
    double = pat == DOUBLE
    return np.array(
        [
            np.count_nonzero(triple & zero),
            np.count_nonzero(triple & ~zero & ~rank2),
            np.count_nonzero(triple & rank2),
            np.count_nonzero(double & ~rank2),
            np.count_nonzero(double & rank2),
            np.count_nonzero(pat == DISTINCT),
        ],
        dtype=np.int64,
    )


def _classify_range(task: tuple) -> np.ndarray:
    p, k, start, stop = task
    F = field_make(p, k)
    counts = np.zeros(6, dtype=np.int64)
    for batch in sl_batches(3, F, start, stop):
        counts += _classify_batch(F, batch)
    return counts


_CLASSIFY_CACHE: dict[FieldSpec, dict[str, int]] = {}


def classify_sl3(F: FieldSpec, jobs: int = 1) -> dict[str, int]:
    """
    Count SL(3, F_q) by conjugation stratum:
    - X0/X1/X2: one eigenvalue, A - lI of rank 0/1/2
    - X3/X4: eigenvalues (l, l, m), A - lI of rank 1/2
    - X5: three distinct eigenvalues, possibly outside F_q
    """
    if F not in _CLASSIFY_CACHE:
        tasks = [(F.p, F.k, a, b) for a, b in partitions(sl_prefix_count(3, F), jobs)]
        total = sum(_run(_classify_range, tasks, jobs, f"classify SL(3,{F.q})"), np.zeros(6, dtype=np.int64))
        ids = [sid for sid, _ in conjugation_stratum_names()]
        _CLASSIFY_CACHE[F] = {sid: int(c) for sid, c in zip(ids, total)}
    return dict(_CLASSIFY_CACHE[F])


# ---------- Reducibility ----------
def is_reducible(matrices: Sequence[FqMatrix], ext: FieldSpec | None = None) -> bool:
    """
    Common invariant line over ext, or (n = 3) common invariant plane,
    checked as a common invariant line of the transposes.
    """
    A0 = matrices[0]
    ext = ext or splitting_extension(A0.field, A0.n)
    primal = reduce(EigenlineSet.meet, (eigenlines(A, ext) for A in matrices))
    if not primal.is_empty:
        return True
    if A0.n == 2:
        return False
    dual = reduce(EigenlineSet.meet, (eigenlines(A.transpose(), ext) for A in matrices))
    return not dual.is_empty


@dataclass(frozen=True)
class LineClass:
    """Group elements sharing their eigenline set and dual eigenline set."""

    primal: EigenlineSet
    dual: EigenlineSet | None
    weight: int
    witness: FqMatrix


_CLASS_CACHE: dict[tuple[int, FieldSpec], tuple[LineClass, ...]] = {}


def line_classes(n: int, F: FieldSpec) -> tuple[LineClass, ...]:
    key = (n, F)
    if key in _CLASS_CACHE:
        return _CLASS_CACHE[key]
    order = eval_int(E_SL2 if n == 2 else E_SL3, F.q)
    if order > MAX_EIGENLINE_ELEMENTS:
        raise GuardExceeded(f"eigenline precompute for SL({n}, F_{F.q}) needs {order} elements, above {MAX_EIGENLINE_ELEMENTS}")
    ext = splitting_extension(F, n)
    log.info("precomputing eigenlines of SL(%d, F_%d) over %s", n, F.q, ext)
    weights: dict[tuple, list] = {}
    for A in tqdm(enumerate_sl(n, F), total=order, desc="eigenlines", file=sys.stderr, disable=not progress_enabled(), leave=False):
        primal = eigenlines(A, ext)
        dual = eigenlines(A.transpose(), ext) if n == 3 else None
        k = (primal.key, dual.key if dual is not None else None)
        if k in weights:
            weights[k][2] += 1
        else:
            weights[k] = [primal, dual, 1, A]
    classes = tuple(LineClass(p, d, w, A) for p, d, w, A in weights.values())
    log.info("%d elements fall into %d eigenline classes", order, len(classes))
    _CLASS_CACHE[key] = classes
    return classes


def _classes_reducible(chosen: Sequence[LineClass]) -> bool:
    if len(chosen) == 2:
        a, b = chosen
        return a.primal.meets(b.primal) or (a.dual is not None and a.dual.meets(b.dual))
    primal = reduce(EigenlineSet.meet, (c.primal for c in chosen))
    if not primal.is_empty:
        return True
    if chosen[0].dual is None:
        return False
    return not reduce(EigenlineSet.meet, (c.dual for c in chosen)).is_empty


# per-process read-only class table, set by the pool initializer
_CLASSES: tuple[LineClass, ...] = ()


def _init_classes(classes: tuple[LineClass, ...]) -> None:
    global _CLASSES
    _CLASSES = classes


def _reducible_range(task: tuple) -> int:
    r, start, stop = task
    classes = _CLASSES
    total = 0
    for i in range(start, stop):
        ci = classes[i]
        if r == 1:
            if _classes_reducible([ci, ci]):
                total += ci.weight
        elif r == 2:
            for j in range(i, len(classes)):
                cj = classes[j]
                if _classes_reducible([ci, cj]):
                    total += ci.weight * cj.weight * (1 if i == j else 2)
        else:
            for rest in itertools.product(classes, repeat=r - 1):
                if _classes_reducible([ci, *rest]):
                    w = ci.weight
                    for c in rest:
                        w *= c.weight
                    total += w
    return total


def count_reducible(n: int, F: FieldSpec, r: int, jobs: int = 1) -> int:
    classes = line_classes(n, F)
    tasks = [(r, a, b) for a, b in partitions(len(classes), jobs)]
    return sum(_run(_reducible_range, tasks, jobs, f"reducible r={r}", _init_classes, (classes,)))


def _witness(n: int, F: FieldSpec, r: int, predicate: CountPredicate, limit: int = 2000) -> dict | None:
    """
    First class tuple whose cached verdict disagrees with a from-scratch
    check; failing that, the first tuple the predicate counts.
    """
    if predicate.kind is not PredicateKind.REDUCIBLE:
        return None
    ext = splitting_extension(F, n)
    first = None
    for chosen in itertools.islice(itertools.product(line_classes(n, F), repeat=r), limit):
        cached = _classes_reducible(list(chosen) * (2 if r == 1 else 1))
        fresh = is_reducible([c.witness for c in chosen], ext)
        entry = {"tuple": [str(c.witness) for c in chosen], "counted": cached, "recomputed": fresh}
        if cached != fresh:
            return entry
        if first is None and cached:
            first = entry
    return first


# ---------- Counting ----------
def _report(n: int, F: FieldSpec, r: int, predicate: CountPredicate, count: int, started: float) -> CountReport:
    poly = reference_poly(n, r, predicate)
    report = CountReport(n, F.q, r, predicate, count, poly, eval_int(poly, F.q), time.perf_counter() - started)
    if not report.matched:
        report.diagnostic = {
            "expected": report.poly_at_q,
            "counted": count,
            "difference": count - report.poly_at_q,
            "witness": _witness(n, F, r, predicate),
        }
        log.error("SL%d q=%d r=%d %s: counted %d, expected %d", n, F.q, r, predicate, count, report.poly_at_q)
    else:
        log.info("SL%d q=%d r=%d %s: %d", n, F.q, r, predicate, count)
    return report


def _count(n: int, r: int, F: FieldSpec, predicate: CountPredicate, jobs: int) -> int:
    kind = predicate.kind
    # tuple counts of the whole group and of scalars are products of one scan
    if kind is PredicateKind.TOTAL:
        return group_counts(n, F, jobs)[0] ** r
    if kind is PredicateKind.SCALAR:
        return group_counts(n, F, jobs)[1] ** r
    if kind is PredicateKind.REDUCIBLE:
        return count_reducible(n, F, r, jobs)
    if n != 3 or r != 1:
        raise ValueError("conjugation classification is defined for SL3 with r = 1")
    return classify_sl3(F, jobs)[predicate.stratum]


def count_sl2(r: int, F: FieldSpec, predicate: CountPredicate, jobs: int = 1) -> CountReport:
    _check_sl2(r, F)
    if predicate.kind is PredicateKind.CONJUGATION:
        raise ValueError("conjugation classification is defined for SL3 only")
    started = time.perf_counter()
    return _report(2, F, r, predicate, _count(2, r, F, predicate, jobs), started)


def count_sl3(r: int, F: FieldSpec, predicate: CountPredicate, jobs: int = 1) -> CountReport:
    _check_sl3(r, F)
    started = time.perf_counter()
    return _report(3, F, r, predicate, _count(3, r, F, predicate, jobs), started)


def count(n: int, r: int, F: FieldSpec, predicate: CountPredicate, jobs: int = 1) -> CountReport:
    if n == 2:
        return count_sl2(r, F, predicate, jobs)
    if n == 3:
        return count_sl3(r, F, predicate, jobs)
    raise ValueError(f"n must be 2 or 3, got {n}")


# ---------- Suites ----------
def verify_suite(level: str, jobs: int = 1, runtime_cfg: dict = RUNTIME_CFG) -> list[CountReport]:
    """Every oracle check configured for the level, in configured order."""
    opts = effective_level(level, runtime_cfg)
    reports = []
    for check in opts["checks"]:
        F = field_of_order(int(check["q"]))
        n = int(check["n"])
        for r in check["r"]:
            for name in check["predicates"]:
                kind = PREDICATE_ALIASES[name]
                preds = conjugation_predicates() if kind is PredicateKind.CONJUGATION else [CountPredicate(kind)]
                for predicate in preds:
                    reports.append(count(n, int(r), F, predicate, jobs))
    return reports


def _check(name: str, r: int | None, fn: Callable[[], bool | str | None]) -> SymbolicCheck:
    try:
        outcome = fn()
    except VerificationError as e:
        return SymbolicCheck(name, r, False, str(e))
    if outcome is False:
        return SymbolicCheck(name, r, False, "identity does not hold")
    return SymbolicCheck(name, r, True, outcome if isinstance(outcome, str) else None)


def _sl3_euler_check(r: int) -> bool | str:
    euler = euler_characteristics(r)
    # the computed abelian value is asserted; the closed-form claim is only reported
    if euler.chi_M != 2 * 3 ** (r - 2) or euler.chi_M_abelian != 3 ** (r - 1):
        return False
    return euler.note


def symbolic_suite(max_rank: int) -> list[SymbolicCheck]:
    """Strata sums, SL = PGL equalities, the main formula and the r = 1 collapses."""
    checks = [_check("conjugation_strata_sum", None, lambda: sl3_conjugation_sum_check() == E_SL3)]
    checks.append(
        _check(
            "r1_collapse",
            1,
            lambda: sl2_m(1) == Q and sl3_m(1) == Q**2 and sl3_r_red(1) == E_SL3 and sl2_r_red(1) == E_SL2,
        )
    )
    for r in range(1, max_rank + 1):
        checks += [
            _check("sl2_strata", r, lambda r=r: sl2_strata(r) is not None),
            _check("pgl2_equals_sl2", r, lambda r=r: pgl2_m(r) == sl2_m(r) and pgl2_r_red(r) == sl2_r_red(r)),
            _check("sl3_strata", r, lambda r=r: sl3_strata(r) is not None),
            _check("pgl3_equals_sl3", r, lambda r=r: pgl3_m(r) == sl3_m(r) and pgl3_r_red(r) == sl3_r_red(r)),
            _check("main_formula", r, lambda r=r: sl3_m(r) == theorem_main(r)),
            _check(
                "consistency_chain",
                r,
                lambda r=r: E_SL2**r == sl2_r_red(r) + E_SL2 * sl2_m_irr(r)
                and E_SL3**r == sl3_r_red(r) + E_SL3 * sl3_m_irr(r),
            ),
        ]
        if r >= 2:
            checks.append(_check("sl3_euler", r, lambda r=r: _sl3_euler_check(r)))
    for c in checks:
        (log.debug if c.passed else log.error)("%s r=%s: %s", c.name, c.r, "ok" if c.passed else c.detail)
    return checks

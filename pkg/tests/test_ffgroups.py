import pytest

from charvar_epoly.errors import ExtensionTooSmall, GuardExceeded, NotASubfield, NotPrime
from charvar_epoly.ffgroups import (
    EigenlineSet,
    FqElem,
    FqMatrix,
    LineKind,
    companion,
    eigenlines,
    embed,
    enumerate_sl,
    extension,
    field_make,
    field_of_order,
    poly_roots,
    random_sl,
    sl_batches,
    sl_prefix_count,
    splitting_extension,
)
from charvar_epoly.grpvar import E_SL2, E_SL3
from charvar_epoly.qpoly import eval_int


def test_field_moduli():
    assert field_make(2, 1).modulus == (0, 1)
    assert field_make(2, 2).modulus == (1, 1, 1)
    assert field_make(3, 2).modulus == (1, 0, 1)
    assert field_make(2, 3).modulus == (1, 0, 1, 1)
    assert field_of_order(9) == field_make(3, 2)
    assert field_make(5).q == 5


@pytest.mark.parametrize("p, k", [(4, 1), (1, 1), (9, 2)])
def test_not_prime(p, k):
    with pytest.raises(NotPrime):
        field_make(p, k)


def test_field_guards():
    with pytest.raises(GuardExceeded):
        field_make(2, 13)
    with pytest.raises(GuardExceeded):
        field_make(1031, 2)
    with pytest.raises(NotPrime):
        field_of_order(6)


@pytest.mark.parametrize("q", [2, 4, 7, 9, 16, 27, 49])
def test_field_axioms(q, rng):
    F = field_of_order(q)
    for _ in range(200):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == 0
        assert F.sub(F.add(a, b), b) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, q - 1) == 1
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
        assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))


def test_elements():
    F = field_make(3, 2)
    x = FqElem(F, F.from_coeffs([0, 1]))
    one = FqElem(F, 1)
    assert x * x == -one
    assert (x + one) * (x - one) == x * x - one
    assert x / x == one
    assert x**8 == one
    assert str(FqElem(F, F.from_coeffs([1, 2]))) == "2x+1"
    assert str(FqElem(F, 0)) == "0"
    assert FqElem(F, 5).coeffs == (2, 1)
    with pytest.raises(ZeroDivisionError):
        FqElem(F, 0).inverse()


def test_embedding(rng):
    sub, sup = field_make(2, 2), field_make(2, 4)
    assert embed(FqElem(sub, 1), sub, sup) == FqElem(sup, 1)
    assert [embed(FqElem(field_make(2), v), field_make(2), sub).value for v in range(2)] == [0, 1]
    for _ in range(100):
        a, b = FqElem(sub, rng.randrange(4)), FqElem(sub, rng.randrange(4))
        assert embed(a + b, sub, sup) == embed(a, sub, sup) + embed(b, sub, sup)
        assert embed(a * b, sub, sup) == embed(a, sub, sup) * embed(b, sub, sup)
    with pytest.raises(NotASubfield):
        embed(FqElem(sub, 1), sub, field_make(2, 3))
    with pytest.raises(NotASubfield):
        embed(FqElem(sub, 1), sub, field_make(3, 2))


def test_char_poly():
    F3 = field_make(3)
    assert FqMatrix.identity(F3, 2).char_poly() == (1, 1, 1)  # (x - 1)^2 = x^2 + x + 1 over F_3
    F7 = field_make(7)
    lam, inv = 3, F7.inv(3)
    d = FqMatrix.from_rows(F7, [[lam, 0], [0, inv]])
    assert d.char_poly() == (1, F7.neg(F7.add(lam, inv)), 1)
    F4 = field_make(2, 2)
    for coeffs in [(1, 2, 3), (1, 0, 0), (3, 1, 2)]:
        assert companion(F4, coeffs).char_poly() == (*coeffs, 1)
    assert companion(F7, (1, 4)).char_poly() == (1, 4, 1)


def test_matrix_algebra(rng):
    F = field_make(2, 2)
    for _ in range(20):
        A = random_sl(3, F, rng)
        assert A.det() == 1
        assert A @ A.inverse() == FqMatrix.identity(F, 3)
        assert (A @ A).det() == 1
        assert A.transpose().transpose() == A
    assert str(FqMatrix.identity(field_make(3), 2)) == "[[1 0], [0 1]]"
    assert FqMatrix.scalar(F, 3, 2).is_scalar()
    with pytest.raises(ValueError):
        FqMatrix(F, ((1,),))


def test_poly_roots():
    F3, F9 = field_make(3), field_make(3, 2)
    assert poly_roots((1, 1, 1), F3, F3) == ((1, 2),)
    roots = poly_roots((1, 0, 1), F3, F9)
    assert len(roots) == 2 and all(m == 1 for _, m in roots)
    assert poly_roots((1, 0, 1), F3, F3) == ()


def test_eigenlines_two_by_two():
    F7 = field_make(7)
    ext = splitting_extension(F7, 2)
    assert eigenlines(FqMatrix.scalar(F7, 2, 6), ext).kind is LineKind.ALL
    d = eigenlines(FqMatrix.from_rows(F7, [[1, 0], [0, 2]]), F7)
    assert d.kind is LineKind.FINITE
    assert d.points == frozenset({(1, 0), (0, 1)})

    F3, F9 = field_make(3), field_make(3, 2)
    C = companion(F3, (1, 0))
    lines = eigenlines(C, F9)
    assert len(lines.points) == 2
    assert lines.apply_frobenius(1) == lines
    assert all(p[0] == 1 for p in lines.points)
    with pytest.raises(ExtensionTooSmall):
        eigenlines(C, F3)


def test_eigenlines_plane():
    F7 = field_make(7)
    A = FqMatrix.from_rows(F7, [[3, 0, 0], [0, 3, 0], [0, 0, 4]])
    lines = eigenlines(A, F7)
    assert lines.kind is LineKind.PLANE
    assert lines.normal == (0, 0, 1)
    assert lines.points == frozenset({(0, 0, 1)})
    assert lines.contains((1, 5, 0))
    assert not lines.contains((1, 0, 1))


def test_meet():
    F = field_make(5)
    plane_x = EigenlineSet(F, normal=(1, 0, 0))
    plane_y = EigenlineSet(F, normal=(0, 1, 0))
    assert plane_x.meet(plane_y).points == frozenset({(0, 0, 1)})
    assert plane_x.meets(plane_y)
    line = EigenlineSet(F, frozenset({(0, 1, 2)}))
    assert plane_x.meet(line).points == frozenset({(0, 1, 2)})
    assert plane_y.meet(line).is_empty
    assert not plane_y.meets(line)
    everything = EigenlineSet(F, all_lines=True)
    assert everything.meet(line) == line
    assert line.meet(everything) == line
    assert plane_x.meet(plane_x).kind is LineKind.PLANE
    assert plane_x.key != plane_y.key


def test_eigenlines_galois_stable(rng):
    F = field_make(2, 2)
    ext = splitting_extension(F, 3)
    assert ext == extension(F, 6)
    for _ in range(8):
        A = random_sl(3, F, rng)
        lines = eigenlines(A, ext)
        assert not lines.is_empty
        assert lines.apply_frobenius(F.k) == lines


def test_every_sl2_element_has_an_eigenline():
    F = field_make(3)
    ext = splitting_extension(F, 2)
    assert all(not eigenlines(A, ext).is_empty for A in enumerate_sl(2, F))


@pytest.mark.parametrize("n, q", [(2, 2), (2, 3), (2, 5), (2, 7), (3, 2), (3, 3), (3, 4)])
def test_enumeration_counts(n, q):
    F = field_of_order(q)
    expected = eval_int(E_SL2 if n == 2 else E_SL3, q)
    assert sum(len(b) for b in sl_batches(n, F)) == expected


def test_enumeration_order_and_uniqueness():
    F = field_make(3)
    rows = [A.rows for A in enumerate_sl(2, F)]
    assert len(rows) == 24
    assert rows == sorted(rows)
    assert len(set(rows)) == 24
    assert all(A.det() == 1 for A in enumerate_sl(2, F))


def test_partitioned_batches_cover_the_group():
    F = field_make(2, 2)
    total = sl_prefix_count(3, F)
    assert total == 64
    parts = [sum(len(b) for b in sl_batches(3, F, a, min(a + 10, total))) for a in range(0, total, 10)]
    assert sum(parts) == 60480


def test_enumeration_guard():
    with pytest.raises(GuardExceeded):
        next(enumerate_sl(3, field_make(17)))
    with pytest.raises(ValueError):
        next(enumerate_sl(4, field_make(2)))

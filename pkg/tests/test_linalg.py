import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from koenig import _kernels_py, linalg
from koenig.field import QQ, Fp, FieldError, PrimeField, field_from_descriptor
from koenig.linalg import CoordBasis, Echelon, nullspace, rank, rref

try:
    from koenig import _kernels as _compiled
except ImportError:  # pragma: no cover
    _compiled = None


def Q(rows):
    return [[QQ(x) for x in r] for r in rows]


def test_field_descriptors():
    assert field_from_descriptor("rational") is QQ or field_from_descriptor("rational") == QQ
    F = field_from_descriptor("prime:7")
    assert F.characteristic == 7
    assert F(3) / F(5) * F(5) == F(3)
    with pytest.raises(FieldError):
        field_from_descriptor("prime:8")
    with pytest.raises(FieldError):
        field_from_descriptor("real")


def test_prime_field_arithmetic():
    F = PrimeField(5)
    a = F(2)
    assert a * a * a * a == F(1)
    assert -a == F(3)
    assert isinstance(a, Fp) and int(F(7)) == 2
    with pytest.raises(ZeroDivisionError):
        F(1) / F(0)


def test_rref_small():
    red, piv = rref(Q([[2, 4, 0], [1, 2, 1], [0, 0, 0]]), 3, QQ)
    assert piv == [0, 2]
    assert red == Q([[1, 2, 0], [0, 0, 1]])


def test_nullspace_and_rank():
    m = Q([[1, 1, 0], [0, 1, 1]])
    ns = nullspace(m, 3, QQ)
    assert len(ns) == 1 and rank(m, 3, QQ) == 2
    v = ns[0]
    assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


def test_echelon_add_and_intersect():
    E = Echelon(Q([[1, 0, 0]]), 3, QQ)
    assert E.add(Q([[1, 1, 0]])[0])
    assert not E.add(Q([[2, 1, 0]])[0])
    assert E.dim == 2 and E == Echelon(Q([[0, 1, 0], [1, 0, 0]]), 3, QQ)
    F = Echelon(Q([[0, 1, 1], [1, 0, 0]]), 3, QQ)
    assert E.intersect(F) == Echelon(Q([[1, 0, 0]]), 3, QQ)
    assert E.sum(F).dim == 3


def test_coord_basis():
    vs = Q([[1, 1, 0], [0, 1, 1]])
    cb = CoordBasis(vs, 3, QQ)
    assert cb.coords(Q([[2, 5, 3]])[0]) == [QQ(2), QQ(3)]
    assert cb.coords(Q([[1, 0, 0]])[0]) is None
    with pytest.raises(ValueError):
        CoordBasis(Q([[1, 1], [2, 2]]), 2, QQ)


matrices = st.integers(1, 6).flatmap(
    lambda n: st.integers(1, 6).flatmap(
        lambda m: st.lists(st.lists(st.integers(-3, 3), min_size=m, max_size=m), min_size=n, max_size=n)))


@pytest.mark.skipif(_compiled is None, reason="compiled kernels not built")
@settings(max_examples=200, deadline=None)
@given(matrices, st.integers(1, 4))
def test_backends_agree_rational(m, den):
    ncols = len(m[0])
    a = [[mpq(x, den) for x in r] for r in m]
    b = [list(r) for r in a]
    pa = _kernels_py.rref_inplace(a, ncols)
    pb = _compiled.rref_inplace(b, ncols)
    assert pa == pb and a == b


@pytest.mark.skipif(_compiled is None, reason="compiled kernels not built")
@settings(max_examples=200, deadline=None)
@given(matrices, st.sampled_from([2, 3, 7, 101]))
def test_backends_agree_modp(m, p):
    ncols = len(m[0])
    a = [[x % p for x in r] for r in m]
    b = [list(r) for r in a]
    assert _kernels_py.rref_modp(a, ncols, p) == _compiled.rref_modp(b, ncols, p)
    assert a == b


@pytest.mark.skipif(_compiled is None, reason="compiled kernels not built")
def test_compiled_generic_path_for_other_objects():
    from fractions import Fraction
    rows = [[Fraction(1, 2), Fraction(1)], [Fraction(1), Fraction(2)]]
    piv = _compiled.rref_inplace(rows, 2)
    assert piv == [0] and rows == [[1, 2]]


@pytest.mark.skipif(_compiled is None, reason="compiled kernels not built")
def test_struct_mul_backends_agree():
    rows = {0: {0: [(0, mpq(1))], 1: [(1, mpq(1))]}, 1: {0: [(1, mpq(1))]}}
    xs, ys = [(0, mpq(2)), (1, mpq(3))], [(0, mpq(1)), (1, mpq(5))]
    a = _kernels_py.struct_mul(xs, ys, rows, [mpq(0)] * 2)
    b = _compiled.struct_mul(xs, ys, rows, [mpq(0)] * 2)
    assert a == b == [mpq(2), mpq(13)]


def test_backend_flag():
    assert linalg.BACKEND in ("compiled", "python")


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rref_rowspace_invariant(m):
    ncols = len(m[0])
    rows = Q(m)
    red, piv = rref(rows, ncols, QQ)
    E = Echelon(rows, ncols, QQ)
    for r in rows:
        assert r in E
    assert len(red) == len(piv) == E.dim
    for row, p in zip(red, piv):
        assert row[p] == 1

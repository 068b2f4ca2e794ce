from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quasihopf.field import (GF, QQ, Field, FieldMismatch, det, identity, invert_matrix, matmul,
                             nullspace, rank, rref, solve)

F7 = GF(7)
small = st.integers(min_value=-20, max_value=20)


def test_rationals_are_exact():
    assert QQ("1/3") + QQ("2/3") == 1
    assert QQ.fmt(QQ("-6/4")) == "-3/2"


def test_gf_arithmetic():
    a = F7(3)
    assert a * a.inverse() == F7.one
    assert F7("1/2") == F7(4)
    assert F7(2) ** 3 == F7.one
    with pytest.raises(ValueError):
        F7(Fraction(1, 7))


def test_field_mixing_is_refused():
    with pytest.raises(FieldMismatch):
        QQ(F7(1))
    with pytest.raises(FieldMismatch):
        GF(5)(F7(1))


def test_field_parse_and_json():
    assert Field.parse("Q") == QQ and Field.parse("GF:7") == F7
    assert Field.from_json(F7.to_json()) == F7
    with pytest.raises(ValueError):
        Field.parse("R")
    with pytest.raises(ValueError):
        GF(6)


def test_linear_algebra_small_cases():
    A = [[QQ(1), QQ(2)], [QQ(2), QQ(4)]]
    assert rank(A, QQ) == 1
    assert det(A, QQ) == 0
    ns = nullspace(A, QQ)
    assert len(ns) == 1 and all(sum(r[j] * ns[0][j] for j in range(2)) == 0 for r in A)
    B = [[QQ(2), QQ(1)], [QQ(1), QQ(1)]]
    assert matmul(B, invert_matrix(B, QQ)) == identity(QQ, 2)
    assert solve(B, [QQ(3), QQ(2)], QQ) == [1, 1]
    R, piv = rref(B, QQ)
    assert piv == [0, 1]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3),
       st.sampled_from([QQ, F7]))
def test_det_multiplicative(a, b, F):
    A = [[F(x) for x in r] for r in a]
    B = [[F(x) for x in r] for r in b]
    assert det(matmul(A, B), F) == det(A, F) * det(B, F)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4),
       st.sampled_from([QQ, F7]))
def test_rank_nullity(a, F):
    A = [[F(x) for x in r] for r in a]
    ns = nullspace(A, F, 4)
    assert rank(A, F) + len(ns) == 4
    for v in ns:
        assert all(sum((r[j] * v[j] for j in range(4)), F.zero) == 0 for r in A)


@settings(max_examples=80, deadline=None)
@given(small, small, small.filter(bool))
def test_gf_matches_rational_reduction(x, y, z):
    q = QQ(x) * QQ(y) / QQ(z) if z % 7 else None
    if q is not None:
        assert F7(q) == F7(x) * F7(y) / F7(z)

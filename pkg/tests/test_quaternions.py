"""Quaternion algebra arithmetic over exact fields."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hermforms.errors import InvalidScalar, SingularUnit
from hermforms.quaternions import QuaternionAlgebra
from hermforms.scalars import QuadraticField, RationalField, rat

QQ = RationalField()
H = QuaternionAlgebra(QQ, -1, -1)  # Hamilton quaternions


def test_parameter_validation():
    with pytest.raises(InvalidScalar):
        QuaternionAlgebra(QQ, 0, 1)


def test_multiplication_table_hamilton():
    one, i, j, k = H.basis()
    assert i * i == -1 and j * j == -1 and k * k == -1
    assert i * j == k and j * i == -k
    assert j * k == i and k * j == -i
    assert k * i == j and i * k == -j
    assert one * i == i


def test_multiplication_table_split():
    # (2, 3): i*i = 2, j*j = 3, k*k = -6
    B = QuaternionAlgebra(QQ, 2, 3)
    _, i, j, k = B.basis()
    assert i * i == 2
    assert j * j == 3
    assert k * k == -6
    assert i * j == k and j * i == -k
    assert i * k == 2 * j and k * i == -2 * j
    assert j * k == -3 * i and k * j == 3 * i


def test_conjugation_trace_norm():
    q = H.element(1, 2, 3, 4)
    assert q.trd() == 2
    assert q.nrd() == 1 + 4 + 9 + 16
    assert q * q.conj() == q.nrd()
    assert q.conj().conj() == q
    p = H.element(0, 1, 1, 0)
    assert (q * p).conj() == p.conj() * q.conj()
    assert (q + p).trd() == q.trd() + p.trd()
    assert (q * p).nrd() == q.nrd() * p.nrd()


def test_inverse():
    q = H.element(1, 1, 0, 0)
    assert q * q.inverse() == 1
    assert q.inverse() == H.element(rat(1, 2), rat(-1, 2), 0, 0)
    # split algebra has zero divisors with nrd 0
    M = QuaternionAlgebra(QQ, 1, 1)
    zd = M.element(1, 1, 0, 0)
    assert zd.nrd() == 0
    with pytest.raises(SingularUnit):
        zd.inverse()
    assert zd * M.element(1, -1, 0, 0) == 0


def test_scalar_mixing_and_powers():
    q = H.element(0, 1, 0, 0)
    assert 2 * q == q + q
    assert q - 1 == H.element(-1, 1, 0, 0)
    assert q ** 2 == -1
    assert q ** -1 == -q
    assert (1 + q) / 2 == H.element(rat(1, 2), rat(1, 2), 0, 0)


def test_quaternions_over_quadratic_field():
    K = QuadraticField(QQ, 2)
    w = K.gen
    B = QuaternionAlgebra(K, w, -1)
    _, i, j, k = B.basis()
    assert i * i == w
    assert (w * i) * j == w * k
    q = B.element(w, 1, 0, 0)
    assert q.nrd() == w * w - w  # x^2 coefficient is -a = -w
    assert q * q.conj() == q.nrd()


@given(st.lists(st.integers(-6, 6), min_size=8, max_size=8))
def test_associativity_random(vals):
    q1 = H.element(*vals[:4])
    q2 = H.element(*vals[4:])
    q3 = H.element(1, -2, 0, 3)
    assert (q1 * q2) * q3 == q1 * (q2 * q3)
    assert q1 * (q2 + q3) == q1 * q2 + q1 * q3
    assert (q1 * q2).nrd() == q1.nrd() * q2.nrd()

"""Base rings, orderings, and exact sign evaluation."""

from __future__ import annotations

import pytest

from hermforms.baserings import BaseRing, Ordering
from hermforms.errors import InvalidPlace, InvalidScalar
from hermforms.scalars import rat


def test_ordering_keys():
    assert Ordering(0, 1).key() == "0/+"
    assert Ordering(2, -1).key() == "2/-"
    assert Ordering.from_key("1/-") == Ordering(1, -1)
    with pytest.raises(InvalidPlace):
        Ordering.from_key("x/+")
    with pytest.raises(InvalidPlace):
        Ordering(0, 2)


def test_ring_validation():
    with pytest.raises(InvalidScalar):
        BaseRing.real_quadratic(4)
    with pytest.raises(InvalidScalar):
        BaseRing.real_quadratic(12)  # not squarefree
    with pytest.raises(InvalidScalar):
        BaseRing.real_quadratic(1)
    with pytest.raises(InvalidScalar):
        BaseRing.product([BaseRing.rationals()])
    with pytest.raises(InvalidScalar):
        BaseRing.product(
            [BaseRing.rationals(), BaseRing.product([BaseRing.rationals()] * 2)]
        )


def test_orderings_count():
    assert BaseRing.rationals().orderings() == [Ordering(0, 1)]
    assert BaseRing.real_quadratic(2).orderings() == [
        Ordering(0, 1),
        Ordering(0, -1),
    ]
    assert BaseRing.real_quadratic(-1).orderings() == []
    prod = BaseRing.product([BaseRing.rationals(), BaseRing.real_quadratic(2)])
    assert [p.key() for p in prod.orderings()] == ["0/+", "1/+", "1/-"]


def test_sign_at_rationals():
    R = BaseRing.rationals()
    P = R.orderings()[0]
    assert R.sign_at(rat(3, 2), P) == 1
    assert R.sign_at(rat(0), P) == 0
    assert R.sign_at(-2, P) == -1


def test_sign_at_quadratic():
    R = BaseRing.real_quadratic(2)
    plus, minus = R.orderings()
    w = R.field.gen
    # sqrt(2) - 1 > 0 under the positive embedding, < 0 under the other
    assert R.sign_at(w - 1, plus) == 1
    assert R.sign_at(w - 1, minus) == -1
    # sqrt(2) - 2 < 0 under both orderings? no: under minus it is negative too
    assert R.sign_at(w - 2, plus) == -1
    assert R.sign_at(3 - 2 * w, plus) == 1  # 9 > 8
    assert R.sign_at(R.field.zero, plus) == 0


def test_sign_at_product():
    R = BaseRing.product([BaseRing.rationals(), BaseRing.rationals()])
    p0, p1 = R.orderings()
    x = (rat(1), rat(-1))
    assert R.sign_at(x, p0) == 1
    assert R.sign_at(x, p1) == -1


def test_ordering_validation():
    R = BaseRing.rationals()
    with pytest.raises(InvalidPlace):
        R.sign_at(rat(1), Ordering(0, -1))
    with pytest.raises(InvalidPlace):
        BaseRing.real_quadratic(-1).check_ordering(Ordering(0, 1))


def test_equality_and_components():
    assert BaseRing.rationals() == BaseRing.rationals()
    assert BaseRing.real_quadratic(2) != BaseRing.real_quadratic(3)
    prod = BaseRing.product([BaseRing.rationals(), BaseRing.real_quadratic(2)])
    assert prod.is_product
    assert prod.components()[1] == BaseRing.real_quadratic(2)
    assert not BaseRing.rationals().is_product

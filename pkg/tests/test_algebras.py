"""Algebras with involution: construction, traces, types, Goldman elements."""

from __future__ import annotations

import random

import pytest

from hermforms.algebras import (
    ORTHOGONAL,
    SYMPLECTIC,
    UNITARY,
    AlgebraWithInvolution,
    ProductAlgebra,
    TensorElement,
    build_algebra,
)
from hermforms.baserings import BaseRing, Ordering
from hermforms.errors import (
    NotAnInvolution,
    SingularUnit,
    UnsupportedCombination,
)
from hermforms.linalg import Matrix
from hermforms.scalars import QuadNum, rat

QQ_RING = BaseRing.rationals()


def m2q(u=None):
    return AlgebraWithInvolution(QQ_RING, k=2, u=u)


def hamilton():
    return AlgebraWithInvolution(QQ_RING, quat_params=(-1, -1))


def gauss():
    return AlgebraWithInvolution(QQ_RING, center_d=-1)


def rand_elem(A, rng, height=4):
    def scalar():
        return rat(rng.randint(-height, height), rng.randint(1, 3))

    def entry():
        if A.quat is not None:
            return A.quat.element(scalar(), scalar(), scalar(), scalar())
        if A.center_d is not None:
            return QuadNum(A.S, scalar(), scalar())
        return scalar()

    return Matrix([[entry() for _ in range(A.k)] for _ in range(A.k)])


def test_build_algebra_canonical_cases():
    a = build_algebra({"base": {"kind": "rationals"}, "matrix_size": 2})
    assert a.involution_type() == ORTHOGONAL and a.deg == 2
    b = build_algebra(
        {
            "base": {"kind": "rationals"},
            "coefficients": {"kind": "quaternion", "a": -1, "b": -1},
            "matrix_size": 1,
        }
    )
    assert b.involution_type() == SYMPLECTIC and b.deg == 2
    c = build_algebra(
        {
            "base": {"kind": "rationals"},
            "center": {"kind": "quadratic", "d": -1},
            "matrix_size": 1,
        }
    )
    assert c.involution_type() == UNITARY and c.deg == 1


def test_build_algebra_errors():
    with pytest.raises(SingularUnit):
        build_algebra(
            {
                "base": {"kind": "rationals"},
                "matrix_size": 2,
                "involution": {"kind": "inner", "u": [["1", "0"], ["0", "0"]]},
            }
        )
    with pytest.raises(NotAnInvolution):
        build_algebra(
            {
                "base": {"kind": "rationals"},
                "matrix_size": 2,
                "involution": {"kind": "inner", "u": [["1", "1"], ["0", "1"]]},
            }
        )
    with pytest.raises(UnsupportedCombination):
        build_algebra(
            {
                "base": {"kind": "rationals"},
                "center": {"kind": "quadratic", "d": 2},
                "coefficients": {"kind": "quaternion", "a": -1, "b": -1},
            }
        )


def test_reduced_trace_examples():
    A = m2q()
    assert A.reduced_trace(A.element([[1, 2], [3, 4]])) == 5
    H = hamilton()
    x = H.element([[H.quat.element(1, 2, 3, 0)]])
    assert H.reduced_trace(x) == 2
    for alg in (A, H, AlgebraWithInvolution(QQ_RING, quat_params=(-1, -1), k=2)):
        assert alg.reduced_trace(alg.one()) == alg.deg


def test_involution_types():
    assert AlgebraWithInvolution(QQ_RING, k=3).involution_type() == ORTHOGONAL
    assert hamilton().involution_type() == SYMPLECTIC
    J = Matrix([[rat(0), rat(1)], [rat(-1), rat(0)]])
    tw = m2q(u=J)
    assert tw.delta == -1
    assert tw.involution_type() == SYMPLECTIC
    assert m2q(u=Matrix([[rat(1), rat(0)], [rat(0), rat(2)]])).involution_type() == ORTHOGONAL


def test_sigma_is_an_involution():
    rng = random.Random(7)
    J = Matrix([[rat(0), rat(1)], [rat(-1), rat(0)]])
    algebras = [
        m2q(),
        m2q(u=J),
        hamilton(),
        gauss(),
        AlgebraWithInvolution(QQ_RING, center_d=2, k=2),
        AlgebraWithInvolution(QQ_RING, quat_params=(-1, 2)),
    ]
    for A in algebras:
        for _ in range(5):
            x, y = rand_elem(A, rng), rand_elem(A, rng)
            assert A.sigma(x * y) == A.sigma(y) * A.sigma(x)
            assert A.sigma(A.sigma(x)) == x
            assert A.reduced_trace(A.sigma(x)) == A.iota(A.reduced_trace(x))
            assert A.reduced_trace(x * y) == A.reduced_trace(y * x)


def test_nil_orderings():
    P0 = Ordering(0, 1)
    unitary = AlgebraWithInvolution(QQ_RING, center_d=2)
    assert unitary.nil_orderings() == [P0]
    assert gauss().nil_orderings() == []
    assert m2q().nil_orderings() == []
    assert AlgebraWithInvolution(QQ_RING, quat_params=(-1, 2)).nil_orderings() == [P0]
    assert hamilton().nil_orderings() == []
    J = Matrix([[rat(0), rat(1)], [rat(-1), rat(0)]])
    assert m2q(u=J).nil_orderings() == [P0]


def test_nil_complement_under_skew_twist():
    # orthogonal sigma vs its twist by a skew unit: nil sets are complements
    A = m2q()
    J = Matrix([[rat(0), rat(1)], [rat(-1), rat(0)]])
    tw = A.twist(J)
    places = set(p.key() for p in QQ_RING.orderings())
    nil_a = set(p.key() for p in A.nil_orderings())
    nil_t = set(p.key() for p in tw.nil_orderings())
    assert nil_t == places - nil_a

    H = hamilton()
    i_elt = H.element([[H.quat.i()]])
    tw2 = H.twist(i_elt)
    assert tw2.involution_type() == ORTHOGONAL
    nil_h = set(p.key() for p in H.nil_orderings())
    nil_t2 = set(p.key() for p in tw2.nil_orderings())
    assert nil_t2 == places - nil_h


def test_coords_roundtrip():
    rng = random.Random(3)
    for A in (m2q(), hamilton(), gauss(), AlgebraWithInvolution(QQ_RING, center_d=2, k=2)):
        x = rand_elem(A, rng)
        assert A.from_S_coords(A.to_S_coords(x)) == x
        assert A.from_K_coords(A.to_K_coords(x)) == x
        assert len(A.to_S_coords(x)) == A.t
        assert len(A.to_K_coords(x)) == A.dim_K


def test_invert():
    A = m2q()
    x = A.element([[1, 2], [3, 4]])
    assert A.invert(x) * x == A.one()
    with pytest.raises(SingularUnit):
        A.invert(A.element([[1, 2], [2, 4]]))
    split = AlgebraWithInvolution(QQ_RING, quat_params=(1, 1))
    zd = split.element([[split.quat.element(1, 1, 0, 0)]])
    with pytest.raises(SingularUnit):
        split.invert(zd)
    H = hamilton()
    q = H.element([[H.quat.element(1, 2, 3, 4)]])
    assert H.invert(q) * q == H.one()


def test_goldman_rank_one_base():
    A = AlgebraWithInvolution(QQ_RING)
    g = A.goldman_element()
    assert g == TensorElement(A, {(0, 0): rat(1)})


def test_goldman_matrix_algebra():
    A = m2q()
    g = A.goldman_element()
    # sum of e_ij (x) e_ji: index of e_ij is 2i+j
    expected = TensorElement(
        A, {(2 * i + j, 2 * j + i): rat(1) for i in range(2) for j in range(2)}
    )
    assert g == expected


def test_goldman_quaternion_formula():
    for (a, b) in ((-1, -1), (-1, 2), (2, 3)):
        A = AlgebraWithInvolution(QQ_RING, quat_params=(a, b))
        g = A.goldman_element()
        expected = TensorElement(
            A,
            {
                (0, 0): rat(1, 2),
                (1, 1): rat(1, 2) / a,
                (2, 2): rat(1, 2) / b,
                (3, 3): rat(-1, 2) / (a * b),
            },
        )
        assert g == expected


def test_goldman_matrix_quaternion_combination():
    A = AlgebraWithInvolution(QQ_RING, quat_params=(-1, -1), k=2)
    coeffs = {}
    dvals = [rat(1, 2), rat(-1, 2), rat(-1, 2), rat(-1, 2)]
    for i in range(2):
        for j in range(2):
            for m in range(4):
                coeffs[((2 * i + j) * 4 + m, (2 * j + i) * 4 + m)] = dvals[m]
    assert A.goldman_element() == TensorElement(A, coeffs)


def test_goldman_matrix_over_center():
    A = AlgebraWithInvolution(QQ_RING, center_d=-1, k=2)
    g = A.goldman_element()
    one = A.S.one
    expected = TensorElement(
        A, {(2 * i + j, 2 * j + i): one for i in range(2) for j in range(2)}
    )
    assert g == expected


def test_goldman_identities():
    rng = random.Random(11)
    J = Matrix([[rat(0), rat(1)], [rat(-1), rat(0)]])
    for A in (m2q(), m2q(u=J), hamilton(), gauss()):
        g = A.goldman_element()
        one_tensor = TensorElement.from_pair(A, A.one(), A.one())
        assert g * g == one_tensor
        assert g.sigma_sigma() == g
        for _ in range(5):
            a, b = rand_elem(A, rng), rand_elem(A, rng)
            assert g * TensorElement.from_pair(A, a, b) == TensorElement.from_pair(
                A, b, a
            ) * g
            assert g.sandwich(a) == A.scalar_elem(A.reduced_trace(a))


def test_decompose_involution():
    A = m2q()
    u, delta = A.decompose_involution()
    assert u == A.one() and delta == 1

    diag12 = Matrix([[rat(1), rat(0)], [rat(0), rat(2)]])
    tw = m2q(u=diag12)
    u, delta = tw.decompose_involution()
    assert u == diag12 and delta == 1

    J = Matrix([[rat(0), rat(1)], [rat(-1), rat(0)]])
    tw2 = m2q(u=J)
    u, delta = tw2.decompose_involution()
    assert u == J and delta == -1


def test_decompose_involution_reproduces_sigma():
    rng = random.Random(5)
    H = hamilton()
    i_elt = H.element([[H.quat.i()]])
    tw = H.twist(i_elt)
    u, delta = tw.decompose_involution()
    assert delta == -1
    u_inv = tw.invert(u)
    for _ in range(5):
        x = rand_elem(tw, rng)
        assert tw.sigma(x) == u * tw.theta(x) * u_inv


def test_decompose_unitary_inner():
    S2 = AlgebraWithInvolution(QQ_RING, center_d=2, k=2)
    swap = Matrix(
        [[S2.S.zero, S2.S.one], [S2.S.one, S2.S.zero]]
    )
    tw = AlgebraWithInvolution(QQ_RING, center_d=2, k=2, u=swap)
    u, delta = tw.decompose_involution()
    assert delta == 1
    u_inv = tw.invert(u)
    rng = random.Random(9)
    for _ in range(5):
        x = rand_elem(tw, rng)
        assert tw.sigma(x) == u * tw.theta(x) * u_inv


def test_decompose_central_twist_is_canonical():
    lam = AlgebraWithInvolution(QQ_RING, center_d=-1)
    lam_u = Matrix([[lam.S.gen]])
    tw = AlgebraWithInvolution(QQ_RING, center_d=-1, u=lam_u)
    assert tw.delta == -1
    u, delta = tw.decompose_involution()
    assert u == tw.one() and delta == 1


def test_product_algebra():
    ring = BaseRing.product([BaseRing.rationals(), BaseRing.rationals()])
    alg = build_algebra(
        {
            "base": {"kind": "product", "factors": [{"kind": "rationals"}] * 2},
            "matrix_size": 1,
        }
    )
    assert isinstance(alg, ProductAlgebra)
    assert alg.base_ring == ring
    assert len(alg.components) == 2
    assert [p.key() for p in alg.orderings()] == ["0/+", "1/+"]
    assert alg.nil_orderings() == []


def test_algebra_over_real_quadratic_base():
    ring = BaseRing.real_quadratic(2)
    A = AlgebraWithInvolution(ring, quat_params=(-1, -1))
    assert A.involution_type() == SYMPLECTIC
    assert A.nil_orderings() == []
    w = ring.field.gen
    B = AlgebraWithInvolution(ring, quat_params=(w, -1))
    # (sqrt(2), -1) splits at the positive embedding only
    assert [p.key() for p in B.nil_orderings()] == ["0/+"]
    g = B.goldman_element()
    assert g * g == TensorElement.from_pair(B, B.one(), B.one())

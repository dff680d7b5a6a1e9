"""Signatures at orderings, maximal-signature elements, semidefiniteness."""

from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hermforms.algebras import AlgebraWithInvolution, build_algebra
from hermforms.baserings import BaseRing, Ordering
from hermforms.errors import (
    AlgebraMismatch,
    InvalidPlace,
    UnsupportedCombination,
    UseSkewPath,
)
from hermforms.forms import (
    HermForm,
    ProductForm,
    base_diag_form,
    diag_form,
    negate,
    orth_sum,
    tensor_quadratic,
)
from hermforms.linalg import Matrix
from hermforms.scalars import QuadNum, rat
from hermforms.signatures import (
    MaxSigCertificate,
    is_psd,
    max_sig_element,
    signature,
    signature_table,
    table_to_json,
)

QQ_RING = BaseRing.rationals()
P_PLUS = Ordering(0, 1)


def rational_algebra(k=1):
    return AlgebraWithInvolution(QQ_RING, k=k)


def hamilton(k=1):
    return AlgebraWithInvolution(QQ_RING, quat_params=(-1, -1), k=k)


def gauss(k=1):
    return AlgebraWithInvolution(QQ_RING, center_d=-1, k=k)


def symplectic_m2():
    j = Matrix([[rat(0), rat(1)], [rat(-1), rat(0)]])
    return AlgebraWithInvolution(QQ_RING, k=2, u=j)


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


def rand_form(A, n, rng, epsilon=1):
    sgn = A.scalar_elem(rat(epsilon))
    raw = [[rand_elem(A, rng) for _ in range(n)] for _ in range(n)]
    gram = [[raw[i][j] + A.sigma(raw[j][i]) * sgn for j in range(n)] for i in range(n)]
    return HermForm(A, epsilon, Matrix(gram))


def test_identity_form_signatures():
    cases = [
        (rational_algebra(), 1),
        (rational_algebra(2), 2),
        (rational_algebra(3), 3),
        (hamilton(), 2),
        (AlgebraWithInvolution(QQ_RING, quat_params=(-1, 2)), 0),
        (hamilton(2), 4),
        (gauss(2), 2),
    ]
    for A, expected in cases:
        h = diag_form(A, 1, [A.one()])
        assert signature(h, P_PLUS) == expected


def test_indefinite_diagonal():
    A = rational_algebra(2)
    h = diag_form(A, 1, [A.diag([rat(1), rat(-1)])])
    assert signature(h, P_PLUS) == 0
    assert signature(base_diag_form(QQ_RING, [rat(3), rat(-5), rat(7)]), P_PLUS) == 1


def test_real_quadratic_base():
    ring = BaseRing.real_quadratic(2)
    B = AlgebraWithInvolution(ring)
    f = diag_form(B, 1, [B.scalar_elem(B.K.gen)])
    assert table_to_json(signature_table(f)) == {"0/+": 1, "0/-": -1}
    g = diag_form(B, 1, [B.one()])
    assert table_to_json(signature_table(g)) == {"0/+": 1, "0/-": 1}


def test_nil_ordering_vanishing():
    rng = random.Random(3)
    nil_algebras = [
        AlgebraWithInvolution(QQ_RING, quat_params=(-1, 2)),
        AlgebraWithInvolution(QQ_RING, center_d=2),
        symplectic_m2(),
    ]
    for A in nil_algebras:
        assert P_PLUS in A.nil_orderings()
        for _ in range(8):
            h = rand_form(A, rng.randint(1, 3), rng)
            assert signature(h, P_PLUS) == 0


def test_hyperbolic_vanishing():
    rng = random.Random(11)
    for A in [rational_algebra(), rational_algebra(2), hamilton(), gauss()]:
        for _ in range(6):
            f = rand_form(A, 2, rng)
            assert signature(orth_sum(f, negate(f)), P_PLUS) == 0


def test_multiplicative_in_quadratic_factor():
    rng = random.Random(5)
    for A in [rational_algebra(2), hamilton(), gauss()]:
        for _ in range(10):
            scalars = [rat(rng.choice([1, 2, 3, -1, -2, -5]))
                       for _ in range(rng.randint(1, 3))]
            q = base_diag_form(QQ_RING, scalars)
            h = rand_form(A, rng.randint(1, 2), rng)
            prod = tensor_quadratic(q, h)
            assert signature(prod, P_PLUS) == signature(q, P_PLUS) * signature(h, P_PLUS)


def test_rank_one_bound():
    rng = random.Random(9)
    for A in [rational_algebra(3), hamilton(), gauss(2)]:
        found = 0
        while found < 8:
            x = rand_elem(A, rng)
            a = x + A.sigma(x)
            if not A.is_invertible(a):
                continue
            found += 1
            assert abs(signature(diag_form(A, 1, [a]), P_PLUS)) <= A.deg


def test_twist_representation_invariance():
    rng = random.Random(13)
    base = rational_algebra(2)
    minus = AlgebraWithInvolution(QQ_RING, k=2, u=base.diag([rat(-1), rat(-1)]))
    double = AlgebraWithInvolution(QQ_RING, k=2, u=base.diag([rat(2), rat(2)]))
    for _ in range(10):
        raw = [[rand_elem(base, rng) for _ in range(2)] for _ in range(2)]
        gram = Matrix(
            [[raw[i][j] + base.sigma(raw[j][i]) for j in range(2)] for i in range(2)]
        )
        vals = {signature(HermForm(A, 1, gram), P_PLUS) for A in (base, minus, double)}
        assert len(vals) == 1


def test_signature_table_product():
    PA = build_algebra(
        {"base": {"kind": "product", "factors": [{"kind": "rationals"}] * 2}}
    )
    f1 = diag_form(PA.components[0], 1, [PA.components[0].one()])
    f2 = negate(diag_form(PA.components[1], 1, [PA.components[1].one()]))
    pf = ProductForm(PA, 1, [f1, f2])
    assert signature(pf, Ordering(0, 1)) == 1
    assert signature(pf, Ordering(1, 1)) == -1
    assert table_to_json(signature_table(pf)) == {"0/+": 1, "1/+": -1}


def test_max_sig_canonical_algebras():
    for A in [rational_algebra(), rational_algebra(2), hamilton(), hamilton(2), gauss(2)]:
        cert = max_sig_element(A, P_PLUS)
        assert isinstance(cert, MaxSigCertificate)
        assert cert.m == A.deg
        assert A.is_symmetric(cert.element, 1)
        assert signature(diag_form(A, 1, [cert.element]), P_PLUS) == A.deg


def test_max_sig_nil_ordering():
    cert = max_sig_element(symplectic_m2(), P_PLUS)
    assert cert.m == 0 and cert.element is None


def test_max_sig_split_orthogonal():
    Q = AlgebraWithInvolution(QQ_RING, quat_params=(-1, 2))
    A = AlgebraWithInvolution(
        QQ_RING, quat_params=(-1, 2), u=Matrix([[Q.quat.i()]])
    )
    cert = max_sig_element(A, P_PLUS)
    assert cert.m == 2
    assert signature(diag_form(A, 1, [cert.element]), P_PLUS) == 2


def test_max_sig_twisted_unitary():
    G = gauss(2)
    lam = G.S.gen
    u = G.diag([lam, QuadNum(G.S, rat(0), rat(-1))])
    A = AlgebraWithInvolution(QQ_RING, k=2, center_d=-1, u=u)
    cert = max_sig_element(A, P_PLUS)
    assert cert.m == 2
    assert signature(diag_form(A, 1, [cert.element]), P_PLUS) == 2


def test_max_sig_rejects_products():
    PA = build_algebra(
        {"base": {"kind": "product", "factors": [{"kind": "rationals"}] * 2}}
    )
    with pytest.raises(UnsupportedCombination):
        max_sig_element(PA, P_PLUS)


def test_is_psd_rational():
    assert is_psd(base_diag_form(QQ_RING, [rat(1), rat(2)]), P_PLUS)
    assert not is_psd(base_diag_form(QQ_RING, [rat(1), rat(-2)]), P_PLUS)
    K = rational_algebra()
    w = K.scalar_elem
    singular = HermForm(
        K, 1, Matrix([[w(rat(1)), w(rat(1))], [w(rat(1)), w(rat(1))]])
    )
    assert is_psd(singular, P_PLUS)


def test_is_psd_center():
    C = gauss()

    def ce(x, y):
        return C.scalar_elem(QuadNum(C.S, rat(x), rat(y)))

    gram = Matrix([[ce(2, 0), ce(0, 1)], [ce(0, -1), ce(1, 0)]])
    assert is_psd(HermForm(C, 1, gram), P_PLUS)
    gram2 = Matrix([[ce(1, 0), ce(0, 2)], [ce(0, -2), ce(1, 0)]])
    assert not is_psd(HermForm(C, 1, gram2), P_PLUS)


def test_is_psd_domain_errors():
    H = hamilton()
    with pytest.raises(AlgebraMismatch):
        is_psd(diag_form(H, 1, [H.one()]), P_PLUS)
    with pytest.raises(AlgebraMismatch):
        is_psd(diag_form(rational_algebra(2), 1, [rational_algebra(2).one()]), P_PLUS)
    K = rational_algebra()
    w = K.scalar_elem
    skew = HermForm(K, -1, Matrix([[w(rat(0)), w(rat(1))], [w(rat(-1)), w(rat(0))]]))
    with pytest.raises(UseSkewPath):
        is_psd(skew, P_PLUS)


def test_unknown_ordering_rejected():
    with pytest.raises(InvalidPlace):
        signature(base_diag_form(QQ_RING, [rat(1)]), Ordering(1, 1))


@given(
    st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=5),
    st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=5),
)
def test_additivity_on_rational_diagonals(left, right):
    f = base_diag_form(QQ_RING, [rat(v) for v in left])
    g = base_diag_form(QQ_RING, [rat(v) for v in right])
    total = signature(orth_sum(f, g), P_PLUS)
    assert total == signature(f, P_PLUS) + signature(g, P_PLUS)
    expected = sum((v > 0) - (v < 0) for v in left + right)
    assert total == expected


@given(st.integers(min_value=-9, max_value=9), st.integers(min_value=1, max_value=9))
def test_square_scaling_invariance(a, c):
    f = base_diag_form(QQ_RING, [rat(a)])
    g = base_diag_form(QQ_RING, [rat(a * c * c)])
    assert signature(f, P_PLUS) == signature(g, P_PLUS)

"""Signatures of epsilon-hermitian forms at orderings of the base ring.

The signature at an ordering P is computed through a fixed chain of Morita
reductions: rescale the involution to the canonical one (using the
normalized output of decompose_involution, with the unitary sign freedom
resolved through the serialized square root of d), erase the matrix block
structure, diagonalize over the coefficient ring, and sum the signature
contributions of the rank-1 pieces.  The chain fixes one Morita equivalence
per ordering, so the values are well defined and calibrated to give <1> the
value deg(A) at every non-nil ordering of a canonical algebra.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional

from .algebras import AlgebraWithInvolution, ProductAlgebra
from .baserings import Ordering
from .errors import (
    AlgebraMismatch,
    InternalError,
    SearchBudgetExceeded,
    UnsupportedCombination,
    UseSkewPath,
)
from .forms import HermForm, ProductForm, _congruence_diagonalize, diag_form, scale_unit
from .linalg import Matrix, flatten_blocks
from .scalars import QuadNum


class MaxSigCertificate:
    """The maximal rank-1 signature at an ordering, with a witness element."""

    __slots__ = ("m", "element")

    def __init__(self, m: int, element: Optional[Matrix]):
        self.m = m
        self.element = element

    def __repr__(self) -> str:
        return f"MaxSigCertificate(m={self.m})"


def _canonical_scaler(A: AlgebraWithInvolution):
    """The normalized unit u0 with sigma = Int(u0) o theta; for unitary
    algebras delta is forced to +1 by absorbing the square root of d."""
    u0, delta = A.decompose_involution()
    if delta == -1 and A.center_d is not None:
        u0 = A.scale_center(A.S.gen, u0)
        delta = 1
    return u0, delta


def _atom_signature(calg: AlgebraWithInvolution, epsilon: int, psi, P: Ordering) -> int:
    """Signature at P of the rank-1 form <psi> over the coefficient ring
    (D, theta); psi = 0 stands for a radical slot and contributes nothing."""
    ring = calg.base_ring
    if not psi:
        return 0
    if calg.quat is not None:
        a, b = calg.quat.a, calg.quat.b
        division = ring.sign_at(a, P) < 0 and ring.sign_at(b, P) < 0
        if epsilon == 1:
            if psi.x or psi.y or psi.z:
                raise InternalError("hermitian diagonal slot is not scalar")
            return 2 * ring.sign_at(psi.w, P) if division else 0
        if psi.w:
            raise InternalError("skew diagonal slot is not pure")
        if division:
            return 0
        if ring.sign_at(psi.nrd(), P) < 0:
            return 0
        q0 = next(
            q for q in (calg.quat.i(), calg.quat.j(), calg.quat.k())
            if ring.sign_at(q.nrd(), P) > 0
        )
        pairing = (psi * q0.conj()).trd()
        return 2 * ring.sign_at(pairing, P)
    if calg.center_d is not None:
        if ring.sign_at(calg.center_d, P) > 0:
            return 0
        if epsilon == 1:
            if psi.y:
                raise InternalError("hermitian diagonal slot is not in the base")
            return ring.sign_at(psi.x, P)
        if psi.x:
            raise InternalError("skew diagonal slot has a base component")
        return ring.sign_at(psi.y, P)
    return ring.sign_at(psi, P)


def _diagonal_values(h: HermForm):
    """Coefficient-ring diagonal slots of h along the canonical rescaling,
    or None when the rescaled form is alternating."""
    A = h.algebra
    u0, _ = _canonical_scaler(A)
    work = h if u0 == A.one() else scale_unit(h, A.invert(u0))
    calg = A.coeff_algebra()
    res = _congruence_diagonalize(calg, work.epsilon, flatten_blocks(work.gram))
    if res is None:
        return None, calg, work.epsilon
    return res[0], calg, work.epsilon


def signature(h, P: Ordering) -> int:
    """sign_P(h) under the fixed Morita convention; 0 on alternating forms
    and on radical slots, so singular inputs see only their regular part."""
    if isinstance(h, ProductForm):
        h.algebra.base_ring.check_ordering(P)
        return signature(h.components[P.component], Ordering(0, P.sign))
    A = h.algebra
    A.base_ring.check_ordering(P)
    if h.rank == 0:
        return 0
    dvals, calg, eps = _diagonal_values(h)
    if dvals is None:
        return 0
    return sum(_atom_signature(calg, eps, d, P) for d in dvals)


def signature_table(h) -> Dict[Ordering, int]:
    """Signature at every ordering of the base ring."""
    algebra = h.algebra
    if isinstance(h, ProductForm):
        return {
            P: signature(h.components[P.component], Ordering(0, P.sign))
            for P in algebra.base_ring.orderings()
        }
    return {P: signature(h, P) for P in algebra.base_ring.orderings()}


def table_to_json(table: Dict[Ordering, int]) -> Dict[str, int]:
    return {P.key(): int(v) for P, v in table.items()}


def _closed_form_candidates(A: AlgebraWithInvolution, P: Ordering) -> List[Matrix]:
    u0, delta0 = A.decompose_involution()
    if delta0 == 1:
        base = u0
    elif A.quat is not None:
        ring = A.base_ring
        q0 = next(
            q for q in (A.quat.i(), A.quat.j(), A.quat.k())
            if ring.sign_at(q.nrd(), P) > 0
        )
        base = u0 * A.diag([q0] * A.k)
    elif A.center_d is not None:
        base = A.scale_center(A.S.gen, u0)
    else:
        return []
    return [base, -base]


def _random_element(A: AlgebraWithInvolution, rng: random.Random, height: int = 3) -> Matrix:
    def scalar():
        return A.K.from_int(rng.randint(-height, height))

    def entry():
        if A.quat is not None:
            return A.quat.element(scalar(), scalar(), scalar(), scalar())
        if A.center_d is not None:
            return QuadNum(A.S, scalar(), scalar())
        return scalar()

    return Matrix([[entry() for _ in range(A.k)] for _ in range(A.k)])


def max_sig_element(
    A: AlgebraWithInvolution,
    P: Ordering,
    seed: int = 0,
    budget: int = 200,
) -> MaxSigCertificate:
    """m_P(A, sigma) together with a symmetric unit achieving it."""
    if isinstance(A, ProductAlgebra):
        raise UnsupportedCombination("query the component algebras individually")
    A.base_ring.check_ordering(P)
    if P in A.nil_orderings():
        return MaxSigCertificate(0, None)
    deg = A.deg

    def achieves(a: Matrix) -> bool:
        if not A.is_symmetric(a, 1) or not A.is_invertible(a):
            return False
        return signature(diag_form(A, 1, [a]), P) == deg

    for cand in _closed_form_candidates(A, P):
        if achieves(cand):
            return MaxSigCertificate(deg, cand)
    rng = random.Random(seed)
    seeds = _closed_form_candidates(A, P) or [A.u]
    for _ in range(budget):
        core = seeds[rng.randrange(len(seeds))]
        acc = A.zero()
        for _ in range(2):
            x = _random_element(A, rng)
            acc = acc + A.sigma(x) * core * x
        if achieves(acc):
            return MaxSigCertificate(deg, acc)
    raise SearchBudgetExceeded("no element of maximal signature found")


def is_psd(phi: HermForm, P: Ordering) -> bool:
    """Positive semidefiniteness at P for forms over (K, id) or (S, iota)."""
    A = phi.algebra
    if isinstance(phi, ProductForm) or A.k != 1 or A.quat is not None:
        raise AlgebraMismatch("PSD tests apply over the base or the center")
    if phi.epsilon != 1:
        raise UseSkewPath("PSD tests apply to hermitian forms")
    A.base_ring.check_ordering(P)
    if phi.rank == 0:
        return True
    calg = A.coeff_algebra()
    res = _congruence_diagonalize(calg, 1, flatten_blocks(phi.gram))
    if res is None:
        raise InternalError("hermitian center form reported alternating")
    ring = A.base_ring
    for val in res[0]:
        if not val:
            continue
        scal = val.x if A.center_d is not None else val
        if ring.sign_at(scal, P) < 0:
            return False
    return True

"""Epsilon-hermitian forms over algebras with involution.

A form of rank r over (A, sigma) is stored as an r x r Gram matrix whose
entries are elements of A, subject to sigma(G_ji) = epsilon * G_ij.  Rank 0
is allowed (gram is None); empty forms appear as degenerate ends of
decompositions and as the zero Witt class.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

from .algebras import AlgebraWithInvolution, ProductAlgebra
from .baserings import BaseRing
from .errors import (
    AlgebraMismatch,
    InternalError,
    InvalidEntry,
    NotHermitian,
    ScaleFirst,
    SearchBudgetExceeded,
    SingularForm,
    UnsupportedBase,
    UnsupportedCombination,
    UseSkewPath,
)
from .linalg import Matrix, field_det, flatten_blocks, partition_blocks
from .quaternions import Quaternion
from .scalars import QuadNum, scalar_inverse
from .serialize import gram_from_json, gram_to_json


class HermForm:
    """An epsilon-hermitian form given by its Gram matrix."""

    __slots__ = ("algebra", "epsilon", "gram", "_nonsingular")

    def __init__(self, algebra, epsilon: int, gram: Optional[Matrix]):
        if epsilon not in (1, -1):
            raise InvalidEntry("epsilon must be +1 or -1")
        if isinstance(algebra, ProductAlgebra):
            raise InvalidEntry("use ProductForm over a product algebra")
        self.algebra = algebra
        self.epsilon = epsilon
        if gram is not None:
            if isinstance(gram, (list, tuple)):
                gram = Matrix([list(row) for row in gram])
            if gram.nrows != gram.ncols:
                raise NotHermitian("Gram matrix must be square")
            gram = gram.map(algebra._check_element)
            for i in range(gram.nrows):
                for j in range(i, gram.ncols):
                    expect = gram[i, j] if epsilon == 1 else -gram[i, j]
                    if algebra.sigma(gram[j, i]) != expect:
                        raise NotHermitian(
                            f"entry ({j},{i}) breaks the epsilon-hermitian symmetry"
                        )
        self.gram = gram
        self._nonsingular: Optional[bool] = None

    @property
    def rank(self) -> int:
        return 0 if self.gram is None else self.gram.nrows

    @property
    def nonsingular(self) -> bool:
        if self._nonsingular is None:
            self._nonsingular = _gram_invertible(self)
        return self._nonsingular

    def __repr__(self) -> str:
        return f"HermForm(rank={self.rank}, epsilon={self.epsilon})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, HermForm):
            return NotImplemented
        if self.algebra != other.algebra or self.epsilon != other.epsilon:
            return False
        if (self.gram is None) != (other.gram is None):
            return False
        return self.gram is None or self.gram == other.gram


class DiagForm:
    """A diagonalization <a_1, ..., a_r> together with its base-change witness."""

    __slots__ = ("algebra", "epsilon", "entries", "witness")

    def __init__(self, algebra, epsilon: int, entries: List[Matrix], witness):
        self.algebra = algebra
        self.epsilon = epsilon
        self.entries = list(entries)
        self.witness = witness

    @property
    def rank(self) -> int:
        return len(self.entries)

    def form(self) -> HermForm:
        return diag_form(self.algebra, self.epsilon, self.entries)


class Alternating:
    """Marker result: the form is alternating (split symplectic), hence
    admits no diagonalization with unit entries."""

    __slots__ = ("source",)

    def __init__(self, source: HermForm):
        self.source = source


class ProductForm:
    """A form over a product algebra: one component form per factor."""

    __slots__ = ("algebra", "epsilon", "components")

    def __init__(self, algebra: ProductAlgebra, epsilon: int, components):
        if not isinstance(algebra, ProductAlgebra):
            raise InvalidEntry("ProductForm requires a product algebra")
        components = list(components)
        if len(components) != len(algebra.components):
            raise InvalidEntry("one component form per algebra factor")
        ranks = set()
        for comp, alg in zip(components, algebra.components):
            if not isinstance(comp, HermForm) or comp.algebra != alg:
                raise AlgebraMismatch("component form over the wrong factor")
            if comp.epsilon != epsilon:
                raise AlgebraMismatch("component epsilon mismatch")
            ranks.add(comp.rank)
        if len(ranks) > 1:
            raise InvalidEntry("component ranks must agree")
        self.algebra = algebra
        self.epsilon = epsilon
        self.components = components

    @property
    def rank(self) -> int:
        return self.components[0].rank

    @property
    def nonsingular(self) -> bool:
        return all(c.nonsingular for c in self.components)


def diag_form(algebra, epsilon: int, entries: Sequence) -> HermForm:
    """Build <a_1, ..., a_r>; scalar entries are promoted to a*identity."""
    elems = []
    for e in entries:
        elems.append(algebra._check_element(e) if isinstance(e, Matrix) else algebra.scalar_elem(e))
    if not elems:
        return HermForm(algebra, epsilon, None)
    zero = algebra.zero()
    gram = Matrix(
        [[elems[i] if i == j else zero for j in range(len(elems))] for i in range(len(elems))]
    )
    return HermForm(algebra, epsilon, gram)


def base_diag_form(ring: BaseRing, entries: Sequence, epsilon: int = 1) -> HermForm:
    """A quadratic form over (K, id) with the given diagonal scalars."""
    return diag_form(AlgebraWithInvolution(ring), epsilon, entries)


def orth_sum(h1, h2):
    if isinstance(h1, ProductForm) or isinstance(h2, ProductForm):
        if (
            not isinstance(h1, ProductForm)
            or not isinstance(h2, ProductForm)
            or h1.algebra != h2.algebra
            or h1.epsilon != h2.epsilon
        ):
            raise AlgebraMismatch("orthogonal sum needs matching product forms")
        return ProductForm(
            h1.algebra,
            h1.epsilon,
            [orth_sum(a, b) for a, b in zip(h1.components, h2.components)],
        )
    if h1.algebra != h2.algebra or h1.epsilon != h2.epsilon:
        raise AlgebraMismatch("orthogonal sum needs the same algebra and epsilon")
    if h1.rank == 0:
        return HermForm(h2.algebra, h2.epsilon, h2.gram)
    if h2.rank == 0:
        return HermForm(h1.algebra, h1.epsilon, h1.gram)
    zero = h1.algebra.zero()
    r1, r2 = h1.rank, h2.rank
    rows = []
    for i in range(r1):
        rows.append([h1.gram[i, j] if j < r1 else zero for j in range(r1 + r2)])
    for i in range(r2):
        rows.append([zero if j < r1 else h2.gram[i, j - r1] for j in range(r1 + r2)])
    return HermForm(h1.algebra, h1.epsilon, Matrix(rows))


def negate(h):
    """The form -h (Gram negated; same algebra and epsilon)."""
    if isinstance(h, ProductForm):
        return ProductForm(h.algebra, h.epsilon, [negate(c) for c in h.components])
    gram = None if h.gram is None else h.gram.map(lambda e: -e)
    return HermForm(h.algebra, h.epsilon, gram)


def scale_unit(h: HermForm, a: Matrix) -> HermForm:
    """Scale by a unit with sigma(a) = +-a: the Gram becomes a*G, the
    involution becomes Int(a) o sigma, and epsilon picks up the sign."""
    if isinstance(h, ProductForm):
        raise UnsupportedCombination("scale component forms individually")
    A = h.algebra
    a = A._check_element(a)
    sa = A.sigma(a)
    if sa == a:
        sign = 1
    elif sa == -a:
        sign = -1
    else:
        raise InvalidEntry("scaling element must be sigma-symmetric or sigma-skew")
    twisted = A.twist(a)
    gram = None if h.gram is None else h.gram.map(lambda e: a * e)
    return HermForm(twisted, sign * h.epsilon, gram)


def tensor_quadratic(q: HermForm, h: HermForm) -> HermForm:
    """Kronecker product of a diagonal-style form over the base or center
    with a form over (A, sigma); scalars act through the center."""
    if isinstance(h, ProductForm) or isinstance(q, ProductForm):
        raise UnsupportedCombination("tensor over product algebras is out of scope")
    A = h.algebra
    qa = q.algebra
    if qa.k != 1 or qa.quat is not None:
        raise AlgebraMismatch("left factor must live over the base or the center")
    if qa.base_ring != A.base_ring:
        raise AlgebraMismatch("base rings differ")
    if qa.center_d is not None and qa.center_d != A.center_d:
        raise AlgebraMismatch("center of the left factor does not embed")
    if q.rank == 0 or h.rank == 0:
        return HermForm(A, q.epsilon * h.epsilon, None)
    rows = []
    for i in range(q.rank):
        for s in range(h.rank):
            row = []
            for j in range(q.rank):
                scal = q.gram[i, j][0, 0]
                for t in range(h.rank):
                    row.append(A.scale_center(scal, h.gram[s, t]))
            rows.append(row)
    return HermForm(A, q.epsilon * h.epsilon, Matrix(rows))


def morita_flatten(h: HermForm) -> HermForm:
    """Erase the matrix-block structure: a rank-r form over (M_k(D), theta)
    becomes a rank-rk form over (D, theta)."""
    if isinstance(h, ProductForm):
        raise UnsupportedCombination("flatten component forms individually")
    A = h.algebra
    if not A.is_canonical:
        raise ScaleFirst("flattening needs the canonical involution")
    out = A.coeff_algebra()
    if h.rank == 0:
        return HermForm(out, h.epsilon, None)
    flat = flatten_blocks(h.gram)
    return HermForm(out, h.epsilon, flat.map(lambda d: Matrix([[d]])))


def diagonalize(h: HermForm):
    """Constructive diagonalization with an exact witness, or Alternating."""
    if isinstance(h, ProductForm):
        raise UnsupportedCombination("diagonalize component forms individually")
    A = h.algebra
    if h.rank == 0:
        return DiagForm(A, h.epsilon, [], None)
    if not h.nonsingular:
        raise SingularForm("diagonalization needs a nonsingular form")
    azero = A.zero()
    if all(
        A.is_invertible(h.gram[i, i]) if i == j else h.gram[i, j] == azero
        for i in range(h.rank)
        for j in range(h.rank)
    ):
        ident = Matrix.diagonal([A.one()] * h.rank, azero)
        return DiagForm(A, h.epsilon, [h.gram[i, i] for i in range(h.rank)], ident)
    work = h if A.is_canonical else scale_unit(h, A.invert(A.u))
    calg = work.algebra.coeff_algebra()
    flat = flatten_blocks(work.gram)
    res = _congruence_diagonalize(calg, work.epsilon, flat)
    if res is None:
        return Alternating(h)
    dvals, flat_witness = res
    witness = partition_blocks(flat_witness, A.k)
    zero = calg.entry_zero()
    entries = []
    for i in range(h.rank):
        block = Matrix.diagonal(dvals[i * A.k : (i + 1) * A.k], zero)
        entries.append(A.u * block)
    lhs = witness.transpose().map(A.sigma) * h.gram * witness
    rhs = Matrix(
        [[entries[i] if i == j else azero for j in range(h.rank)] for i in range(h.rank)]
    )
    if lhs != rhs:
        raise InternalError("diagonalization witness check failed")
    for a in entries:
        if not A.is_symmetric(a, h.epsilon):
            raise InternalError("diagonal entry lost its symmetry")
    return DiagForm(A, h.epsilon, entries, witness)


def _pivot_candidates(calg) -> List:
    if calg.quat is not None:
        base = list(calg.quat.basis())
        sums = [base[i] + base[j] for i in range(4) for j in range(i + 1, 4)]
        return base + sums
    if calg.center_d is not None:
        return [calg.S.one, calg.S.gen]
    return [calg.S.one]


def _is_unit_scalar(d) -> bool:
    if isinstance(d, Quaternion):
        return bool(d.nrd())
    return bool(d)


def _scalar_inv(d):
    if isinstance(d, Quaternion):
        return d.inverse()
    return scalar_inverse(d)


def _congruence_diagonalize(calg, epsilon: int, flat: Matrix):
    """Symmetric Gaussian elimination over the coefficient ring (D, theta).

    Returns (diagonal values, witness) with witness^{theta,t} * flat * witness
    diagonal, tolerating a zero radical, or None in the alternating case.
    """
    conj = calg.entry_conj
    n = flat.nrows
    alternating_shape = calg.quat is None and calg.center_d is None and epsilon == -1
    if alternating_shape:
        return None if flat else ([calg.entry_zero()] * n, Matrix.diagonal([calg.entry_one()] * n, calg.entry_zero()))
    m = [list(row) for row in flat.rows]
    wit = [
        [calg.entry_one() if i == j else calg.entry_zero() for j in range(n)]
        for i in range(n)
    ]
    cands = _pivot_candidates(calg)

    def col_op(tgt: int, src: int, c) -> None:
        # basis change e_tgt <- e_tgt + e_src * c, applied congruently
        for i in range(n):
            m[i][tgt] = m[i][tgt] + m[i][src] * c
        cc = conj(c)
        for j in range(n):
            m[tgt][j] = m[tgt][j] + cc * m[src][j]
        for i in range(n):
            wit[i][tgt] = wit[i][tgt] + wit[i][src] * c

    def swap(p: int, q: int) -> None:
        for i in range(n):
            m[i][p], m[i][q] = m[i][q], m[i][p]
        m[p], m[q] = m[q], m[p]
        for i in range(n):
            wit[i][p], wit[i][q] = wit[i][q], wit[i][p]

    for p in range(n):
        piv = None
        for q in range(p, n):
            if _is_unit_scalar(m[q][q]):
                piv = q
                break
        if piv is None:
            for q1 in range(p, n):
                for q2 in range(p, n):
                    if q1 == q2:
                        continue
                    for c in cands:
                        cc = conj(c)
                        v = m[q1][q1] + cc * m[q2][q1] + m[q1][q2] * c + cc * m[q2][q2] * c
                        if _is_unit_scalar(v):
                            col_op(q1, q2, c)
                            piv = q1
                            break
                    if piv is not None:
                        break
                if piv is not None:
                    break
        if piv is None:
            if any(m[i][j] for i in range(p, n) for j in range(p, n)):
                raise SearchBudgetExceeded("no invertible pivot candidate found")
            break
        if piv != p:
            swap(p, piv)
        dinv = _scalar_inv(m[p][p])
        for q in range(p + 1, n):
            if m[p][q]:
                col_op(q, p, -(dinv * m[p][q]))
    return [m[i][i] for i in range(n)], Matrix(wit)


def _gram_invertible(h: HermForm) -> bool:
    if h.rank == 0:
        return True
    flat = flatten_blocks(h.gram) if h.algebra.k > 1 else h.gram.map(lambda e: e[0, 0])
    if h.algebra.quat is None:
        return bool(field_det(flat))
    qbasis = h.algebra.quat.basis()
    # left-regular representation of each quaternion entry over K
    blocks = flat.map(
        lambda q: Matrix([[(q * b).coords()[i] for b in qbasis] for i in range(4)])
    )
    return bool(field_det(flatten_blocks(blocks)))


def _transfer_gram(h: HermForm) -> HermForm:
    A = h.algebra
    out = A.base_algebra()
    if h.rank == 0:
        return HermForm(out, h.epsilon, None)
    basis = A.k_basis()
    pre = [
        [A.sigma(b) * h.gram[s, t] for b in basis]
        for s in range(h.rank)
        for t in range(h.rank)
    ]
    rows = []
    for s in range(h.rank):
        for i, _ in enumerate(basis):
            row = []
            for t in range(h.rank):
                left = pre[s * h.rank + t][i]
                for bj in basis:
                    val = A.center_trace(A.reduced_trace(left * bj))
                    row.append(Matrix([[val]]))
            rows.append(row)
    return HermForm(out, h.epsilon, Matrix(rows))


def transfer_to_base(h):
    """The quadratic form Tr_{S/K}(Trd(sigma(x) G y)) over (K, id) on the
    K-basis of A^r."""
    if isinstance(h, ProductForm):
        comps = [transfer_to_base(c) for c in h.components]
        out = ProductAlgebra(h.algebra.base_ring, [c.algebra for c in comps])
        return ProductForm(out, h.epsilon, comps)
    if h.epsilon != 1:
        raise UseSkewPath("transfer is computed for epsilon = +1 forms")
    return _transfer_gram(h)


def trace_transfer(h: HermForm) -> HermForm:
    """Tr_{S/K} of a form over a quadratic etale center (S, iota)."""
    A = h.algebra
    if A.center_d is None or A.k != 1 or A.quat is not None:
        raise UnsupportedCombination(
            "trace transfer needs a rank-1 algebra over a quadratic etale center"
        )
    return _transfer_gram(h)


def pfister(ring: BaseRing, units: Sequence) -> HermForm:
    """The 2^l-dimensional Pfister form <1,u_1> x ... x <1,u_l> over (K, id)."""
    if ring.is_product:
        raise UnsupportedCombination("Pfister forms live over a connected base")
    field = ring.field
    coerced = []
    for u in units:
        v = ring.coerce(u)
        if not v:
            raise SingularForm("Pfister slots must be units")
        coerced.append(v)
    entries = []
    for mask in range(1 << len(coerced)):
        prod = field.one
        for i, u in enumerate(coerced):
            if (mask >> i) & 1:
                prod = prod * u
        entries.append(prod)
    return base_diag_form(ring, entries)


def extend_algebra(A: AlgebraWithInvolution, m: int) -> AlgebraWithInvolution:
    """The same algebra with scalars extended from Q to Q(sqrt(m))."""
    if A.base_ring.kind != "rationals":
        raise UnsupportedBase("scalar extension starts from the rational base")
    ring = BaseRing.real_quadratic(m)
    quat = (A.quat.a, A.quat.b) if A.quat is not None else None
    ext = AlgebraWithInvolution(
        ring, center_d=A.center_d, quat_params=quat, k=A.k
    )
    if A.is_canonical:
        return ext
    return AlgebraWithInvolution(
        ring,
        center_d=A.center_d,
        quat_params=quat,
        k=A.k,
        u=A.u.map(lambda e: _extend_entry(ext, e)),
    )


def _extend_entry(ext: AlgebraWithInvolution, e):
    if isinstance(e, Quaternion):
        return ext.quat.element(*e.coords())
    if isinstance(e, QuadNum):
        return QuadNum(ext.S, ext.K.coerce(e.x), ext.K.coerce(e.y))
    return ext.K.coerce(e)


def extend_scalars(h: HermForm, m: int) -> HermForm:
    """The form h with scalars extended from Q to Q(sqrt(m))."""
    ext = extend_algebra(h.algebra, m)
    gram = None
    if h.gram is not None:
        gram = h.gram.map(lambda blk: blk.map(lambda e: _extend_entry(ext, e)))
    return HermForm(ext, h.epsilon, gram)


def form_to_json(h) -> dict:
    if isinstance(h, ProductForm):
        return {
            "epsilon": h.epsilon,
            "components": [
                gram_to_json(c.algebra, c.gram) if c.gram is not None else []
                for c in h.components
            ],
        }
    return {
        "epsilon": h.epsilon,
        "gram": gram_to_json(h.algebra, h.gram) if h.gram is not None else [],
    }


def form_from_json(algebra, obj):
    if not isinstance(obj, dict):
        raise InvalidEntry("form must be an object")
    eps = obj.get("epsilon")
    if eps not in (1, -1):
        raise InvalidEntry("form needs epsilon +-1")
    if isinstance(algebra, ProductAlgebra):
        comps = obj.get("components")
        if not isinstance(comps, list) or len(comps) != len(algebra.components):
            raise InvalidEntry("product form needs one gram per component")
        built = [
            HermForm(alg, eps, gram_from_json(alg, g) if g else None)
            for alg, g in zip(algebra.components, comps)
        ]
        return ProductForm(algebra, eps, built)
    unknown = set(obj) - {"epsilon", "gram"}
    if unknown:
        raise InvalidEntry(f"unknown form fields: {sorted(unknown)}")
    g = obj.get("gram")
    if g is None:
        raise InvalidEntry("form needs a gram array")
    return HermForm(algebra, eps, gram_from_json(algebra, g) if g else None)

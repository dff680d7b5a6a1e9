"""The involution trace form, the center-valued pairing of hermitian forms,
and the positivity constructions built on it: Sylvester decompositions and
the forms that kill a given form up to hyperbolicity."""

from __future__ import annotations

import random
from typing import List

from .algebras import UNITARY, ProductAlgebra
from .errors import (
    AlgebraMismatch,
    InternalError,
    InvalidEntry,
    NilOrdering,
    NotDiagonalizable,
    NotMaximal,
    NotNil,
    SearchBudgetExceeded,
    SingularForm,
    SplitCenter,
    UnsupportedBase,
    UnsupportedCombination,
    UseSkewPath,
)
from .forms import (
    Alternating,
    HermForm,
    ProductForm,
    base_diag_form,
    diag_form,
    diagonalize,
    negate,
    orth_sum,
    tensor_quadratic,
)
from .linalg import Matrix, field_nullspace
from .scalars import QuadNum
from .serialize import element_to_json, scalar_to_json
from .signatures import is_psd, max_sig_element, signature, signature_table
from .witt import (
    EQUAL,
    HYPERBOLIC,
    NOT_EQUAL,
    NOT_HYPERBOLIC,
    UNDECIDED,
    tensor_multiple_hyperbolic,
    witt_equal,
)


class PairedForm:
    """The center-valued product of two forms, with its provenance."""

    __slots__ = ("form", "left", "right")

    def __init__(self, form: HermForm, left: HermForm, right: HermForm):
        expected = left.rank * right.rank * len(left.algebra.basis())
        if form.algebra.k != 1 or form.rank != expected:
            raise InternalError("paired form has the wrong shape")
        self.form = form
        self.left = left
        self.right = right

    @property
    def epsilon(self) -> int:
        return self.form.epsilon

    @property
    def rank(self) -> int:
        return self.form.rank


def _center_scalar(A, value):
    return A.center_algebra().scalar_elem(value)


def _phi_gram(A, b, c) -> Matrix:
    basis = A.basis()
    right = [b * y * c for y in basis]
    C = A.center_algebra()
    rows = []
    for x in basis:
        sx = A.sigma(x)
        rows.append([_center_scalar(A, A.reduced_trace(sx * r)) for r in right])
    return Matrix(rows)


def involution_trace_form(A) -> HermForm:
    """The form (x, y) -> Trd(sigma(x) y) on the fixed monomial basis of A."""
    if isinstance(A, ProductAlgebra):
        raise SplitCenter("the trace form needs a connected center")
    one = A.one()
    return HermForm(A.center_algebra(), 1, _phi_gram(A, one, one))


def phi_bc(A, b, c) -> HermForm:
    """The twisted trace form (x, y) -> Trd(sigma(x) b y c) for symmetric
    units b and c; equal to the involution trace form at b = c = 1."""
    if isinstance(A, ProductAlgebra):
        raise SplitCenter("the twisted trace form needs a connected center")
    for m in (b, c):
        if not A.is_symmetric(m, 1):
            raise InvalidEntry("twisting elements must be sigma-symmetric")
        if not A.is_invertible(m):
            raise InvalidEntry("twisting elements must be units")
    return HermForm(A.center_algebra(), 1, _phi_gram(A, b, c))


def star(h1: HermForm, h2: HermForm) -> PairedForm:
    """The pairing of two forms over (A, sigma): a form over the center
    (S, iota) of rank rank(h1) * rank(h2) * rk_S(A), built block by block
    from diagonalizations of both factors."""
    if isinstance(h1, ProductForm) or isinstance(h2, ProductForm):
        raise SplitCenter("the pairing needs a connected center; "
                          "pair component forms individually")
    if h1.algebra != h2.algebra:
        raise AlgebraMismatch("both forms must live over the same algebra")
    A = h1.algebra
    d1 = diagonalize(h1)
    d2 = diagonalize(h2)
    for d in (d1, d2):
        if isinstance(d, Alternating):
            raise NotDiagonalizable("alternating factors have no diagonal "
                                    "presentation to distribute over")
    C = A.center_algebra()
    t = len(A.basis())
    n = d1.rank * d2.rank * t
    czero = C.zero()
    rows = [[czero] * n for _ in range(n)]
    pos = 0
    for b in d1.entries:
        for c in d2.entries:
            block = _phi_gram(A, b, c)
            for p in range(t):
                for q in range(t):
                    rows[pos + p][pos + q] = block[p, q]
            pos += t
    form = HermForm(C, h1.epsilon * h2.epsilon, Matrix(rows))
    return PairedForm(form, h1, h2)


def _base_diagonal(phi: HermForm) -> List:
    """Diagonalize a form over (S, iota) and return its entries as base
    field scalars; iota-symmetry forces them down from S."""
    diag = diagonalize(phi)
    if isinstance(diag, Alternating):
        raise NotDiagonalizable("center form is alternating")
    out = []
    for e in diag.entries:
        val = e[0, 0]
        if isinstance(val, QuadNum):
            if val.y:
                raise InternalError("symmetric diagonal entry escaped the base")
            val = val.x
        out.append(val)
    return out


class SylvesterData:
    """A positivity decomposition at an ordering P: units w, u, v with
    <w> tensor h isometric to <u> tensor <c> + <-v> tensor <c>."""

    __slots__ = ("w", "u", "v", "c", "verification")

    def __init__(self, w, u, v, c, verification: str):
        self.w = list(w)
        self.u = list(u)
        self.v = list(v)
        self.c = c
        self.verification = verification

    def counts(self):
        return len(self.u), len(self.v)

    def to_json(self, algebra=None):
        out = {
            "w": [scalar_to_json(x) for x in self.w],
            "u": [scalar_to_json(x) for x in self.u],
            "v": [scalar_to_json(x) for x in self.v],
            "verification": self.verification,
        }
        if algebra is not None:
            out["c"] = element_to_json(algebra, self.c)
        return out


def _isometry_verdict(lhs: HermForm, rhs: HermForm) -> str:
    if signature_table(lhs) != signature_table(rhs):
        raise InternalError("decomposition fails its signature check")
    try:
        dec = witt_equal(lhs, rhs)
    except UnsupportedBase:
        return "signature"
    if dec.verdict == NOT_EQUAL:
        raise InternalError("decomposition fails its Witt-class check")
    return "witt" if dec.verdict == EQUAL else "signature"


def sylvester_decompose(h: HermForm, c, P) -> SylvesterData:
    """Split <w> tensor h into positive and negative multiples of <c> at the
    ordering P, where c has maximal signature there."""
    if isinstance(h, ProductForm):
        raise UnsupportedCombination("decompose component forms individually")
    A = h.algebra
    ring = A.base_ring
    ring.check_ordering(P)
    if P in A.nil_orderings():
        raise NilOrdering("every signature vanishes at a nil ordering")
    if h.epsilon != 1:
        raise UseSkewPath("the decomposition applies to hermitian forms; "
                          "rescale skew forms through a skew unit first")
    if not h.nonsingular:
        raise SingularForm("the decomposition needs a nonsingular form")
    hc = diag_form(A, 1, [c])
    if signature(hc, P) != A.deg:
        raise NotMaximal("the reference element must have maximal signature at P")
    wvals = _base_diagonal(star(hc, hc).form)
    signs = {ring.sign_at(x, P) for x in wvals}
    if len(signs) != 1:
        raise InternalError("the reference pairing is not definite at P")
    delta = signs.pop()
    w = [delta * x for x in wvals]
    u, v = [], []
    for psi in _base_diagonal(star(h, hc).form):
        scaled = delta * psi
        if ring.sign_at(scaled, P) > 0:
            u.append(scaled)
        else:
            v.append(-scaled)
    lhs = tensor_quadratic(base_diag_form(ring, w), h)
    rhs = orth_sum(
        tensor_quadratic(base_diag_form(ring, u), hc),
        tensor_quadratic(base_diag_form(ring, [-x for x in v]), hc),
    )
    return SylvesterData(w, u, v, c, _isometry_verdict(lhs, rhs))


def psd_sign(A, P, seed: int = 0) -> int:
    """The sign delta making delta * (<c> star <c>) positive semidefinite at P
    for maximal c; evaluated once on a witness and fixed for (A, P)."""
    cert = max_sig_element(A, P, seed=seed)
    if cert.element is None:
        raise NilOrdering("no maximal element exists at a nil ordering")
    hc = diag_form(A, 1, [cert.element])
    phi = star(hc, hc).form
    if is_psd(phi, P):
        return 1
    if is_psd(negate(phi), P):
        return -1
    raise InternalError("reference pairing is neither PSD nor NSD at P")


class NilKillData:
    """A PSD quadratic form q over the base with q tensor h hyperbolic,
    produced at a nil ordering through a twisted involution."""

    __slots__ = ("q", "skew_unit", "c", "verification")

    def __init__(self, q: HermForm, skew_unit, c, verification: str):
        self.q = q
        self.skew_unit = skew_unit
        self.c = c
        self.verification = verification

    def entries(self) -> List:
        return [self.q.gram[i, i][0, 0] for i in range(self.q.rank)]

    def to_json(self, algebra=None):
        out = {
            "q": [scalar_to_json(x) for x in self.entries()],
            "verification": self.verification,
        }
        if algebra is not None:
            out["skew_unit"] = element_to_json(algebra, self.skew_unit)
            out["c"] = element_to_json(algebra, self.c)
        return out


def _skew_unit(A, seed: int, budget: int) -> Matrix:
    basis = A.k_basis()
    coords = [A.to_K_coords(A.sigma(x) + x) for x in basis]
    rows = [[coords[j][i] for j in range(len(basis))]
            for i in range(len(coords[0]))]
    space = field_nullspace(rows)
    if not space:
        raise SearchBudgetExceeded("no skew elements exist for this involution")

    def assemble(weights):
        vec = [A.K.zero] * len(basis)
        for wgt, sol in zip(weights, space):
            if wgt == 0:
                continue
            w = A.K.from_int(wgt)
            vec = [acc + w * s for acc, s in zip(vec, sol)]
        return A.from_K_coords(vec)

    for sol in space:
        cand = A.from_K_coords(list(sol))
        if A.is_invertible(cand):
            return cand
    for i in range(len(space)):
        for j in range(i + 1, len(space)):
            cand = assemble([1 if p in (i, j) else 0 for p in range(len(space))])
            if A.is_invertible(cand):
                return cand
    rng = random.Random(seed)
    for _ in range(budget):
        cand = assemble([rng.randint(-3, 3) for _ in space])
        if cand != A.zero() and A.is_invertible(cand):
            return cand
    raise SearchBudgetExceeded("no invertible skew element found within budget")


def nil_kill(h: HermForm, P, seed: int = 0, budget: int = 200) -> NilKillData:
    """At a nil ordering P, build a PSD quadratic form q of dimension
    rk_S(A) over the base with q tensor h hyperbolic."""
    if isinstance(h, ProductForm):
        raise UnsupportedCombination("kill component forms individually")
    A = h.algebra
    ring = A.base_ring
    ring.check_ordering(P)
    if A.involution_type() == UNITARY:
        raise UnsupportedCombination("unitary involutions have no nil orderings "
                                     "of this kind")
    if P not in A.nil_orderings():
        raise NotNil("the construction starts from a nil ordering")
    if not h.nonsingular:
        raise SingularForm("the construction needs a nonsingular form")
    a = _skew_unit(A, seed, budget)
    twisted = A.twist(a)
    if P in twisted.nil_orderings():
        raise InternalError("twisting by a skew unit failed to open P")
    c = max_sig_element(twisted, P, seed=seed, budget=budget).element
    hc = diag_form(twisted, 1, [c])
    vals = _base_diagonal(star(hc, hc).form)
    signs = {ring.sign_at(x, P) for x in vals}
    if len(signs) != 1:
        raise InternalError("twisted reference pairing is not definite at P")
    delta = signs.pop()
    entries = [delta * x for x in vals]
    q = base_diag_form(ring, entries)
    try:
        verdict = tensor_multiple_hyperbolic(entries, [], h)
    except UnsupportedBase:
        verdict = UNDECIDED
    if verdict == NOT_HYPERBOLIC:
        raise InternalError("kill form failed its hyperbolicity check")
    verification = "hyperbolic" if verdict == HYPERBOLIC else "undecided"
    return NilKillData(q, a, c, verification)


class PfisterKillData:
    """Units w and r with (<w> tensor <<r>>) tensor <a,-b> hyperbolic;
    unpacks as the pair (w, r)."""

    __slots__ = ("w", "r", "c", "verification")

    def __init__(self, w, r, c, verification: str):
        self.w = list(w)
        self.r = list(r)
        self.c = c
        self.verification = verification

    def __iter__(self):
        return iter((self.w, self.r))

    def to_json(self, algebra=None):
        out = {
            "w": [scalar_to_json(x) for x in self.w],
            "r": [scalar_to_json(x) for x in self.r],
            "verification": self.verification,
        }
        if algebra is not None:
            out["c"] = element_to_json(algebra, self.c)
        return out


def pfister_kill(A, a, b, P) -> PfisterKillData:
    """For two elements of maximal signature at P, produce the multiplier
    <w> tensor <<r>> that makes <a, -b> hyperbolic after tensoring."""
    ring = A.base_ring
    ring.check_ordering(P)
    if P in A.nil_orderings():
        raise NilOrdering("every signature vanishes at a nil ordering")
    for m in (a, b):
        if signature(diag_form(A, 1, [m]), P) != A.deg:
            raise NotMaximal("both elements must have maximal signature at P")
    h = diag_form(A, 1, [a, -b])
    dec = sylvester_decompose(h, a, P)
    r = dec.u + dec.v
    try:
        verdict = tensor_multiple_hyperbolic(dec.w, r, h)
    except UnsupportedBase:
        verdict = UNDECIDED
    if verdict == NOT_HYPERBOLIC:
        raise InternalError("Pfister multiple failed its hyperbolicity check")
    verification = "hyperbolic" if verdict == HYPERBOLIC else "undecided"
    return PfisterKillData(dec.w, r, a, verification)

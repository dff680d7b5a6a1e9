"""Witt-class deciders for forms whose base ring is the rationals.

Every nonsingular form is reduced along the same Morita chain as the
signature computation to one of five coefficient shapes: a quadratic form
over the rationals, a nonsingular alternating form, a hermitian form over
a quadratic center, a hermitian form over a division quaternion, or a
skew-hermitian form over a quaternion algebra.  The first four are decided
exactly (Hasse-Minkowski invariants, norm classes, trace-form transfer);
skew-hermitian forms over a division quaternion are the one documented
undecided case.  Split quaternions are recognized by their Hilbert symbols
and eliminated through an explicit splitting into a matrix algebra.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from gmpy2 import is_square, isqrt, mpz

from .algebras import AlgebraWithInvolution
from .baserings import Ordering, RATIONALS
from .errors import (
    InternalError,
    SearchBudgetExceeded,
    SingularForm,
    UnsupportedBase,
)
from .forms import HermForm, ProductForm, negate, orth_sum, scale_unit
from .linalg import Matrix, field_inverse, field_nullspace
from .localsymbols import INF, hilbert_symbol, legendre_symbol, square_class
from .quaternions import Quaternion, QuaternionAlgebra
from .scalars import QuadNum, rat
from .signatures import _diagonal_values, signature_table

HYPERBOLIC = "hyperbolic"
NOT_HYPERBOLIC = "not_hyperbolic"
UNDECIDED = "undecided"
EQUAL = "equal"
NOT_EQUAL = "not_equal"
NOT_TORSION = "not_torsion"

UNSUPPORTED_TAG = "skew-hermitian over a division quaternion"


class QuadInvariants:
    """The complete isometry invariants of a quadratic form over Q."""

    __slots__ = ("dim", "disc", "hasse", "signatures")

    def __init__(self, dim: int, disc: int, hasse: Dict, signatures: Dict[Ordering, int]):
        self.dim = dim
        self.disc = disc
        self.hasse = hasse
        self.signatures = signatures

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadInvariants):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.disc == other.disc
            and self.hasse == other.hasse
            and self.signatures == other.signatures
        )

    def __repr__(self) -> str:
        return f"QuadInvariants(dim={self.dim}, disc={self.disc}, hasse={self.hasse})"

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "disc": self.disc,
            "hasse": {str(v): s for v, s in sorted(self.hasse.items(), key=str)},
            "signatures": {p.key(): s for p, s in self.signatures.items()},
        }


class WittDecision:
    """A hyperbolicity or Witt-equality verdict with its certificate."""

    __slots__ = ("verdict", "certificate")

    def __init__(self, verdict: str, certificate: dict):
        self.verdict = verdict
        self.certificate = certificate

    def __repr__(self) -> str:
        return f"WittDecision({self.verdict})"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "certificate": self.certificate}


def _odd_support(classes: List[int]) -> List[int]:
    primes = set()
    for v in classes:
        n = abs(int(v))
        while n % 2 == 0:
            n //= 2
        p = 3
        while p * p <= n:
            if n % p == 0:
                primes.add(p)
                while n % p == 0:
                    n //= p
            p += 2
        if n > 1:
            primes.add(n)
    return sorted(primes)


def _places_for(classes: List[int]) -> List:
    return [INF, 2] + _odd_support(classes)


def _hasse_symbol(classes: List[int], v) -> int:
    # c(q + <a>) = c(q) * (det q, a), folded left to right
    s, d = 1, 1
    for a in classes:
        s *= hilbert_symbol(d, a, v)
        d = square_class(d * a)
    return s


def _invariants_of_rationals(entries: List) -> QuadInvariants:
    n = len(entries)
    prod = rat(1)
    sig = 0
    for a in entries:
        prod *= a
        sig += 1 if a > 0 else -1
    disc = square_class(prod * (-1) ** (n * (n - 1) // 2)) if n else 1
    classes = [square_class(a) for a in entries]
    hasse = {}
    for v in _places_for(classes):
        if _hasse_symbol(classes, v) == -1:
            hasse[v] = -1
    return QuadInvariants(n, disc, hasse, {Ordering(0, 1): sig})


def _hyperbolic_reference(dim: int) -> QuadInvariants:
    return _invariants_of_rationals([rat(1), rat(-1)] * (dim // 2))


def quad_invariants(q) -> QuadInvariants:
    """Hasse-Minkowski invariants of a nonsingular quadratic form over Q."""
    tag, payload = _reduce(q)
    if tag == "zero":
        return _invariants_of_rationals([])
    if tag != "quadratic":
        raise UnsupportedBase("invariants require a form of quadratic shape over Q")
    return _invariants_of_rationals(payload)


def isometric(q1, q2) -> bool:
    """Isometry of quadratic forms over Q, by completeness of the invariants."""
    return quad_invariants(q1) == quad_invariants(q2)


def _is_split(a, b) -> bool:
    ca, cb = square_class(a), square_class(b)
    return all(hilbert_symbol(ca, cb, v) == 1 for v in _places_for([ca, cb]))


def _rational_sqrt(x):
    """Exact square root of a positive rational that is a perfect square."""
    q = rat(x)
    return rat(int(isqrt(mpz(q.numerator))), int(isqrt(mpz(q.denominator))))


def _norm_zero_vector(a, b, bound: int = 600) -> Tuple:
    """Rational (x, y, z) != 0 with a*x^2 + b*y^2 = z^2, for split (a, b)."""
    ca, cb = square_class(a), square_class(b)
    sa = _rational_sqrt(rat(a) / ca)
    sb = _rational_sqrt(rat(b) / cb)
    for h in range(1, bound + 1):
        for x in range(h + 1):
            for y in range(h + 1) if x == h else (h,):
                val = ca * x * x + cb * y * y
                if val >= 0 and is_square(mpz(val)):
                    return rat(x) / sa, rat(y) / sb, rat(int(isqrt(mpz(val))))
    raise SearchBudgetExceeded("no isotropic vector found for a split norm form")


class _SplitEmbedding:
    """An explicit isomorphism from a split quaternion algebra to M_2(Q).

    Built from a zero divisor q0: the left ideal A*q0 is two-dimensional
    over Q and left multiplication on it realizes the splitting.  The
    conjugation involution is transported to Int(u) o transpose on the
    matrix side.
    """

    def __init__(self, quat: QuaternionAlgebra, base_ring):
        x, y, z = _norm_zero_vector(quat.a, quat.b)
        q0 = quat.element(z, x, y, 0)
        if q0.nrd() or not q0:
            raise InternalError("splitting seed is not a nonzero zero divisor")
        self.quat = quat
        basis = [quat.one(), quat.i(), quat.j(), quat.k()]
        ideal = []
        probe = []
        for p in basis:
            v = p * q0
            if self._independent(probe, list(v.coords())):
                ideal.append(v)
            if len(ideal) == 2:
                break
        if len(ideal) != 2:
            raise InternalError("left ideal of a zero divisor is not a plane")
        self._f = ideal
        cols = [list(f.coords()) for f in ideal]
        self._rows = self._pivot_rows(cols)
        r1, r2 = self._rows
        m22 = Matrix([[cols[0][r1], cols[1][r1]], [cols[0][r2], cols[1][r2]]])
        inv = field_inverse(m22, rat(1))
        if inv is None:
            raise InternalError("ideal coordinate frame is singular")
        self._solve = inv
        # transport matrix for the inverse map, columns indexed by basis
        tcols = [self._vec(self.to_matrix(p)) for p in basis]
        tmat = Matrix([[tcols[j][i] for j in range(4)] for i in range(4)])
        tinv = field_inverse(tmat, rat(1))
        if tinv is None:
            raise InternalError("splitting map is not invertible")
        self._tinv = tinv
        self.algebra = self._transported_algebra(base_ring, basis)

    @staticmethod
    def _independent(probe: List[List], coords: List) -> bool:
        row = list(coords)
        for seen in probe:
            lead = next(i for i, c in enumerate(seen) if c)
            if row[lead]:
                f = row[lead] / seen[lead]
                row = [r - f * s for r, s in zip(row, seen)]
        if any(row):
            probe.append(row)
            return True
        return False

    @staticmethod
    def _pivot_rows(cols: List[List]) -> Tuple[int, int]:
        for r1 in range(4):
            for r2 in range(r1 + 1, 4):
                if cols[0][r1] * cols[1][r2] != cols[0][r2] * cols[1][r1]:
                    return r1, r2
        raise InternalError("ideal basis columns are proportional")

    @staticmethod
    def _vec(m: Matrix) -> List:
        return [m[0, 0], m[0, 1], m[1, 0], m[1, 1]]

    def to_matrix(self, q: Quaternion) -> Matrix:
        r1, r2 = self._rows
        cols = []
        for f in self._f:
            w = q * f
            c = list(w.coords())
            sol = self._solve * Matrix([[c[r1]], [c[r2]]])
            cols.append((sol[0, 0], sol[1, 0]))
        return Matrix([[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]])

    def from_matrix(self, m: Matrix) -> Quaternion:
        vec = Matrix([[v] for v in self._vec(m)])
        c = self._tinv * vec
        return self.quat.element(c[0, 0], c[1, 0], c[2, 0], c[3, 0])

    def _transported_algebra(self, base_ring, basis) -> AlgebraWithInvolution:
        images = [self.to_matrix(p) for p in basis]
        conj_images = [self.to_matrix(p.conj()) for p in basis]
        # solve sigma'(B) * U = U * B^t for U, linear in the four entries
        rows = []
        for b, cb in zip(images, conj_images):
            for i in range(2):
                for j in range(2):
                    row = []
                    for p in range(2):
                        for q in range(2):
                            coef = cb[i, p] if q == j else rat(0)
                            if p == i:
                                coef = coef - b[j, q]
                            row.append(coef)
                    rows.append(row)
        for sol in field_nullspace(rows):
            u = Matrix([[sol[0], sol[1]], [sol[2], sol[3]]])
            if u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]:
                alg = AlgebraWithInvolution(base_ring, k=2, u=u)
                for p, img in zip(basis, images):
                    if alg.sigma(img) != self.to_matrix(p.conj()):
                        raise InternalError("transported involution mismatch")
                return alg
        raise InternalError("no invertible unit transports the involution")


def _split_gram(emb: _SplitEmbedding, dvals: List[Quaternion]) -> Matrix:
    n = len(dvals)
    zero = emb.algebra.zero()
    rows = [[emb.to_matrix(dvals[i]) if i == j else zero for j in range(n)]
            for i in range(n)]
    return Matrix(rows)


def _reduce(h: HermForm):
    """Canonical coefficient shape of h: a tag plus the data the deciders use."""
    A = h.algebra
    if A.base_ring.kind != RATIONALS:
        raise UnsupportedBase("Witt decisions are implemented over base Q")
    if h.rank == 0:
        return "zero", None
    if not h.nonsingular:
        raise SingularForm("Witt decisions require a nonsingular form")
    if A.center_d is not None and h.epsilon == -1:
        lam = A.scalar_elem(QuadNum(A.S, A.K.zero, A.K.one))
        h = scale_unit(h, lam)
        A = h.algebra
    dvals, calg, eps = _diagonal_values(h)
    if dvals is None:
        return "alternating", None
    if calg.quat is not None:
        qa = calg.quat
        if eps == 1:
            ws = []
            for p in dvals:
                if p.x or p.y or p.z:
                    raise InternalError("hermitian quaternion slot is not scalar")
                ws.append(p.w)
            return "quat_herm", (qa, ws)
        for p in dvals:
            if p.w:
                raise InternalError("skew quaternion slot is not pure")
        if not _is_split(qa.a, qa.b):
            return "quat_skew_division", None
        emb = _SplitEmbedding(qa, A.base_ring)
        return _reduce(HermForm(emb.algebra, -1, _split_gram(emb, dvals)))
    if calg.center_d is not None:
        xs = []
        for p in dvals:
            if p.y:
                raise InternalError("hermitian center slot has a lambda part")
            xs.append(p.x)
        return "unitary", (calg.center_d, xs)
    if eps == -1:
        raise InternalError("nonsingular skew base form escaped the alternating branch")
    return "quadratic", list(dvals)


def _decide(tag: str, payload) -> WittDecision:
    if tag == "zero":
        return WittDecision(HYPERBOLIC, {"case": "zero rank"})
    if tag == "alternating":
        return WittDecision(HYPERBOLIC, {"case": "alternating"})
    if tag == "quat_skew_division":
        return WittDecision(UNDECIDED, {"unsupported": UNSUPPORTED_TAG})
    if tag == "quadratic":
        inv = _invariants_of_rationals(payload)
        ok = inv.dim % 2 == 0 and inv == _hyperbolic_reference(inv.dim)
        return WittDecision(
            HYPERBOLIC if ok else NOT_HYPERBOLIC,
            {"case": "quadratic", "invariants": inv.to_json()},
        )
    if tag == "unitary":
        d, xs = payload
        r = len(xs)
        cert = {"case": "unitary", "d": square_class(d), "rank": r}
        if r % 2 == 1:
            return WittDecision(NOT_HYPERBOLIC, cert)
        if cert["d"] < 0:
            sig = sum(1 if x > 0 else -1 for x in xs)
            cert["signature"] = sig
            if sig != 0:
                return WittDecision(NOT_HYPERBOLIC, cert)
        disc = rat(1)
        for x in xs:
            disc *= x
        target = square_class(disc * (-1) ** (r // 2))
        cert["norm_class"] = target
        ok = all(
            hilbert_symbol(cert["d"], target, v) == 1
            for v in _places_for([cert["d"], target])
        )
        return WittDecision(HYPERBOLIC if ok else NOT_HYPERBOLIC, cert)
    if tag == "quat_herm":
        qa, ws = payload
        entries = []
        for w in ws:
            entries.extend(
                [2 * w, -2 * qa.a * w, -2 * qa.b * w, 2 * qa.a * qa.b * w]
            )
        inv = _invariants_of_rationals(entries)
        ok = inv == _hyperbolic_reference(inv.dim)
        return WittDecision(
            HYPERBOLIC if ok else NOT_HYPERBOLIC,
            {"case": "quaternion transfer", "invariants": inv.to_json()},
        )
    raise InternalError(f"unknown reduction tag {tag!r}")


def is_hyperbolic(h) -> WittDecision:
    """Hyperbolicity of a nonsingular form; Undecided only for the skew
    division-quaternion case."""
    if isinstance(h, ProductForm):
        parts = [is_hyperbolic(c) for c in h.components]
        verdicts = [p.verdict for p in parts]
        if NOT_HYPERBOLIC in verdicts:
            verdict = NOT_HYPERBOLIC
        elif UNDECIDED in verdicts:
            verdict = UNDECIDED
        else:
            verdict = HYPERBOLIC
        return WittDecision(verdict, {"components": [p.to_json() for p in parts]})
    return _decide(*_reduce(h))


def witt_equal(h1, h2) -> WittDecision:
    """Equality of Witt classes, decided through is_hyperbolic(h1 - h2)."""
    dec = is_hyperbolic(orth_sum(h1, negate(h2)))
    mapping = {HYPERBOLIC: EQUAL, NOT_HYPERBOLIC: NOT_EQUAL, UNDECIDED: UNDECIDED}
    return WittDecision(mapping[dec.verdict], dec.certificate)


def _double(tag: str, payload):
    if tag == "quadratic":
        return payload + payload
    if tag == "unitary":
        d, xs = payload
        return d, xs + xs
    if tag == "quat_herm":
        qa, ws = payload
        return qa, ws + ws
    return payload


def plg_minimal_n(h, n_max: int = 8):
    """Least n with 2^n copies of h hyperbolic; NOT_TORSION when a nonzero
    signature obstructs every multiple, UNDECIDED on the unsupported case."""
    if any(signature_table(h).values()):
        return NOT_TORSION
    if isinstance(h, ProductForm):
        outcomes = [plg_minimal_n(c, n_max) for c in h.components]
        if NOT_TORSION in outcomes:
            return NOT_TORSION
        if UNDECIDED in outcomes:
            return UNDECIDED
        return max(outcomes)
    tag, payload = _reduce(h)
    for n in range(n_max + 1):
        dec = _decide(tag, payload)
        if dec.verdict == HYPERBOLIC:
            return n
        if dec.verdict == UNDECIDED:
            return UNDECIDED
        payload = _double(tag, payload)
    raise InternalError("2-power multiples stayed non-hyperbolic past n_max")


def _is_square_at(d: int, v) -> bool:
    if v == INF:
        return d > 0
    if v == 2:
        return d % 2 == 1 and d % 8 == 1
    if d % v == 0:
        return False
    return legendre_symbol(d, v) == 1


def _isotropic_rationals(entries: List) -> bool:
    n = len(entries)
    if n <= 1:
        return False
    classes = [square_class(a) for a in entries]
    if n == 2:
        return square_class(-classes[0] * classes[1]) == 1
    pos = sum(1 for a in entries if a > 0)
    if n >= 5:
        return 0 < pos < n
    det = square_class(classes[0] * classes[1] * classes[2] * (classes[3] if n == 4 else 1))
    for v in _places_for(classes):
        c = _hasse_symbol(classes, v)
        if n == 3:
            if hilbert_symbol(-1, -det, v) != c:
                return False
        else:
            if _is_square_at(det, v) and c != hilbert_symbol(-1, -1, v):
                return False
    return True


def is_isotropic(q) -> bool:
    """Whether a quadratic form over Q has a nontrivial rational zero."""
    tag, payload = _reduce(q)
    if tag == "zero":
        return False
    if tag != "quadratic":
        raise UnsupportedBase("isotropy decisions require quadratic shape over Q")
    return _isotropic_rationals(payload)


class _QuadClass:
    """Dimension, determinant class, Hasse symbols and signature of a
    quadratic form over Q, carried compositionally so tensor powers never
    have to be written out."""

    __slots__ = ("places", "dim", "det", "hasse", "sig")

    def __init__(self, places, dim, det, hasse, sig):
        self.places = places
        self.dim = dim
        self.det = det
        self.hasse = hasse
        self.sig = sig

    @classmethod
    def of(cls, places, entries) -> "_QuadClass":
        det, sig = 1, 0
        hasse = {v: 1 for v in places}
        for a in entries:
            ca = square_class(a)
            for v in places:
                hasse[v] *= hilbert_symbol(det, ca, v)
            det = square_class(det * ca)
            sig += 1 if a > 0 else -1
        return cls(places, len(entries), det, hasse, sig)

    def combine(self, other: "_QuadClass") -> "_QuadClass":
        hasse = {v: self.hasse[v] * other.hasse[v]
                 * hilbert_symbol(self.det, other.det, v)
                 for v in self.places}
        return _QuadClass(self.places, self.dim + other.dim,
                          square_class(self.det * other.det), hasse,
                          self.sig + other.sig)

    def scale(self, a) -> "_QuadClass":
        ca = square_class(a)
        n = self.dim
        hasse = {
            v: self.hasse[v]
            * hilbert_symbol(ca, ca, v) ** (n * (n - 1) // 2 % 2)
            * hilbert_symbol(ca, self.det, v) ** ((n - 1) % 2)
            for v in self.places
        }
        det = square_class(ca ** (n % 2) * self.det)
        return _QuadClass(self.places, n, det, hasse,
                          self.sig if a > 0 else -self.sig)

    def tensor_binary(self, u) -> "_QuadClass":
        return self.combine(self.scale(u))

    def is_hyperbolic_class(self) -> bool:
        if self.dim % 2 or self.sig != 0:
            return False
        m = self.dim // 2
        if self.det != square_class((-1) ** m):
            return False
        return all(self.hasse[v] == hilbert_symbol(-1, -1, v) ** (m * (m - 1) // 2 % 2)
                   for v in self.places)


def tensor_multiple_hyperbolic(w_entries, r_entries, h) -> str:
    """Verdict for hyperbolicity of (<w> tensor <<r1,...,rl>>) tensor h,
    computed from invariant arithmetic without expanding the 2^l factor."""
    tag, payload = _reduce(h)
    if tag in ("zero", "alternating"):
        return HYPERBOLIC
    if tag == "quat_skew_division":
        return UNDECIDED
    if tag == "quat_herm":
        qa, ws = payload
        psi = []
        for w in ws:
            psi.extend([2 * w, -2 * qa.a * w, -2 * qa.b * w, 2 * qa.a * qa.b * w])
        tag, payload = "quadratic", psi
    scalars = list(w_entries) + list(r_entries)
    if tag == "quadratic":
        scalars += payload
    else:
        d, xs = payload
        scalars += [d] + list(xs)
    places = _places_for([square_class(s) for s in scalars])
    q = _QuadClass.of(places, w_entries)
    for u in r_entries:
        q = q.tensor_binary(u)
    if tag == "quadratic":
        total = _QuadClass.of(places, [])
        for e in payload:
            total = total.combine(q.scale(e))
        return HYPERBOLIC if total.is_hyperbolic_class() else NOT_HYPERBOLIC
    d, xs = payload
    dc = square_class(d)
    rank = q.dim * len(xs)
    if rank % 2:
        return NOT_HYPERBOLIC
    if dc < 0:
        sig = q.sig * sum(1 if x > 0 else -1 for x in xs)
        if sig != 0:
            return NOT_HYPERBOLIC
    xdet = 1
    for x in xs:
        xdet = square_class(xdet * square_class(x))
    disc = square_class(q.det ** (len(xs) % 2) * xdet ** (q.dim % 2))
    target = square_class(disc * (-1) ** (rank // 2))
    ok = all(hilbert_symbol(dc, target, v) == 1
             for v in _places_for([dc, target]))
    return HYPERBOLIC if ok else NOT_HYPERBOLIC

"""Matrix algebras with involution over exact base fields.

Supported shapes, all over a connected base field K (Q or Q(sqrt(m))):

* M_k(K) with the transpose, or an inner twist of it (orthogonal/symplectic),
* M_k((a,b)_K) with quaternion conjugate-transpose or a twist (symplectic/
  orthogonal),
* M_k(S) for a quadratic extension S = K(sqrt(d)) with conjugate-transpose
  or a twist (unitary).

An element is a k x k Matrix whose entries are field scalars or quaternions.
The canonical involution theta is conjugate-transpose; a general involution
is sigma = Int(u) o theta with theta(u) = delta*u, delta in {-1, +1}.

The Goldman element lives in A tensor_S A and is found by solving the sparse
linear system expressing that its sandwich action realizes the reduced trace;
the defining identities are re-verified exactly before it is returned.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .baserings import BaseRing, Ordering
from .errors import (
    InternalError,
    InvalidEntry,
    InvalidScalar,
    NotAnInvolution,
    SingularUnit,
    UnsupportedCombination,
)
from .linalg import Matrix, field_nullspace, field_solve, sparse_solve_unique
from .quaternions import QuaternionAlgebra
from .scalars import QuadNum, QuadraticField, scalar_inverse

ORTHOGONAL = "orthogonal"
SYMPLECTIC = "symplectic"
UNITARY = "unitary"


class AlgebraWithInvolution:
    """M_k(D) over a connected base, with involution Int(u) o theta."""

    is_product = False

    def __init__(
        self,
        base_ring: BaseRing,
        center_d=None,
        quat_params: Optional[Tuple] = None,
        k: int = 1,
        u: Optional[Matrix] = None,
    ):
        if base_ring.is_product:
            raise UnsupportedCombination(
                "algebras are built per connected base component"
            )
        if k < 1:
            raise InvalidEntry("matrix size must be >= 1")
        if quat_params is not None and center_d is not None:
            raise UnsupportedCombination(
                "quaternion coefficients require a trivial center"
            )
        self.base_ring = base_ring
        self.K = base_ring.field
        self.k = k
        self.quat = None
        self.center_d = None
        if quat_params is not None:
            a, b = quat_params
            self.quat = QuaternionAlgebra(self.K, a, b)
            self.S = self.K
        elif center_d is not None:
            d = self.K.coerce(center_d)
            if d is None:
                raise InvalidScalar("center parameter d must lie in the base field")
            self.S = QuadraticField(self.K, d)
            self.center_d = self.S.d
        else:
            self.S = self.K
        self.dD = 4 if self.quat is not None else 1
        self.center_dim = 2 if self.center_d is not None else 1
        self.t = k * k * self.dD
        self.deg = k * (2 if self.quat is not None else 1)
        self.dim_K = self.t * self.center_dim
        self._basis: Optional[List[Matrix]] = None
        self._k_basis: Optional[List[Matrix]] = None
        self._mono: Optional[List[List[Optional[Tuple[int, object]]]]] = None
        self._sigma_coords: Optional[List[List[Tuple[int, object]]]] = None
        self._goldman: Optional[TensorElement] = None
        self._decomp: Optional[Tuple[Matrix, int]] = None
        if u is None:
            self.u = self.one()
            self.delta = 1
            self.is_canonical = True
        else:
            self.u = self._check_element(u)
            self.is_canonical = self.u == self.one()
            self.u_inv = self.invert(self.u)
            tu = self.theta(self.u)
            if tu == self.u:
                self.delta = 1
            elif tu == -self.u:
                self.delta = -1
            else:
                raise NotAnInvolution("theta(u) is not +u or -u")
            for b in self.basis():
                if self.sigma(self.sigma(b)) != b:
                    raise InternalError("sigma fails to square to the identity")
        if self.is_canonical:
            self.u_inv = self.u

    # -- identification --------------------------------------------------

    def __repr__(self) -> str:
        if self.quat is not None:
            coeff = f"({self.quat.a},{self.quat.b})"
        elif self.center_d is not None:
            coeff = f"{self.K!r}(sqrt({self.center_d}))"
        else:
            coeff = repr(self.K)
        inv = "canonical" if self.is_canonical else "inner"
        return f"M_{self.k}({coeff}; {inv})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraWithInvolution):
            return NotImplemented
        return (
            self.base_ring == other.base_ring
            and self.k == other.k
            and self.center_d == other.center_d
            and (
                (self.quat is None) == (other.quat is None)
                and (self.quat is None or self.quat == other.quat)
            )
            and self.u == other.u
        )

    def __hash__(self):
        return hash(
            (self.base_ring, self.k, str(self.center_d), self.quat, str(self.u))
        )

    # -- entries and elements ---------------------------------------------

    def entry_zero(self):
        return self.quat.zero() if self.quat is not None else self.S.zero

    def entry_one(self):
        return self.quat.one() if self.quat is not None else self.S.one

    def entry_coerce(self, v):
        target = self.quat if self.quat is not None else self.S
        e = target.coerce(v)
        if e is None:
            raise InvalidEntry(f"{v!r} is not a coefficient of {self!r}")
        return e

    def entry_conj(self, e):
        if self.quat is not None or self.center_d is not None:
            return e.conj()
        return e

    def _check_element(self, x: Matrix) -> Matrix:
        if not isinstance(x, Matrix) or x.nrows != self.k or x.ncols != self.k:
            raise InvalidEntry(f"elements of {self!r} are {self.k}x{self.k} matrices")
        return x.map(self.entry_coerce)

    def element(self, rows: Sequence[Sequence]) -> Matrix:
        return Matrix([[self.entry_coerce(e) for e in r] for r in rows])

    def zero(self) -> Matrix:
        return Matrix.zeros(self.k, self.k, self.entry_zero())

    def one(self) -> Matrix:
        return Matrix.diagonal([self.entry_one()] * self.k, self.entry_zero())

    def diag(self, entries: Sequence) -> Matrix:
        return Matrix.diagonal(
            [self.entry_coerce(e) for e in entries], self.entry_zero()
        )

    def scalar_elem(self, s) -> Matrix:
        """s * identity for a center scalar s."""
        return Matrix.diagonal([self.entry_coerce(s)] * self.k, self.entry_zero())

    def scale_center(self, s, x: Matrix) -> Matrix:
        """Multiply an element by a center scalar."""
        s = self.S.coerce(s)
        if s is None:
            raise InvalidScalar(f"{s!r} is not a center scalar")
        return x.scale_left(s)

    # -- involution machinery ----------------------------------------------

    def theta(self, x: Matrix) -> Matrix:
        """Canonical involution: conjugate transpose."""
        return x.transpose().map(self.entry_conj)

    def sigma(self, x: Matrix) -> Matrix:
        if self.is_canonical:
            return self.theta(x)
        return self.u * self.theta(x) * self.u_inv

    def iota(self, s):
        """The involution restricted to the center."""
        if self.center_d is not None:
            return s.conj()
        return s

    def center_lambda(self):
        if self.center_d is None:
            raise UnsupportedCombination("the center has no sqrt(d) generator")
        return self.S.gen

    def reduced_trace(self, x: Matrix):
        """Trd: matrix trace of entry-level reduced traces, valued in S."""
        acc = self.S.zero if self.quat is None else self.K.zero
        for i in range(self.k):
            e = x[i, i]
            acc = acc + (e.trd() if self.quat is not None else e)
        return acc

    def center_trace(self, s):
        """Tr_{S/K} on the center (identity when S = K)."""
        if self.center_d is not None:
            return s.trace()
        return s

    def involution_type(self) -> str:
        if self.center_d is not None:
            return UNITARY
        canonical = SYMPLECTIC if self.quat is not None else ORTHOGONAL
        if self.delta == -1:
            return ORTHOGONAL if canonical == SYMPLECTIC else SYMPLECTIC
        return canonical

    def nil_orderings(self) -> List[Ordering]:
        """Orderings at which every form over this algebra has signature 0."""
        ring = self.base_ring
        places = ring.orderings()
        typ = self.involution_type()
        if typ == UNITARY:
            return [p for p in places if ring.sign_at(self.center_d, p) > 0]
        if self.quat is None:
            return places if typ == SYMPLECTIC else []
        a, b = self.quat.a, self.quat.b
        if typ == ORTHOGONAL:
            return [
                p
                for p in places
                if ring.sign_at(a, p) < 0 and ring.sign_at(b, p) < 0
            ]
        return [
            p for p in places if ring.sign_at(a, p) > 0 or ring.sign_at(b, p) > 0
        ]

    # -- bases and coordinates ----------------------------------------------

    def _dbasis(self) -> List:
        if self.quat is not None:
            return list(self.quat.basis())
        return [self.S.one]

    def basis(self) -> List[Matrix]:
        """The monomial S-basis: e_ij * d, (i,j) row-major, d over 1,i,j,k."""
        if self._basis is None:
            out = []
            zero = self.entry_zero()
            for i in range(self.k):
                for j in range(self.k):
                    for d in self._dbasis():
                        rows = [[zero] * self.k for _ in range(self.k)]
                        rows[i][j] = d
                        out.append(Matrix(rows))
            self._basis = out
        return self._basis

    def basis_labels(self) -> List[str]:
        dnames = ["1", "i", "j", "k"][: self.dD]
        out = []
        for i in range(self.k):
            for j in range(self.k):
                for d in dnames:
                    name = f"e{i}{j}" if self.k > 1 else ""
                    if d != "1" or not name:
                        name = (name + "*" + d if name else d)
                    out.append(name)
        return out

    def k_basis(self) -> List[Matrix]:
        """Basis over K: the S-basis, doubled by lambda for a quadratic center."""
        if self._k_basis is None:
            if self.center_d is None:
                self._k_basis = list(self.basis())
            else:
                lam = self.center_lambda()
                out = []
                for b in self.basis():
                    out.append(b)
                    out.append(b.scale_left(lam))
                self._k_basis = out
        return self._k_basis

    def to_S_coords(self, x: Matrix) -> List:
        out = []
        for i in range(self.k):
            for j in range(self.k):
                e = x[i, j]
                if self.quat is not None:
                    out.extend(e.coords())
                else:
                    out.append(e)
        return out

    def from_S_coords(self, coords: Sequence) -> Matrix:
        acc = self.zero()
        for c, b in zip(coords, self.basis()):
            if c:
                acc = acc + b.scale_left(c)
        return acc

    def to_K_coords(self, x: Matrix) -> List:
        if self.center_d is None:
            return self.to_S_coords(x)
        out = []
        for s in self.to_S_coords(x):
            out.extend((s.x, s.y))
        return out

    def from_K_coords(self, coords: Sequence) -> Matrix:
        if self.center_d is None:
            return self.from_S_coords(coords)
        scalars = [
            QuadNum(self.S, coords[2 * i], coords[2 * i + 1])
            for i in range(self.t)
        ]
        return self.from_S_coords(scalars)

    # -- inversion ---------------------------------------------------------

    def left_mult_matrix(self, x: Matrix) -> Matrix:
        """The K-linear matrix of v -> x*v on the K-basis."""
        cols = [self.to_K_coords(x * b) for b in self.k_basis()]
        return Matrix(list(zip(*cols)))

    def invert(self, x: Matrix) -> Matrix:
        m = self.left_mult_matrix(x)
        rhs = Matrix([[c] for c in self.to_K_coords(self.one())])
        sol = field_solve(m, rhs)
        if sol is None:
            raise SingularUnit(f"{x!r} is not invertible in {self!r}")
        return self.from_K_coords([sol[i, 0] for i in range(self.dim_K)])

    def is_invertible(self, x: Matrix) -> bool:
        try:
            self.invert(x)
            return True
        except SingularUnit:
            return False

    def is_symmetric(self, x: Matrix, epsilon: int = 1) -> bool:
        s = self.sigma(x)
        return s == x if epsilon == 1 else s == -x

    # -- structure constants ------------------------------------------------

    def _qtable(self):
        table = []
        for q1 in self.quat.basis():
            row = []
            for q2 in self.quat.basis():
                p = q1 * q2
                coords = p.coords()
                nz = [(idx, c) for idx, c in enumerate(coords) if c]
                if len(nz) != 1:
                    raise InternalError("quaternion basis product not monomial")
                row.append(nz[0])
            table.append(row)
        return table

    def basis_product(self, p: int, q: int) -> Optional[Tuple[int, object]]:
        """b_p * b_q as (index, S-coefficient), or None when the product is 0."""
        if self._mono is None:
            k, dd = self.k, self.dD
            qt = self._qtable() if self.quat is not None else [[(0, self.S.one)]]
            mono: List[List[Optional[Tuple[int, object]]]] = [
                [None] * self.t for _ in range(self.t)
            ]
            for p1 in range(self.t):
                pos1, d1 = divmod(p1, dd)
                i1, j1 = divmod(pos1, k)
                for p2 in range(self.t):
                    pos2, d2 = divmod(p2, dd)
                    i2, j2 = divmod(pos2, k)
                    if j1 != i2:
                        continue
                    dm, coeff = qt[d1][d2]
                    mono[p1][p2] = ((i1 * k + j2) * dd + dm, self.S.coerce(coeff))
            self._mono = mono
        return self._mono[p][q]

    def sigma_basis_coords(self, p: int) -> List[Tuple[int, object]]:
        if self._sigma_coords is None:
            coords = []
            for b in self.basis():
                sc = self.to_S_coords(self.sigma(b))
                coords.append([(r, c) for r, c in enumerate(sc) if c])
            self._sigma_coords = coords
        return self._sigma_coords[p]

    # -- Goldman element -----------------------------------------------------

    def goldman_element(self) -> "TensorElement":
        """The unique g in A (x) A whose sandwich action is Trd(.)*1."""
        if self._goldman is not None:
            return self._goldman
        t = self.t
        rows: List[Dict[int, object]] = [dict() for _ in range(t * t)]
        rhs = [self.S.zero] * (t * t)
        trd = [self.reduced_trace(b) for b in self.basis()]
        one_coords = self.to_S_coords(self.one())
        for r in range(t):
            for s, c in enumerate(one_coords):
                v = trd[r] if self.quat is None else self.S.coerce(trd[r])
                rhs[r * t + s] = v * c
            for p in range(t):
                m1 = self.basis_product(p, r)
                if m1 is None:
                    continue
                mid, c1 = m1
                for q in range(t):
                    m2 = self.basis_product(mid, q)
                    if m2 is None:
                        continue
                    s, c2 = m2
                    row = rows[r * t + s]
                    col = p * t + q
                    prev = row.get(col)
                    val = c1 * c2 if prev is None else prev + c1 * c2
                    if val:
                        row[col] = val
                    elif prev is not None:
                        del row[col]
        try:
            sol = sparse_solve_unique(rows, rhs, t * t)
        except InternalError as exc:
            raise InternalError(f"sandwich system is singular: {exc}") from exc
        g = TensorElement(
            self, {(p, q): sol[p * t + q] for p in range(t) for q in range(t)}
        )
        if g * g != TensorElement.from_pair(self, self.one(), self.one()):
            raise InternalError("computed Goldman candidate fails g*g = 1")
        if g.sigma_sigma() != g:
            raise InternalError("computed Goldman candidate is not sigma-invariant")
        for r in range(t):
            if g.sandwich(self.basis()[r]) != self.scalar_elem(trd[r]):
                raise InternalError("computed Goldman candidate fails the trace law")
        self._goldman = g
        return g

    # -- involution decomposition ---------------------------------------------

    def decompose_involution(self) -> Tuple[Matrix, int]:
        """Recover (u, delta) with sigma = Int(u) o theta, theta(u) = delta*u.

        The result is normalized (leading center coordinate scaled to 1) so
        that equal involutions always yield the same pair.
        """
        if self._decomp is None:
            self._decomp = self._decompose_involution()
        return self._decomp

    def _decompose_involution(self) -> Tuple[Matrix, int]:
        if self.is_canonical or all(
            self.sigma(b) == self.theta(b) for b in self.basis()
        ):
            # Int(u) acts trivially (canonical, or u central as in a
            # commutative algebra): theta itself is the decomposition
            return self.one(), 1
        kb = self.k_basis()
        rows = []
        for x in kb:
            sx = self.sigma(x)
            tx = self.theta(x)
            cols = [self.to_K_coords(sx * v - v * tx) for v in kb]
            for out_idx in range(self.dim_K):
                rows.append([cols[j][out_idx] for j in range(self.dim_K)])
        basis_vecs = field_nullspace(rows)
        if not basis_vecs:
            raise InternalError("involution decomposition system has no solution")
        v = self.from_K_coords(basis_vecs[0])
        tv = self.theta(v)
        sc = self.to_S_coords(v)
        lead = next(i for i, c in enumerate(sc) if c)
        c = self.to_S_coords(tv)[lead] * scalar_inverse(sc[lead])
        if tv != self.scale_center(c, v):
            raise InternalError("theta does not preserve the solution line")
        if c == self.S.one:
            delta = 1
        elif c == -self.S.one:
            delta = -1
        elif self.center_d is None:
            raise InternalError("theta eigenvalue on the solution line is not +-1")
        else:
            # unitary freedom: Hilbert-90 rescale to the theta-fixed line
            v = self.scale_center(c + self.S.one, v)
            delta = 1
        sc = self.to_S_coords(v)
        lead_c = next(c0 for c0 in sc if c0)
        if self.center_d is not None and lead_c.y:
            norm = lead_c.x if lead_c.x else lead_c.y
        else:
            norm = lead_c
        v = v.scale_left(scalar_inverse(self.S.coerce(norm)))
        v_inv = self.invert(v)
        for b in self.basis():
            if self.sigma(b) != v * self.theta(b) * v_inv:
                raise InternalError("decomposition fails to reproduce sigma")
        tv = self.theta(v)
        if tv != (v if delta == 1 else -v):
            raise InternalError("normalized u lost its theta symmetry")
        return v, delta

    # -- related algebras -------------------------------------------------------

    def center_algebra(self) -> "AlgebraWithInvolution":
        """(S, iota) as a rank-1 algebra with involution."""
        return AlgebraWithInvolution(self.base_ring, center_d=self.center_d, k=1)

    def coeff_algebra(self) -> "AlgebraWithInvolution":
        """(D, theta) as a rank-1 algebra: target of Morita flattening."""
        if self.quat is not None:
            return AlgebraWithInvolution(
                self.base_ring, quat_params=(self.quat.a, self.quat.b), k=1
            )
        return AlgebraWithInvolution(self.base_ring, center_d=self.center_d, k=1)

    def base_algebra(self) -> "AlgebraWithInvolution":
        """(K, id) as a rank-1 algebra."""
        return AlgebraWithInvolution(self.base_ring, k=1)

    def twist(self, a: Matrix) -> "AlgebraWithInvolution":
        """The algebra with involution Int(a) o sigma (a a unit, sigma(a) = +-a)."""
        new_u = a * self.u
        return AlgebraWithInvolution(
            self.base_ring,
            center_d=self.center_d,
            quat_params=(self.quat.a, self.quat.b) if self.quat else None,
            k=self.k,
            u=new_u,
        )


class TensorElement:
    """An element of A tensor_S A in coordinates over the monomial basis."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: AlgebraWithInvolution, coeffs: Dict):
        self.algebra = algebra
        self.coeffs = {key: v for key, v in coeffs.items() if v}

    @classmethod
    def from_pair(cls, algebra: AlgebraWithInvolution, a: Matrix, b: Matrix):
        ca = algebra.to_S_coords(a)
        cb = algebra.to_S_coords(b)
        return cls(
            algebra,
            {
                (p, q): ca[p] * cb[q]
                for p in range(algebra.t)
                for q in range(algebra.t)
                if ca[p] and cb[q]
            },
        )

    def __repr__(self) -> str:
        return f"TensorElement({len(self.coeffs)} terms)"

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        zero = self.algebra.S.zero
        return all(
            not (self.coeffs.get(k, zero) - other.coeffs.get(k, zero)) for k in keys
        )

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        A = self.algebra
        out: Dict = {}
        for (p1, q1), v1 in self.coeffs.items():
            for (p2, q2), v2 in other.coeffs.items():
                m1 = A.basis_product(p1, p2)
                if m1 is None:
                    continue
                m2 = A.basis_product(q1, q2)
                if m2 is None:
                    continue
                r, c1 = m1
                s, c2 = m2
                key = (r, s)
                val = v1 * v2 * c1 * c2
                acc = out.get(key)
                out[key] = val if acc is None else acc + val
        return TensorElement(A, out)

    def swap(self) -> "TensorElement":
        return TensorElement(self.algebra, {(q, p): v for (p, q), v in self.coeffs.items()})

    def sigma_sigma(self) -> "TensorElement":
        A = self.algebra
        out: Dict = {}
        for (p, q), v in self.coeffs.items():
            iv = A.iota(v)
            for r, c1 in A.sigma_basis_coords(p):
                for s, c2 in A.sigma_basis_coords(q):
                    key = (r, s)
                    val = iv * c1 * c2
                    acc = out.get(key)
                    out[key] = val if acc is None else acc + val
        return TensorElement(A, out)

    def sandwich(self, x: Matrix) -> Matrix:
        A = self.algebra
        basis = A.basis()
        acc = A.zero()
        for (p, q), v in self.coeffs.items():
            acc = acc + (basis[p] * x * basis[q]).scale_left(v)
        return acc


class ProductAlgebra:
    """Componentwise algebras of a shared shape over a product base ring."""

    is_product = True

    def __init__(self, base_ring: BaseRing, components: Sequence[AlgebraWithInvolution]):
        if not base_ring.is_product or len(components) != len(base_ring.factors):
            raise UnsupportedCombination("component count must match the base ring")
        self.base_ring = base_ring
        self.components = list(components)

    def __repr__(self) -> str:
        return " x ".join(repr(c) for c in self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProductAlgebra):
            return NotImplemented
        return (
            self.base_ring == other.base_ring
            and self.components == other.components
        )

    def involution_type(self) -> str:
        return self.components[0].involution_type()

    def orderings(self) -> List[Ordering]:
        return self.base_ring.orderings()

    def nil_orderings(self) -> List[Ordering]:
        out = []
        for idx, comp in enumerate(self.components):
            out.extend(Ordering(idx, p.sign) for p in comp.nil_orderings())
        return out


def build_algebra(descriptor: dict):
    """Construct an algebra (or componentwise product) from a JSON descriptor."""
    from .serialize import basering_from_json, element_from_json, scalar_from_json

    if not isinstance(descriptor, dict):
        raise InvalidEntry("algebra descriptor must be a JSON object")
    ring = basering_from_json(descriptor.get("base", {"kind": "rationals"}))
    k = descriptor.get("matrix_size", 1)
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InvalidEntry("matrix_size must be a positive integer")
    center = descriptor.get("center", {"kind": "same"})
    coeff = descriptor.get("coefficients", {"kind": "center"})
    inv = descriptor.get("involution", {"kind": "canonical"})
    for name, part in (("center", center), ("coefficients", coeff), ("involution", inv)):
        if not isinstance(part, dict) or "kind" not in part:
            raise InvalidEntry(f"{name} descriptor needs a 'kind'")

    def build_component(component_ring: BaseRing) -> AlgebraWithInvolution:
        K = component_ring.field
        center_d = None
        if center["kind"] == "quadratic":
            center_d = scalar_from_json(K, center.get("d", 0))
        elif center["kind"] != "same":
            raise InvalidEntry(f"unknown center kind {center['kind']!r}")
        quat_params = None
        if coeff["kind"] == "quaternion":
            if center_d is not None:
                raise UnsupportedCombination(
                    "quaternion coefficients require a trivial center"
                )
            quat_params = (
                scalar_from_json(K, coeff.get("a", 0)),
                scalar_from_json(K, coeff.get("b", 0)),
            )
        elif coeff["kind"] != "center":
            raise InvalidEntry(f"unknown coefficient kind {coeff['kind']!r}")
        plain = AlgebraWithInvolution(
            component_ring, center_d=center_d, quat_params=quat_params, k=k
        )
        if inv["kind"] == "canonical":
            return plain
        if inv["kind"] != "inner":
            raise InvalidEntry(f"unknown involution kind {inv['kind']!r}")
        u = element_from_json(plain, inv.get("u"))
        return AlgebraWithInvolution(
            component_ring, center_d=center_d, quat_params=quat_params, k=k, u=u
        )

    if ring.is_product:
        return ProductAlgebra(ring, [build_component(f) for f in ring.factors])
    return build_component(ring)


def algebra_to_json(algebra) -> dict:
    """Inverse of build_algebra, used to make failure reports re-runnable."""
    from .serialize import basering_to_json, element_to_json, scalar_to_json

    if algebra.is_product:
        shapes = [algebra_to_json(c) for c in algebra.components]
        if any(s != shapes[0] for s in shapes[1:]):
            raise UnsupportedCombination("component shapes differ")
        shapes[0]["base"] = basering_to_json(algebra.base_ring)
        return shapes[0]
    out = {"base": basering_to_json(algebra.base_ring), "matrix_size": algebra.k}
    if algebra.center_d is not None:
        out["center"] = {"kind": "quadratic", "d": scalar_to_json(algebra.center_d)}
    if algebra.quat is not None:
        out["coefficients"] = {
            "kind": "quaternion",
            "a": scalar_to_json(algebra.quat.a),
            "b": scalar_to_json(algebra.quat.b),
        }
    if not algebra.is_canonical:
        out["involution"] = {"kind": "inner", "u": element_to_json(algebra, algebra.u)}
    return out

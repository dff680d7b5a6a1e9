"""Seeded random instances for the verification suites.

Bounds keep exact arithmetic fast while still touching every code path:
matrix size at most 3, integer heights at most 8, form rank at most 4.
All algebras are generated over the rational base; suites that need a
quadratic base field extend scalars on generated instances.
"""

from __future__ import annotations

import random

from .algebras import AlgebraWithInvolution, ProductAlgebra, build_algebra
from .baserings import BaseRing
from .errors import SearchBudgetExceeded
from .forms import ProductForm, base_diag_form, diag_form, negate, orth_sum, tensor_quadratic
from .scalars import QuadNum, rat
from .signatures import max_sig_element

HEIGHT = 8
K_MAX = 3
RANK_MAX = 4

QUATERNION_PARAMS = [(-1, -1), (-1, -2), (-2, -3), (-1, 2), (2, 7), (-1, -7)]
CENTER_DS = [-1, -2, -3, 2, 3, 5]
POSITIVE_NONSQUARES = [2, 5, 10, 13]

FIELD = "field"
MATRIX = "matrix"
QUATERNION = "quaternion"
UNITARY = "unitary"
PRODUCT = "product"
ALL_KINDS = (FIELD, MATRIX, QUATERNION, UNITARY)


class InstanceGen:
    """Draws algebras, units, and forms from a seeded stream."""

    def __init__(self, seed: int, height: int = HEIGHT, k_max: int = K_MAX,
                 rank_max: int = RANK_MAX):
        self.rng = random.Random(seed)
        self.height = height
        self.k_max = k_max
        self.rank_max = rank_max

    def integer(self, nonzero: bool = True):
        while True:
            n = self.rng.randint(-self.height, self.height)
            if n or not nonzero:
                return rat(n)

    def algebra(self, kinds=ALL_KINDS, k_max=None, twist_chance=0.0):
        kind = self.rng.choice(list(kinds))
        top = self.k_max if k_max is None else k_max
        ring = BaseRing.rationals()
        if kind == PRODUCT:
            factors = self.rng.randint(2, 3)
            prod = BaseRing.product([BaseRing.rationals()] * factors)
            k = self.rng.randint(1, top)
            return ProductAlgebra(
                prod, [AlgebraWithInvolution(BaseRing.rationals(), k=k)] * factors
            )
        if kind == FIELD:
            A = AlgebraWithInvolution(ring, k=1)
        elif kind == MATRIX:
            A = AlgebraWithInvolution(ring, k=self.rng.randint(2, top))
        elif kind == QUATERNION:
            a, b = self.rng.choice(QUATERNION_PARAMS)
            A = AlgebraWithInvolution(
                ring, quat_params=(rat(a), rat(b)), k=self.rng.randint(1, max(1, top - 1))
            )
        elif kind == UNITARY:
            d = self.rng.choice(CENTER_DS)
            A = AlgebraWithInvolution(
                ring, center_d=rat(d), k=self.rng.randint(1, max(1, top - 1))
            )
        else:
            raise ValueError(f"unknown algebra kind {kind!r}")
        if twist_chance and self.rng.random() < twist_chance:
            A = A.twist(self.symmetric_unit(A))
        return A

    def raw_element(self, A):
        rows = []
        for _ in range(A.k):
            row = []
            for _ in range(A.k):
                if A.quat is not None:
                    row.append(A.quat.element(*[self.integer(False) for _ in range(4)]))
                elif A.center_d is not None:
                    row.append(QuadNum(A.S, self.integer(False), self.integer(False)))
                else:
                    row.append(self.integer(False))
            rows.append(row)
        return A.element(rows)

    def symmetric_unit(self, A, epsilon: int = 1, budget: int = 200):
        for _ in range(budget):
            y = self.raw_element(A)
            cand = A.sigma(y) + y if epsilon == 1 else A.sigma(y) - y
            if A.is_invertible(cand):
                return cand
        raise SearchBudgetExceeded("no symmetric unit within budget")

    def maximal_element(self, A, P, budget: int = 200):
        m = max_sig_element(A, P, seed=self.rng.randrange(1 << 16)).element
        for _ in range(budget):
            y = self.raw_element(A)
            cand = A.sigma(y) * m * y
            if A.is_invertible(cand):
                return cand
        raise SearchBudgetExceeded("no maximal element within budget")

    def herm_form(self, A, rank=None, epsilon: int = 1):
        if rank is None:
            rank = self.rng.randint(1, self.rank_max)
        if isinstance(A, ProductAlgebra):
            comps = [
                diag_form(c, epsilon, [self.symmetric_unit(c, epsilon) for _ in range(rank)])
                for c in A.components
            ]
            return ProductForm(A, epsilon, comps)
        return diag_form(A, epsilon, [self.symmetric_unit(A, epsilon) for _ in range(rank)])

    def base_form(self, n=None, entries=None):
        ring = BaseRing.rationals()
        if n is None:
            n = self.rng.randint(1, self.rank_max)
        if entries is None:
            vals = [self.integer() for _ in range(n)]
        else:
            vals = [rat(self.rng.choice(entries)) for _ in range(n)]
        return base_diag_form(ring, vals)

    def torsion_form(self, A):
        """A nonsingular form with zero signature at every ordering."""
        h = self.herm_form(A, rank=self.rng.randint(1, self.rank_max // 2))
        u = rat(self.rng.choice(POSITIVE_NONSQUARES))
        scale = base_diag_form(BaseRing.rationals(), [u])
        if isinstance(h, ProductForm):
            comps = [
                orth_sum(c, negate(tensor_quadratic(scale, c))) for c in h.components
            ]
            return ProductForm(A, h.epsilon, comps)
        return orth_sum(h, negate(tensor_quadratic(scale, h)))

    def ordering(self, A):
        return self.rng.choice(A.base_ring.orderings())


def fixed_goldman_algebras():
    """The calibration set: split, matrix, quaternion, and unitary shapes."""
    descs = [
        {"base": {"kind": "rationals"}},
        {"base": {"kind": "rationals"}, "matrix_size": 2},
        {"base": {"kind": "rationals"}, "matrix_size": 3},
        {"base": {"kind": "rationals"},
         "coefficients": {"kind": "quaternion", "a": -1, "b": -1}},
        {"base": {"kind": "rationals"},
         "coefficients": {"kind": "quaternion", "a": -1, "b": 2}},
        {"base": {"kind": "rationals"}, "matrix_size": 2,
         "coefficients": {"kind": "quaternion", "a": -1, "b": -1}},
        {"base": {"kind": "rationals"}, "matrix_size": 2,
         "center": {"kind": "quadratic", "d": -1}},
    ]
    return [build_algebra(d) for d in descs]

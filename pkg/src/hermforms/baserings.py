"""Base rings of scalars and their real orderings.

Supported base rings: the rationals, quadratic fields Q(sqrt(m)) for a
squarefree integer m (no real orderings when m < 0), and finite products of
those.  An ordering is a choice of connected component plus an embedding sign
for the square root; signs of scalars at an ordering are evaluated exactly.
"""

from __future__ import annotations

from typing import List, Sequence

from sympy import factorint

from .errors import InvalidPlace, InvalidScalar
from .scalars import QQ, QuadraticField, rat_sign

RATIONALS = "rationals"
REAL_QUADRATIC = "real_quadratic"
PRODUCT = "product"


class Ordering:
    """A real ordering of a base ring: component index + embedding sign."""

    __slots__ = ("component", "sign")

    def __init__(self, component: int = 0, sign: int = 1):
        if sign not in (1, -1):
            raise InvalidPlace("embedding sign must be +1 or -1")
        if component < 0:
            raise InvalidPlace("negative component index")
        self.component = component
        self.sign = sign

    def key(self) -> str:
        return f"{self.component}/{'+' if self.sign > 0 else '-'}"

    @classmethod
    def from_key(cls, key: str) -> "Ordering":
        try:
            comp, emb = key.split("/")
            return cls(int(comp), {"+": 1, "-": -1}[emb])
        except (ValueError, KeyError) as exc:
            raise InvalidPlace(f"bad ordering key: {key!r}") from exc

    def __repr__(self) -> str:
        return f"Ordering({self.key()!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ordering):
            return NotImplemented
        return self.component == other.component and self.sign == other.sign

    def __hash__(self):
        return hash((self.component, self.sign))

    def __lt__(self, other: "Ordering") -> bool:
        return (self.component, -self.sign) < (other.component, -other.sign)


def _is_squarefree(m: int) -> bool:
    return all(e == 1 for e in factorint(abs(m)).values())


class BaseRing:
    """Q, Q(sqrt(m)), or a finite product of such fields."""

    __slots__ = ("kind", "m", "field", "factors")

    def __init__(self, kind: str, m: int = 0, factors: Sequence["BaseRing"] = ()):
        self.kind = kind
        self.m = m
        self.factors = list(factors)
        if kind == RATIONALS:
            self.field = QQ
        elif kind == REAL_QUADRATIC:
            if m in (0, 1) or not _is_squarefree(m):
                raise InvalidScalar(f"m = {m} must be squarefree and not 0 or 1")
            self.field = QuadraticField(QQ, m)
        elif kind == PRODUCT:
            if len(self.factors) < 2:
                raise InvalidScalar("a product needs at least two factors")
            if any(f.kind == PRODUCT for f in self.factors):
                raise InvalidScalar("product factors must be connected")
            self.field = None
        else:
            raise InvalidScalar(f"unknown base ring kind: {kind!r}")

    @classmethod
    def rationals(cls) -> "BaseRing":
        return cls(RATIONALS)

    @classmethod
    def real_quadratic(cls, m: int) -> "BaseRing":
        return cls(REAL_QUADRATIC, m=m)

    @classmethod
    def product(cls, factors: Sequence["BaseRing"]) -> "BaseRing":
        return cls(PRODUCT, factors=factors)

    def __repr__(self) -> str:
        if self.kind == RATIONALS:
            return "QQ"
        if self.kind == REAL_QUADRATIC:
            return f"QQ(sqrt({self.m}))"
        return " x ".join(repr(f) for f in self.factors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BaseRing):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.m == other.m
            and self.factors == other.factors
        )

    def __hash__(self):
        return hash((self.kind, self.m, tuple(self.factors)))

    @property
    def is_product(self) -> bool:
        return self.kind == PRODUCT

    def components(self) -> List["BaseRing"]:
        return list(self.factors) if self.is_product else [self]

    def coerce(self, x):
        if self.is_product:
            raise InvalidScalar("product rings hold tuples; coerce per component")
        v = self.field.coerce(x)
        if v is None:
            raise InvalidScalar(f"{x!r} does not lie in {self!r}")
        return v

    def orderings(self) -> List[Ordering]:
        """All real orderings: one for Q, two (or none) for Q(sqrt(m)),
        the disjoint union over components for products."""
        if self.is_product:
            out = []
            for idx, f in enumerate(self.factors):
                out.extend(Ordering(idx, p.sign) for p in f.orderings())
            return out
        if self.kind == RATIONALS:
            return [Ordering(0, 1)]
        if self.m > 0:
            return [Ordering(0, 1), Ordering(0, -1)]
        return []

    def check_ordering(self, p: Ordering) -> None:
        if p not in self.orderings():
            raise InvalidPlace(f"{p!r} is not an ordering of {self!r}")

    def sign_at(self, x, p: Ordering) -> int:
        """Exact sign of a scalar under the real embedding chosen by p."""
        if self.is_product:
            if not (0 <= p.component < len(self.factors)):
                raise InvalidPlace(f"component {p.component} out of range")
            part = x[p.component] if isinstance(x, (tuple, list)) else x
            return self.factors[p.component].sign_at(part, Ordering(0, p.sign))
        self.check_ordering(p)
        x = self.coerce(x)
        if self.kind == RATIONALS:
            return rat_sign(x)
        return self.field.sign(x, p.sign)

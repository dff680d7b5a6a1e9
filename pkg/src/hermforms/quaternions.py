"""Quaternion algebras (a,b) over an exact base field.

Elements are stored on the basis 1, i, j, k with i*i = a, j*j = b,
ij = -ji = k.  The base field object must provide coerce/zero/one and its
elements exact arithmetic; in practice that is RationalField or
QuadraticField from scalars.
"""

from __future__ import annotations

from typing import Optional

from .errors import InvalidScalar, SingularUnit
from .scalars import scalar_inverse


class QuaternionAlgebra:
    __slots__ = ("field", "a", "b")

    def __init__(self, field, a, b):
        a, b = field.coerce(a), field.coerce(b)
        if a is None or b is None or not a or not b:
            raise InvalidScalar("quaternion parameters must be nonzero field elements")
        self.field = field
        self.a = a
        self.b = b

    def __repr__(self) -> str:
        return f"({self.a!r},{self.b!r} / {self.field!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuaternionAlgebra):
            return NotImplemented
        return (
            self.field == other.field
            and not (self.a - other.a)
            and not (self.b - other.b)
        )

    def __hash__(self):
        return hash(("quat", self.field, str(self.a), str(self.b)))

    def element(self, w, x=0, y=0, z=0) -> "Quaternion":
        parts = [self.field.coerce(v) for v in (w, x, y, z)]
        if any(p is None for p in parts):
            raise InvalidScalar("quaternion coordinates must lie in the base field")
        return Quaternion(self, *parts)

    def zero(self) -> "Quaternion":
        return self.element(0)

    def one(self) -> "Quaternion":
        return self.element(1)

    def i(self) -> "Quaternion":
        return self.element(0, 1)

    def j(self) -> "Quaternion":
        return self.element(0, 0, 1)

    def k(self) -> "Quaternion":
        return self.element(0, 0, 0, 1)

    def basis(self):
        return (self.one(), self.i(), self.j(), self.k())

    def coerce(self, v) -> Optional["Quaternion"]:
        if isinstance(v, Quaternion):
            return v if v.alg == self else None
        s = self.field.coerce(v)
        if s is None:
            return None
        zero = self.field.zero
        return Quaternion(self, s, zero, zero, zero)


class Quaternion:
    __slots__ = ("alg", "w", "x", "y", "z")

    def __init__(self, alg: QuaternionAlgebra, w, x, y, z):
        self.alg = alg
        self.w = w
        self.x = x
        self.y = y
        self.z = z

    def coords(self):
        return (self.w, self.x, self.y, self.z)

    def __repr__(self) -> str:
        return f"({self.w!r} + {self.x!r}*i + {self.y!r}*j + {self.z!r}*k)"

    def __bool__(self) -> bool:
        return bool(self.w) or bool(self.x) or bool(self.y) or bool(self.z)

    def __eq__(self, other) -> bool:
        o = self.alg.coerce(other)
        if o is None:
            return NotImplemented
        return not (self - o)

    def __hash__(self):
        if not self.x and not self.y and not self.z:
            return hash(self.w)
        return hash(("quat", str(self.w), str(self.x), str(self.y), str(self.z)))

    def __add__(self, other):
        o = self.alg.coerce(other)
        if o is None:
            return NotImplemented
        return Quaternion(
            self.alg, self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z
        )

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(self.alg, -self.w, -self.x, -self.y, -self.z)

    def __sub__(self, other):
        o = self.alg.coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self.alg.coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self.alg.coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.alg.a, self.alg.b
        w1, x1, y1, z1 = self.coords()
        w2, x2, y2, z2 = o.coords()
        return Quaternion(
            self.alg,
            w1 * w2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2,
            w1 * x2 + x1 * w2 - b * y1 * z2 + b * z1 * y2,
            w1 * y2 + y1 * w2 + a * x1 * z2 - a * z1 * x2,
            w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2,
        )

    def __rmul__(self, other):
        o = self.alg.coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __truediv__(self, other):
        o = self.alg.coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self.alg.coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.alg.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "Quaternion":
        return Quaternion(self.alg, self.w, -self.x, -self.y, -self.z)

    def trd(self):
        return self.w + self.w

    def nrd(self):
        a, b = self.alg.a, self.alg.b
        w, x, y, z = self.coords()
        return w * w - a * x * x - b * y * y + a * b * z * z

    def is_pure(self) -> bool:
        return not self.w

    def inverse(self) -> "Quaternion":
        n = self.nrd()
        if not n:
            raise SingularUnit("quaternion with reduced norm zero")
        s = scalar_inverse(n)
        return Quaternion(self.alg, s * self.w, -s * self.x, -s * self.y, -s * self.z)

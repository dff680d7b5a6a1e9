"""Exact scalar arithmetic: rationals and towers of quadratic extensions.

Everything in this package computes over Q or over fields built from Q by
adjoining square roots, always exactly.  Rationals are ``gmpy2.mpq`` values
(``Rat``); an extension K(sqrt(d)) is described by a ``QuadraticField`` and
its elements are ``QuadNum`` pairs x + y*w with w**2 = d.  Towers such as
Q(sqrt(m))(sqrt(d)) arise for unitary involutions over a real quadratic base
and are handled by the same recursion.

No floating point is used anywhere.  Signs at real embeddings are decided by
exact comparisons (x**2 versus d*y**2), square roots by integer square-root
extraction.
"""

from __future__ import annotations

from typing import Optional, Union

import gmpy2
from gmpy2 import mpq, mpz

from .errors import InvalidScalar, SingularUnit

Rat = mpq

Scalar = Union[Rat, "QuadNum"]


def rat(n, d=1) -> Rat:
    """Build an exact rational.  Accepts ints, strings like '3/2', mpq."""
    try:
        q = mpq(n, d) if d != 1 else mpq(n)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidScalar(f"bad rational: {n!r}/{d!r}") from exc
    return q


def is_rat(x) -> bool:
    return isinstance(x, type(mpq(0))) or isinstance(x, int)


def rat_sign(q: Rat) -> int:
    if q > 0:
        return 1
    if q < 0:
        return -1
    return 0


def rat_sqrt_or_none(q: Rat) -> Optional[Rat]:
    """Exact square root of a rational, or None if q is not a square."""
    q = mpq(q)
    if q < 0:
        return None
    num, den = mpz(q.numerator), mpz(q.denominator)
    if not (gmpy2.is_square(num) and gmpy2.is_square(den)):
        return None
    return mpq(gmpy2.isqrt(num), gmpy2.isqrt(den))


class RationalField:
    """The field Q.  A single shared instance ``QQ`` is used everywhere."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    @property
    def zero(self) -> Rat:
        return mpq(0)

    @property
    def one(self) -> Rat:
        return mpq(1)

    def from_int(self, n: int) -> Rat:
        return mpq(n)

    def coerce(self, x) -> Optional[Rat]:
        if isinstance(x, int):
            return mpq(x)
        if is_rat(x):
            return mpq(x)
        return None

    def is_square(self, x: Rat) -> bool:
        return rat_sqrt_or_none(mpq(x)) is not None

    def sqrt_or_none(self, x: Rat) -> Optional[Rat]:
        return rat_sqrt_or_none(mpq(x))

    def is_zero(self, x: Rat) -> bool:
        return mpq(x) == 0


QQ = RationalField()


class QuadraticField:
    """K(sqrt(d)) for a base field K and a non-square d in K."""

    __slots__ = ("base", "d")

    def __init__(self, base, d):
        d = base.coerce(d)
        if d is None:
            raise InvalidScalar("d does not live in the base field")
        if base.is_zero(d):
            raise InvalidScalar("d must be invertible")
        if base.is_square(d):
            raise InvalidScalar(f"d = {d} is a square in the base field")
        self.base = base
        self.d = d

    def __repr__(self) -> str:
        return f"{self.base!r}(sqrt({self.d}))"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuadraticField)
            and self.base == other.base
            and self.d == other.d
        )

    def __hash__(self) -> int:
        return hash(("quadfield", self.base, str(self.d)))

    @property
    def zero(self) -> "QuadNum":
        return QuadNum(self, self.base.zero, self.base.zero)

    @property
    def one(self) -> "QuadNum":
        return QuadNum(self, self.base.one, self.base.zero)

    @property
    def gen(self) -> "QuadNum":
        """The adjoined square root w with w**2 = d."""
        return QuadNum(self, self.base.zero, self.base.one)

    def from_int(self, n: int) -> "QuadNum":
        return QuadNum(self, self.base.from_int(n), self.base.zero)

    def coerce(self, x) -> Optional["QuadNum"]:
        if isinstance(x, QuadNum) and x.field == self:
            return x
        if isinstance(x, QuadNum) and x.field == self.base:
            return QuadNum(self, x, self.base.zero)
        b = self.base.coerce(x)
        if b is not None:
            return QuadNum(self, b, self.base.zero)
        return None

    def is_zero(self, x) -> bool:
        x = self.coerce(x)
        return x is not None and self.base.is_zero(x.x) and self.base.is_zero(x.y)

    def is_square(self, x) -> bool:
        return self.sqrt_or_none(x) is not None

    def sqrt_or_none(self, z) -> Optional["QuadNum"]:
        """A square root of z in this field, or None.

        For z = x + y*w: if y = 0 then z is a square iff x or x/d is a base
        square; otherwise z = (u + v*w)**2 forces u**2 = (x +- s)/2 with
        s**2 = x**2 - d*y**2, all checked exactly in the base field.
        """
        z = self.coerce(z)
        if z is None:
            return None
        base, d = self.base, self.d
        if base.is_zero(z.y):
            r = base.sqrt_or_none(z.x)
            if r is not None:
                return QuadNum(self, r, base.zero)
            r = base.sqrt_or_none(z.x / d)
            if r is not None:
                return QuadNum(self, base.zero, r)
            return None
        s = base.sqrt_or_none(z.x * z.x - d * z.y * z.y)
        if s is None:
            return None
        two = base.from_int(2)
        for t in ((z.x + s) / two, (z.x - s) / two):
            u = base.sqrt_or_none(t)
            if u is not None and not base.is_zero(u):
                v = z.y / (two * u)
                cand = QuadNum(self, u, v)
                if cand * cand == z:
                    return cand
        return None

    def sign(self, z, emb: int = 1) -> int:
        """Sign of x + y*emb*sqrt(d) under a real embedding (requires d > 0,
        base = Q).  emb is +1 or -1 and selects the embedding."""
        if not isinstance(self.base, RationalField):
            raise InvalidScalar("real embeddings only supported over Q")
        if self.d < 0:
            raise InvalidScalar("field has no real embedding (d < 0)")
        z = self.coerce(z)
        x, y = mpq(z.x), mpq(z.y)
        if y == 0:
            return rat_sign(x)
        sy = rat_sign(y) * (1 if emb >= 0 else -1)
        if x == 0:
            return sy
        sx = rat_sign(x)
        if sx == sy:
            return sx
        return sx if x * x > self.d * y * y else sy


class QuadNum:
    """An element x + y*w of a quadratic extension, w**2 = d."""

    __slots__ = ("field", "x", "y")

    def __init__(self, field: QuadraticField, x, y):
        self.field = field
        self.x = x
        self.y = y

    # -- basic protocol -------------------------------------------------

    def __repr__(self) -> str:
        return f"({self.x} + {self.y}*w)"

    def __bool__(self) -> bool:
        return not self.field.is_zero(self)

    def __eq__(self, other) -> bool:
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return self.x == o.x and self.y == o.y

    def __hash__(self) -> int:
        if self.field.base.is_zero(self.y):
            return hash(self.x)
        return hash((self.field, str(self.x), str(self.y)))

    def conj(self) -> "QuadNum":
        """The nontrivial base automorphism: x + y*w -> x - y*w."""
        return QuadNum(self.field, self.x, -self.y)

    def norm(self):
        """Norm to the base field: x**2 - d*y**2."""
        return self.x * self.x - self.field.d * self.y * self.y

    def trace(self):
        """Trace to the base field: 2x."""
        return self.x + self.x

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(self.field, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __sub__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(self.field, self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return QuadNum(self.field, o.x - self.x, o.y - self.y)

    def __neg__(self):
        return QuadNum(self.field, -self.x, -self.y)

    def __mul__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.d
        return QuadNum(
            self.field,
            self.x * o.x + d * self.y * o.y,
            self.x * o.y + self.y * o.x,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadNum":
        n = self.norm()
        if self.field.base.is_zero(n):
            raise SingularUnit("division by zero in quadratic extension")
        inv_n = 1 / n if is_rat(n) else n.inverse()
        return QuadNum(self.field, self.x * inv_n, -self.y * inv_n)

    def __truediv__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self.field.coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


def field_of(x):
    """The field an element belongs to (QQ for plain rationals/ints)."""
    if isinstance(x, QuadNum):
        return x.field
    if is_rat(x):
        return QQ
    raise InvalidScalar(f"not a scalar: {x!r}")


def embed(x, field):
    """Embed x into ``field`` (which must contain the field of x)."""
    v = field.coerce(x)
    if v is None:
        raise InvalidScalar(f"cannot embed {x!r} into {field!r}")
    return v


def scalar_inverse(x):
    """Multiplicative inverse of a field scalar."""
    if is_rat(x):
        if mpq(x) == 0:
            raise SingularUnit("division by zero")
        return 1 / mpq(x)
    return x.inverse()


def scalar_is_zero(x) -> bool:
    if is_rat(x):
        return mpq(x) == 0
    return not x

"""Places of Q, Legendre and Hilbert symbols, square classes.

A place is either the string ``'inf'`` or a prime number.  The Hilbert symbol
at p = 2 uses the classical units-mod-8 formula; an independent brute-force
oracle (primitive solution counting modulo p**k, with Hensel-safe k) lives in
``hilbert_symbol_via_solubility`` and is checked against the formula in the
test suite.
"""

from __future__ import annotations

from typing import Iterable, List, Union

import sympy
from gmpy2 import mpq, mpz

from .errors import InvalidPlace, InvalidScalar
from .scalars import Rat, rat_sign

Place = Union[str, int]

INF = "inf"


def is_place(v) -> bool:
    if v == INF:
        return True
    return isinstance(v, int) and sympy.isprime(v)


def check_place(v) -> Place:
    if not is_place(v):
        raise InvalidPlace(f"not a place of Q: {v!r}")
    return v


def legendre_symbol(a, p: int) -> int:
    """The Legendre symbol (a|p) for an odd prime p.  Returns -1, 0 or 1."""
    if not (isinstance(p, int) and p % 2 == 1 and sympy.isprime(p)):
        raise InvalidPlace(f"not an odd prime: {p!r}")
    a = int(a) % p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def square_class(x) -> int:
    """The squarefree integer representing x modulo nonzero squares.

    x may be an int or an exact rational; x = square_class(x) * (square).
    """
    q = mpq(x)
    if q == 0:
        raise InvalidScalar("square class of zero is undefined")
    n = mpz(q.numerator) * mpz(q.denominator)
    sign = 1 if n > 0 else -1
    n = abs(n)
    out = 1
    for p, e in sympy.factorint(int(n)).items():
        if e % 2 == 1:
            out *= p
    return sign * out


def _val_and_unit(q: Rat, p: int):
    """p-adic valuation of q and the unit part as an odd-denominator pair.

    Returns (v, n, d) with q = p**v * n/d and p dividing neither n nor d.
    """
    num, den = mpz(q.numerator), mpz(q.denominator)
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, int(num), int(den)


def _legendre_of_unit(n: int, d: int, p: int) -> int:
    # (n/d | p) = (n*d | p) since d and d**(-1) differ by a square mod p.
    return legendre_symbol(n * d, p)


def hilbert_symbol(a, b, v: Place) -> int:
    """The Hilbert symbol (a, b)_v for nonzero rationals a, b.

    (a, b)_v = 1 iff z**2 = a*x**2 + b*y**2 has a nontrivial solution over
    the completion at v.
    """
    check_place(v)
    a, b = mpq(a), mpq(b)
    if a == 0 or b == 0:
        raise InvalidScalar("hilbert symbol requires nonzero arguments")
    if v == INF:
        return -1 if (a < 0 and b < 0) else 1
    p = v
    alpha, an, ad = _val_and_unit(a, p)
    beta, bn, bd = _val_and_unit(b, p)
    if p != 2:
        eps = (p - 1) // 2
        s = 1
        if (alpha * beta * eps) % 2 == 1:
            s = -s
        if beta % 2 == 1:
            s *= _legendre_of_unit(an, ad, p)
        if alpha % 2 == 1:
            s *= _legendre_of_unit(bn, bd, p)
        return s
    # p = 2: units mod 8 determine everything.  For an odd fraction n/d the
    # class mod 8 equals n*d mod 8 because d**2 = 1 mod 8.
    ua = (an * ad) % 8
    ub = (bn * bd) % 8
    eps_a = 1 if ua % 4 == 3 else 0
    eps_b = 1 if ub % 4 == 3 else 0
    omega_a = 1 if ua in (3, 5) else 0
    omega_b = 1 if ub in (3, 5) else 0
    exponent = eps_a * eps_b + alpha * omega_b + beta * omega_a
    return -1 if exponent % 2 == 1 else 1


def hilbert_symbol_via_solubility(a, b, v: Place) -> int:
    """Independent Hilbert symbol oracle by counting primitive solutions of
    z**2 = a*x**2 + b*y**2 modulo p**k.

    Coefficients are reduced to squarefree integers first, so valuations are
    at most 1 and k = 3 (odd p) respectively k = 6 (p = 2) certify
    solubility over Q_p by Hensel lifting.  Only intended for small p.
    """
    check_place(v)
    a, b = mpq(a), mpq(b)
    if a == 0 or b == 0:
        raise InvalidScalar("hilbert symbol requires nonzero arguments")
    if v == INF:
        return -1 if (a < 0 and b < 0) else 1
    p = v
    sa, sb = square_class(a), square_class(b)
    k = 6 if p == 2 else 3
    solvable = _has_primitive_zero((sa, sb, -1), p, k)
    return 1 if solvable else -1


def _count_zeros(coeffs, p: int, j: int) -> int:
    """Number of triples modulo p**j with sum(c*x**2) = 0 mod p**j."""
    if j <= 0:
        return p ** (3 * abs(j)) if j < 0 else 1
    m = p**j
    tables = []
    for c in coeffs:
        counts = {}
        for x in range(m):
            r = (c * x * x) % m
            counts[r] = counts.get(r, 0) + 1
        tables.append(counts)
    t01 = {}
    for r0, c0 in tables[0].items():
        for r1, c1 in tables[1].items():
            r = (r0 + r1) % m
            t01[r] = t01.get(r, 0) + c0 * c1
    total = 0
    for r, c in t01.items():
        total += c * tables[2].get((-r) % m, 0)
    return total


def _has_primitive_zero(coeffs, p: int, k: int) -> bool:
    total = _count_zeros(coeffs, p, k)
    imprimitive = p**3 * _count_zeros(coeffs, p, k - 2)
    return total - imprimitive > 0


def odd_prime_divisors(x) -> List[int]:
    """Odd primes dividing the square class of a nonzero rational."""
    c = abs(square_class(x))
    return [p for p in sympy.factorint(c) if p != 2]


def relevant_places(values: Iterable) -> List[Place]:
    """'inf', 2 and every odd prime dividing some value's square class.

    This is the finite set of places where Hilbert symbols built from the
    given values can be nontrivial.
    """
    places = {2}
    for x in values:
        for p in odd_prime_divisors(x):
            places.add(p)
    return [INF] + sorted(places)


def sign_at_infinity(x) -> int:
    return rat_sign(mpq(x))

"""JSON encoding of scalars, algebra elements, and forms.

Scalar grammar: rationals are strings like "3/2" (ints accepted on input),
elements of a quadratic extension are {"x": ..., "y": ...} with parts in the
base field, quaternions are 4-element arrays [w, x, y, z] of field scalars.
Algebra elements are k x k row-major arrays of coefficient scalars.  Output
is deterministic: sorted keys, fixed separators.
"""

from __future__ import annotations

import json

from .errors import InvalidEntry, InvalidScalar
from .linalg import Matrix
from .quaternions import Quaternion
from .scalars import QuadNum, QuadraticField, RationalField, is_rat, rat


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "), indent=1)


def scalar_to_json(x):
    if isinstance(x, QuadNum):
        return {"x": scalar_to_json(x.x), "y": scalar_to_json(x.y)}
    if is_rat(x):
        return str(rat(x))
    raise InvalidScalar(f"cannot serialize scalar {x!r}")


def scalar_from_json(field, obj):
    if isinstance(field, RationalField):
        if isinstance(obj, bool) or not isinstance(obj, (int, str)):
            raise InvalidScalar(f"expected a rational, got {obj!r}")
        return rat(obj)
    if isinstance(field, QuadraticField):
        if isinstance(obj, dict):
            extra = set(obj) - {"x", "y"}
            if extra:
                raise InvalidScalar(f"unknown scalar keys {sorted(extra)}")
            x = scalar_from_json(field.base, obj.get("x", 0))
            y = scalar_from_json(field.base, obj.get("y", 0))
            return QuadNum(field, x, y)
        return QuadNum(field, scalar_from_json(field.base, obj), field.base.zero)
    raise InvalidScalar(f"unknown field {field!r}")


def entry_to_json(algebra, e):
    if isinstance(e, Quaternion):
        return [scalar_to_json(c) for c in e.coords()]
    return scalar_to_json(e)


def entry_from_json(algebra, obj):
    if algebra.quat is not None:
        if isinstance(obj, list):
            if len(obj) != 4:
                raise InvalidScalar("quaternion scalars need 4 coordinates")
            return algebra.quat.element(
                *(scalar_from_json(algebra.K, c) for c in obj)
            )
        return algebra.quat.element(scalar_from_json(algebra.K, obj))
    return scalar_from_json(algebra.S, obj)


def element_to_json(algebra, x: Matrix):
    return [[entry_to_json(algebra, e) for e in row] for row in x.rows]


def element_from_json(algebra, obj) -> Matrix:
    k = algebra.k
    if not isinstance(obj, list) or len(obj) != k:
        raise InvalidEntry(f"expected a {k}x{k} row-major matrix")
    rows = []
    for row in obj:
        if not isinstance(row, list) or len(row) != k:
            raise InvalidEntry(f"expected a {k}x{k} row-major matrix")
        rows.append([entry_from_json(algebra, e) for e in row])
    return Matrix(rows)


def gram_to_json(algebra, gram: Matrix):
    return [[element_to_json(algebra, e) for e in row] for row in gram.rows]


def gram_from_json(algebra, obj) -> Matrix:
    if not isinstance(obj, list) or not obj:
        raise InvalidEntry("gram must be a nonempty array of rows")
    rows = []
    for row in obj:
        if not isinstance(row, list) or len(row) != len(obj):
            raise InvalidEntry("gram must be square")
        rows.append([element_from_json(algebra, e) for e in row])
    return Matrix(rows)


def basering_to_json(ring):
    if ring.kind == "rationals":
        return {"kind": "rationals"}
    if ring.kind == "real_quadratic":
        return {"kind": "real_quadratic", "m": ring.m}
    return {"kind": "product", "factors": [basering_to_json(f) for f in ring.factors]}


def basering_from_json(obj):
    from .baserings import BaseRing

    if not isinstance(obj, dict) or "kind" not in obj:
        raise InvalidScalar("base ring descriptor needs a 'kind'")
    kind = obj["kind"]
    if kind == "rationals":
        return BaseRing.rationals()
    if kind == "real_quadratic":
        m = obj.get("m")
        if not isinstance(m, int) or isinstance(m, bool):
            raise InvalidScalar("real_quadratic needs an integer 'm'")
        return BaseRing.real_quadratic(m)
    if kind == "product":
        factors = obj.get("factors")
        if not isinstance(factors, list):
            raise InvalidScalar("product needs a 'factors' array")
        return BaseRing.product([basering_from_json(f) for f in factors])
    raise InvalidScalar(f"unknown base ring kind {kind!r}")

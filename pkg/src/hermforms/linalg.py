"""Dense matrices over arbitrary rings plus exact field linear algebra.

``Matrix`` is a thin immutable-ish wrapper usable with any entry type that
implements +, -, * and truthiness (rationals, quadratic numbers, quaternions,
and nested matrices, which is how algebra elements of M_k(D) are stored).
Entries are never assumed commutative; scaling therefore comes in left and
right flavours.

The field routines (solve / inverse / det / nullspace) use plain Gaussian
elimination and require entries with exact division.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Sequence

from .errors import InternalError, InvalidEntry
from .scalars import scalar_inverse


class Matrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise InvalidEntry("matrices must be nonempty")
        w = len(rows[0])
        if any(len(r) != w for r in rows):
            raise InvalidEntry("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = w

    @classmethod
    def diagonal(cls, entries: Sequence, zero) -> "Matrix":
        n = len(entries)
        return cls(
            [[entries[i] if i == j else zero for j in range(n)] for i in range(n)]
        )

    @classmethod
    def zeros(cls, nrows: int, ncols: int, zero) -> "Matrix":
        return cls([[zero for _ in range(ncols)] for _ in range(nrows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(repr(e) for e in r) for r in self.rows)
        return f"Matrix[{body}]"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(
                not _differs(a, b)
                for ra, rb in zip(self.rows, other.rows)
                for a, b in zip(ra, rb)
            )
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, str(self.rows)))

    def __bool__(self) -> bool:
        return any(bool(e) for r in self.rows for e in r)

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._shape_check(other, same=True)
        return Matrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._shape_check(other, same=True)
        return Matrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> "Matrix":
        return self.map(lambda e: -e)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise InvalidEntry("matrix shape mismatch in product")
        bt = list(zip(*other.rows))
        out = []
        for ra in self.rows:
            row = []
            for cb in bt:
                acc = ra[0] * cb[0]
                for a, b in zip(ra[1:], cb[1:]):
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(out)

    def scale_left(self, s) -> "Matrix":
        return self.map(lambda e: s * e)

    def scale_right(self, s) -> "Matrix":
        return self.map(lambda e: e * s)

    def transpose(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self.rows)])

    def map(self, f: Callable) -> "Matrix":
        return Matrix([[f(e) for e in r] for r in self.rows])

    def copy_rows(self) -> List[List]:
        return [list(r) for r in self.rows]

    def _shape_check(self, other: "Matrix", same: bool = False) -> None:
        if same and (self.nrows != other.nrows or self.ncols != other.ncols):
            raise InvalidEntry("matrix shape mismatch")


def _differs(a, b) -> bool:
    return bool(a - b) if not isinstance(a, Matrix) else a != b


def flatten_blocks(m: Matrix) -> Matrix:
    """Erase one level of block structure: a matrix of k x k matrices
    becomes a plain (nk) x (nk) matrix."""
    k = m[0, 0].nrows
    out = []
    for block_row in m.rows:
        for i in range(k):
            out.append([blk.rows[i][j] for blk in block_row for j in range(k)])
    return Matrix(out)


def partition_blocks(m: Matrix, k: int) -> Matrix:
    """Inverse of flatten_blocks: cut an (nk) x (nk) matrix into k x k blocks."""
    if m.nrows % k or m.ncols % k:
        raise InvalidEntry("matrix size not divisible by block size")
    n, c = m.nrows // k, m.ncols // k
    return Matrix(
        [
            [
                Matrix([m.rows[bi * k + i][bj * k : bj * k + k] for i in range(k)])
                for bj in range(c)
            ]
            for bi in range(n)
        ]
    )


# -- exact field linear algebra ------------------------------------------


def field_solve(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Solve a * X = b over a field; None when a is singular."""
    n = a.nrows
    if a.ncols != n or b.nrows != n:
        raise InvalidEntry("shape mismatch in solve")
    m = [list(ra) + list(rb) for ra, rb in zip(a.rows, b.rows)]
    w = n + b.ncols
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = scalar_inverse(m[col][col])
        m[col] = [inv * e for e in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [e - f * p for e, p in zip(m[r], m[col])]
    return Matrix([row[n:w] for row in m])


def field_inverse(a: Matrix, one) -> Optional[Matrix]:
    zero = one - one
    return field_solve(a, Matrix.diagonal([one] * a.nrows, zero))


def field_det(a: Matrix):
    """Determinant over a field (entries must support exact division)."""
    n = a.nrows
    if a.ncols != n:
        raise InvalidEntry("determinant of non-square matrix")
    m = a.copy_rows()
    det = None
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            e = m[0][0]
            return e - e  # zero of the right type
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        det = p if det is None else det * p
        inv = scalar_inverse(p)
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [e - f * q for e, q in zip(m[r], m[col])]
    if sign < 0:
        det = -det
    return det


def field_nullspace(rows: List[List]) -> List[List]:
    """Basis of the right nullspace of a (possibly rectangular) matrix,
    given as a list of rows over a field."""
    if not rows:
        return []
    m = [list(r) for r in rows]
    ncols = len(m[0])
    pivots: Dict[int, List] = {}
    for row in m:
        for col, piv in pivots.items():
            if row[col]:
                f = row[col]
                row[:] = [e - f * p for e, p in zip(row, piv)]
        lead = next((c for c in range(ncols) if row[c]), None)
        if lead is None:
            continue
        inv = scalar_inverse(row[lead])
        row[:] = [inv * e for e in row]
        for col, piv in pivots.items():
            if piv[lead]:
                f = piv[lead]
                piv[:] = [e - f * q for e, q in zip(piv, row)]
        pivots[lead] = row
    zero = None
    for row in rows:
        for e in row:
            zero = e - e
            break
        break
    one = None
    if pivots:
        lead, piv = next(iter(pivots.items()))
        one_cand = piv[lead]
        one = one_cand
    basis = []
    free_cols = [c for c in range(ncols) if c not in pivots]
    for fc in free_cols:
        vec = [zero] * ncols
        if one is None:
            raise InternalError("nullspace of zero matrix needs explicit one")
        vec[fc] = one
        for lead, piv in pivots.items():
            vec[lead] = -piv[fc]
        basis.append(vec)
    return basis


def sparse_solve_unique(
    rows: List[Dict[int, object]], rhs: List, n_unknowns: int
) -> List:
    """Solve a sparse linear system with a unique solution over a field.

    rows[i] maps column index -> coefficient.  Raises InternalError when the
    system is inconsistent or underdetermined (callers rely on uniqueness).
    """
    rows = [dict(r) for r in rows]
    rhs = list(rhs)
    col_rows: Dict[int, set] = {}
    for ri, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(ri)
    alive = set(range(len(rows)))
    solved_order: List[tuple] = []
    while True:
        best = None
        for ri in alive:
            row = rows[ri]
            if not row:
                continue
            key = (len(row), min(row), ri)
            if best is None or key < best:
                best = key
        if best is None:
            break
        _, pc, pr = best
        prow, pval = rows[pr], rows[pr][pc]
        inv = scalar_inverse(pval)
        prow = {c: inv * v for c, v in prow.items()}
        rhs[pr] = inv * rhs[pr]
        rows[pr] = prow
        for ri in list(col_rows.get(pc, ())):
            if ri == pr:
                continue
            row = rows[ri]
            f = row.get(pc)
            if f is None:
                continue
            for c, v in prow.items():
                nv = row.get(c)
                nv = -f * v if nv is None else nv - f * v
                if nv:
                    row[c] = nv
                    col_rows.setdefault(c, set()).add(ri)
                else:
                    row.pop(c, None)
                    col_rows.get(c, set()).discard(ri)
            rhs[ri] = rhs[ri] - f * rhs[pr]
        alive.discard(pr)
        solved_order.append((pc, pr))
        col_rows.pop(pc, None)
    for ri in alive:
        if not rows[ri] and rhs[ri]:
            raise InternalError("inconsistent sparse system")
    if len(solved_order) != n_unknowns:
        raise InternalError("sparse system is underdetermined")
    solution: Dict[int, object] = {}
    for pc, pr in solved_order:
        # full elimination leaves each pivot row as a singleton
        if set(rows[pr]) != {pc}:
            raise InternalError("sparse elimination left a non-pivot entry")
        solution[pc] = scalar_inverse(rows[pr][pc]) * rhs[pr]
    return [solution[c] for c in range(n_unknowns)]

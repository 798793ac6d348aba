"""Exact dense linear algebra over the rationals and prime fields.

Scalars are plain Python objects: ``fractions.Fraction`` over the rationals
(automatically reduced, positive denominator) and ``int`` residues in
``0..p-1`` over a prime field.  A :class:`Field` value supplies the
arithmetic; a :class:`Matrix` is an immutable row-major grid of scalars.
Matrices with 0 rows or 0 columns are legal and represent maps to or from
the zero space.

No floating point is used anywhere.
"""

from __future__ import annotations

import re
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import MismatchError, ParseError

MAX_PRIME = 2**31

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_INT_RE = re.compile(r"^[+-]?\d+$")


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; the witness set {2,3,5,7} is exact below
    # 3.2e9, which covers the whole allowed range p < 2^31.
    if n < 2:
        return False
    for q in (2, 3, 5, 7):
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """An exact coefficient field: the rationals (``p is None``) or F_p."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None:
            if not (2 <= self.p < MAX_PRIME):
                raise ValueError(f"prime must satisfy 2 <= p < 2^31, got {self.p}")
            if not _is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def scalar(self, x):
        """Coerce ``x`` (int, Fraction, or scalar of this field) to canonical form."""
        if self.p is None:
            return x if isinstance(x, Fraction) else Fraction(x)
        return int(x) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def random(self, rng):
        """Draw one scalar: a uniform residue over F_p, a uniform integer in
        -9..9 over the rationals."""
        if self.p is None:
            return Fraction(rng.randint(-9, 9))
        return rng.randrange(self.p)

    def elements(self):
        """All field elements, ascending.  Prime fields only."""
        if self.p is None:
            raise ValueError("cannot enumerate the rationals")
        return range(self.p)

    def parse(self, text: str):
        """Parse a scalar from its text form (``n`` or ``n/d`` over Q, a
        decimal residue over F_p)."""
        text = text.strip()
        if self.p is None:
            if not _RATIONAL_RE.match(text):
                raise ParseError(f"bad rational scalar {text!r}")
            return Fraction(text)
        if not _INT_RE.match(text):
            raise ParseError(f"bad residue {text!r}")
        return int(text) % self.p

    def format(self, x) -> str:
        return str(x)

    def __str__(self):
        return "Q" if self.p is None else f"F{self.p}"


class Matrix:
    """Immutable dense matrix over an exact field.

    ``data`` is a tuple of row tuples; entries are canonical scalars of
    ``field``.  All operations return new matrices.
    """

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data, *, cols: Optional[int] = None):
        rows_list = [tuple(field.scalar(x) for x in row) for row in data]
        nrows = len(rows_list)
        if rows_list:
            ncols = len(rows_list[0])
            if any(len(r) != ncols for r in rows_list):
                raise MismatchError("ragged matrix rows")
            if cols is not None and cols != ncols:
                raise MismatchError(f"cols={cols} but rows have length {ncols}")
        else:
            if cols is None:
                raise MismatchError("a 0-row matrix needs an explicit column count")
            ncols = cols
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", nrows)
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "data", tuple(rows_list))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _make(cls, field: Field, rows: int, cols: int, data) -> "Matrix":
        # Fast path: data already canonical, correctly shaped.
        m = object.__new__(cls)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "data", tuple(tuple(r) for r in data))
        return m

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero
        return cls._make(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._make(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field: Field, columns, rows: int) -> "Matrix":
        cols = list(columns)
        return cls._make(field, rows, len(cols), [[col[i] for col in cols] for i in range(rows)])

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for row in self.data for x in row)

    def transpose(self) -> "Matrix":
        return Matrix._make(
            self.field, self.cols, self.rows,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise MismatchError("matrix product over different fields")
        if self.cols != other.rows:
            raise MismatchError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        f = self.field
        add, mul, zero = f.add, f.mul, f.zero
        bdata = other.data
        out = []
        for arow in self.data:
            orow = [zero] * other.cols
            for k, a in enumerate(arow):
                if a == zero:
                    continue
                brow = bdata[k]
                for j, b in enumerate(brow):
                    if b != zero:
                        orow[j] = add(orow[j], mul(a, b))
            out.append(orow)
        return Matrix._make(f, self.rows, other.cols, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        add = self.field.add
        return Matrix._make(
            self.field, self.rows, self.cols,
            [[add(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        sub = self.field.sub
        return Matrix._make(
            self.field, self.rows, self.cols,
            [[sub(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
        )

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix._make(self.field, self.rows, self.cols,
                            [[neg(a) for a in row] for row in self.data])

    def scale(self, s) -> "Matrix":
        s = self.field.scalar(s)
        mul = self.field.mul
        return Matrix._make(self.field, self.rows, self.cols,
                            [[mul(s, a) for a in row] for row in self.data])

    def _check_same_shape(self, other: "Matrix"):
        if self.field != other.field or self.rows != other.rows or self.cols != other.cols:
            raise MismatchError("matrix shape or field mismatch")

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.data == other.data)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.data))

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols}, {format_matrix(self)})"


def format_matrix(m: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in m.data) + "]"


def hstack(mats: Sequence[Matrix]) -> Matrix:
    if not mats:
        raise MismatchError("hstack of no matrices")
    rows = mats[0].rows
    field = mats[0].field
    if any(m.rows != rows or m.field != field for m in mats):
        raise MismatchError("hstack row/field mismatch")
    data = [[x for m in mats for x in m.data[i]] for i in range(rows)]
    return Matrix._make(field, rows, sum(m.cols for m in mats), data)


def vstack(mats: Sequence[Matrix]) -> Matrix:
    if not mats:
        raise MismatchError("vstack of no matrices")
    cols = mats[0].cols
    field = mats[0].field
    if any(m.cols != cols or m.field != field for m in mats):
        raise MismatchError("vstack column/field mismatch")
    data = [row for m in mats for row in m.data]
    return Matrix._make(field, sum(m.rows for m in mats), cols, data)


def block_diag(field: Field, mats: Sequence[Matrix]) -> Matrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    z = field.zero
    out = [[z] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        if m.field != field:
            raise MismatchError("block_diag field mismatch")
        for i, row in enumerate(m.data):
            orow = out[r0 + i]
            for j, x in enumerate(row):
                orow[c0 + j] = x
        r0 += m.rows
        c0 += m.cols
    return Matrix._make(field, rows, cols, out)


def matrix_power(m: Matrix, k: int) -> Matrix:
    if m.rows != m.cols:
        raise MismatchError("power of a non-square matrix")
    result = Matrix.identity(m.field, m.rows)
    base = m
    while k > 0:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


RrefResult = namedtuple("RrefResult", "reduced rank pivots")


def rref(m: Matrix) -> RrefResult:
    """Reduced row echelon form by Gauss-Jordan elimination.

    Returns the unique RREF of ``m`` together with its rank and the strictly
    increasing tuple of pivot column indices.  Exact in the field; pivot
    selection is "first nonzero row", which is deterministic and needs no
    magnitude heuristics.
    """
    f = m.field
    sub, mul, inv, zero, one = f.sub, f.mul, f.inv, f.zero, f.one
    rows = [list(r) for r in m.data]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if rows[i][c] != zero:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        pivrow = rows[r]
        pv = pivrow[c]
        if pv != one:
            piv_inv = inv(pv)
            for j in range(c, ncols):
                if pivrow[j] != zero:
                    pivrow[j] = mul(pivrow[j], piv_inv)
        for i in range(nrows):
            if i == r:
                continue
            fac = rows[i][c]
            if fac == zero:
                continue
            rowi = rows[i]
            for j in range(c, ncols):
                pj = pivrow[j]
                if pj != zero:
                    rowi[j] = sub(rowi[j], mul(fac, pj))
        pivots.append(c)
        r += 1
    return RrefResult(Matrix._make(f, nrows, ncols, rows), r, tuple(pivots))


def rank(m: Matrix) -> int:
    return rref(m).rank


def kernel_basis(m: Matrix) -> Matrix:
    """Basis of the null space of ``m``, as the columns of the result.

    Uses the canonical free-variable form induced by the RREF: for each free
    column (ascending) the basis vector has a 1 there, 0 at the other free
    columns, and minus the reduced entry at each pivot column.
    """
    red, rk, pivots = rref(m)
    f = m.field
    zero, one, neg = f.zero, f.one, f.neg
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    columns = []
    for fc in free:
        v = [zero] * m.cols
        v[fc] = one
        for r, p in enumerate(pivots):
            entry = red.data[r][fc]
            if entry != zero:
                v[p] = neg(entry)
        columns.append(v)
    return Matrix.from_columns(f, columns, m.cols)


def solve(a: Matrix, b: Sequence) -> Optional[tuple]:
    """Solve ``a x = b`` for one column ``b``.

    Returns the canonical solution with all free variables set to 0, or None
    when the system is inconsistent.
    """
    f = a.field
    b = [f.scalar(x) for x in b]
    if len(b) != a.rows:
        raise MismatchError(f"b has length {len(b)}, expected {a.rows}")
    x = solve_matrix(a, Matrix.from_columns(f, [b], a.rows))
    if x is None:
        return None
    return x.column(0)


def solve_matrix(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Solve ``a X = b`` column-wise with free variables set to 0."""
    if a.field != b.field or a.rows != b.rows:
        raise MismatchError("solve shape or field mismatch")
    aug = hstack([a, b]) if a.cols > 0 or b.cols > 0 else a
    red, rk, pivots = rref(aug)
    zero = a.field.zero
    for p in pivots:
        if p >= a.cols:
            return None  # a pivot in the augmented block: inconsistent
    out = [[zero] * b.cols for _ in range(a.cols)]
    for r, p in enumerate(pivots):
        for k in range(b.cols):
            out[p][k] = red.data[r][a.cols + k]
    return Matrix._make(a.field, a.cols, b.cols, out)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise MismatchError("inverse of a non-square matrix")
    if m.rows == 0:
        return m
    red, rk, pivots = rref(hstack([m, Matrix.identity(m.field, m.rows)]))
    if sum(1 for p in pivots if p < m.cols) < m.rows:
        raise MismatchError("matrix is singular")
    data = [row[m.rows:] for row in red.data]
    return Matrix._make(m.field, m.rows, m.cols, data)


def random_matrix(rows: int, cols: int, field: Field, rng) -> Matrix:
    """Matrix with entries drawn one by one in row-major order from
    ``field.random``; identical seeds give identical matrices."""
    return Matrix._make(field, rows, cols,
                        [[field.random(rng) for _ in range(cols)] for _ in range(rows)])


def random_invertible_matrix(n: int, field: Field, rng) -> Matrix:
    """Draw square matrices until one is invertible.  Terminates quickly for
    every field here; deterministic given the rng state."""
    if n == 0:
        return Matrix.zeros(field, 0, 0)
    while True:
        m = random_matrix(n, n, field, rng)
        if rank(m) == n:
            return m

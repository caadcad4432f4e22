"""Dense exact matrices over an active coefficient field.

Storage is row-major (list of row lists) with entries in the field's
canonical form.  Elimination over GF(p) with p < 2**31 is delegated to a
vectorized int64 backend; every intermediate there stays strictly below
2**63, so the fast path is exact.  The rational path is fraction-free:
rows are scaled to integers (row scaling leaves the row space, and with it
the reduced echelon form, untouched), eliminated by integer
cross-multiplication, and divided by their content after each update, so
entries stay minor-sized instead of compounding through reduced-fraction
arithmetic.

Pivot rules are fixed for determinism: first nonzero entry scanning
top-to-bottom over GF(p), largest-height entry over the rationals.  The
reduced row echelon form itself is unique regardless of pivot order, so
ranks, kernels and canonical forms agree between all backends.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ShapeError
from .fields import DEFAULT_PRIME, Field, PrimeField, RationalField

# int64 elimination needs f * entry and k-term split products below 2**63.
_FAST_PRIME_LIMIT = 1 << 31
_FAST_INNER_LIMIT = 1 << 15


class Matrix:
    """Immutable-by-convention dense matrix over one field."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data: Sequence[Sequence], cols: int | None = None):
        rows = len(data)
        if rows == 0:
            if cols is None:
                cols = 0
        else:
            if cols is None:
                cols = len(data[0])
        out = []
        for row in data:
            if len(row) != cols:
                raise ShapeError("ragged rows in matrix constructor")
            out.append([field.coerce(x) for x in row])
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = out

    @classmethod
    def _raw(cls, field: Field, data: list[list], cols: int | None = None) -> "Matrix":
        # entries must already be canonical for `field`
        m = object.__new__(cls)
        m.field = field
        m.rows = len(data)
        m.cols = cols if cols is not None else (len(data[0]) if data else 0)
        m.data = data
        return m

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return cls._raw(field, [[z] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        data = [[o if i == j else z for j in range(n)] for i in range(n)]
        return cls._raw(field, data, n)

    @classmethod
    def diagonal(cls, field: Field, entries: Sequence) -> "Matrix":
        n = len(entries)
        z = field.zero()
        data = [[field.coerce(entries[i]) if i == j else z for j in range(n)] for i in range(n)]
        return cls._raw(field, data, n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key) -> object:
        i, j = key
        return self.data[i][j]

    def row(self, i: int) -> list:
        return list(self.data[i])

    def column(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def copy(self) -> "Matrix":
        return Matrix._raw(self.field, [row[:] for row in self.data], self.cols)

    def transpose(self) -> "Matrix":
        data = [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return Matrix._raw(self.field, data, self.rows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def _check_same_shape(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise ShapeError("expected a Matrix operand")
        if self.field != other.field:
            raise ShapeError("operands live over different fields")
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        add = self.field.add
        data = [
            [add(a, b) for a, b in zip(ra, rb)]
            for ra, rb in zip(self.data, other.data)
        ]
        return Matrix._raw(self.field, data, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        sub = self.field.sub
        data = [
            [sub(a, b) for a, b in zip(ra, rb)]
            for ra, rb in zip(self.data, other.data)
        ]
        return Matrix._raw(self.field, data, self.cols)

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix._raw(self.field, [[neg(a) for a in row] for row in self.data], self.cols)

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        mul = self.field.mul
        return Matrix._raw(self.field, [[mul(c, a) for a in row] for row in self.data], self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field:
            raise ShapeError("matmul operands live over different fields")
        if self.cols != other.rows:
            raise ShapeError(
                f"matmul shape mismatch: {self.shape} @ {other.shape}"
            )
        field = self.field
        if _has_fast_path(field) and self.cols <= _FAST_INNER_LIMIT:
            prod = _matmul_mod(_to_np(self), _to_np(other), field.p)
            return _from_np(field, prod)
        z = field.zero()
        add, mul = field.add, field.mul
        out = [[z] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            arow = self.data[i]
            orow = out[i]
            for k in range(self.cols):
                aik = arow[k]
                if aik == 0:
                    continue
                brow = other.data[k]
                for j in range(other.cols):
                    bkj = brow[j]
                    if bkj != 0:
                        orow[j] = add(orow[j], mul(aik, bkj))
        return Matrix._raw(field, out, other.cols)

    def is_zero(self) -> bool:
        z = self.field.zero()
        return all(x == z for row in self.data for x in row)

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self.data[i][j] == self.data[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def is_skew_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        neg = self.field.neg
        z = self.field.zero()
        for i in range(self.rows):
            if self.data[i][i] != z:
                return False
            for j in range(i + 1, self.cols):
                if self.data[i][j] != neg(self.data[j][i]):
                    return False
        return True

    def submatrix(self, row0: int, row1: int, col0: int, col1: int) -> "Matrix":
        data = [row[col0:col1] for row in self.data[row0:row1]]
        return Matrix._raw(self.field, data, col1 - col0)

    @staticmethod
    def hstack(blocks: Sequence["Matrix"]) -> "Matrix":
        if not blocks:
            raise ShapeError("hstack of no blocks")
        field = blocks[0].field
        rows = blocks[0].rows
        for b in blocks:
            if b.rows != rows or b.field != field:
                raise ShapeError("hstack blocks disagree in row count or field")
        data = [sum((b.data[i] for b in blocks), []) for i in range(rows)]
        return Matrix._raw(field, data, sum(b.cols for b in blocks))

    @staticmethod
    def vstack(blocks: Sequence["Matrix"]) -> "Matrix":
        if not blocks:
            raise ShapeError("vstack of no blocks")
        field = blocks[0].field
        cols = blocks[0].cols
        for b in blocks:
            if b.cols != cols or b.field != field:
                raise ShapeError("vstack blocks disagree in column count or field")
        data = [row[:] for b in blocks for row in b.data]
        return Matrix._raw(field, data, cols)

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int) -> "Matrix":
        return cls(field, rows, cols)

    def to_text(self) -> str:
        """Debug dump: one row per line, entries space-separated."""
        to_s = self.field.element_to_str
        return "\n".join(" ".join(to_s(x) for x in row) for row in self.data)

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.rows}x{self.cols})"


def matvec(m: Matrix, v: Sequence) -> list:
    """Matrix times column vector, returned as a list."""
    if len(v) != m.cols:
        raise ShapeError(f"matvec length mismatch: {m.shape} @ {len(v)}")
    field = m.field
    v = [field.coerce(x) for x in v]
    add, mul = field.add, field.mul
    out = []
    for row in m.data:
        acc = field.zero()
        for a, x in zip(row, v):
            if a != 0 and x != 0:
                acc = add(acc, mul(a, x))
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# GF(p) fast backend (int64, exact for p < 2**31)


def _has_fast_path(field: Field) -> bool:
    return isinstance(field, PrimeField) and field.p < _FAST_PRIME_LIMIT


def _to_np(m: Matrix) -> np.ndarray:
    return np.array(m.data, dtype=np.int64).reshape(m.rows, m.cols)


def _from_np(field: Field, arr: np.ndarray) -> Matrix:
    data = [[int(x) for x in row] for row in arr]
    return Matrix._raw(field, data, arr.shape[1])


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # Split b into 16-bit halves so every partial sum stays below 2**63.
    b_lo = b & 0xFFFF
    b_hi = b >> 16
    lo = (a @ b_lo) % p
    hi = (a @ b_hi) % p
    return (lo + (hi << 16)) % p


def _rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        a -= np.outer(col, a[r])
        a %= p
        pivots.append(c)
        r += 1
    return a, pivots


# ---------------------------------------------------------------------------
# Generic elimination (primes past the int64 range)


def _rref_generic(m: Matrix) -> tuple[list[list], list[int]]:
    field = m.field
    a = [row[:] for row in m.data]
    rows, cols = m.rows, m.cols
    mul, sub, inv = field.mul, field.sub, field.inv
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if a[i][c] != 0), -1)
        if pr < 0:
            continue
        if pr != r:
            a[r], a[pr] = a[pr], a[r]
        piv_inv = inv(a[r][c])
        prow = a[r] = [mul(piv_inv, x) for x in a[r]]
        for i in range(rows):
            if i == r:
                continue
            f = a[i][c]
            if f != 0:
                a[i] = [sub(x, mul(f, y)) for x, y in zip(a[i], prow)]
        pivots.append(c)
        r += 1
    return a, pivots


# ---------------------------------------------------------------------------
# Rational elimination (fraction-free, content-reduced)


def _cleared_int_rows(m: Matrix) -> list[list[int]]:
    """Integer rows spanning the same row space: scale out denominators
    and strip the content; row scaling never changes the echelon form."""
    out = []
    for row in m.data:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        ints = [int(x.numerator) * (lcm // x.denominator) for x in row]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _rref_rational(m: Matrix) -> tuple[list[list], list[int]]:
    rows, cols = m.rows, m.cols
    a = _cleared_int_rows(m)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        # largest-height candidate, topmost on ties
        pr, best = -1, 0
        for i in range(r, rows):
            h = abs(a[i][c])
            if h > best:
                pr, best = i, h
        if pr < 0:
            continue
        if pr != r:
            a[r], a[pr] = a[pr], a[r]
        prow = a[r]
        pv = prow[c]
        for i in range(rows):
            if i == r:
                continue
            f = a[i][c]
            if f == 0:
                continue
            new = [pv * x - f * y for x, y in zip(a[i], prow)]
            g = 0
            for v in new:
                g = math.gcd(g, v)
            if g > 1:
                new = [v // g for v in new]
            a[i] = new
        pivots.append(c)
        r += 1
    zero_row = [Fraction(0)] * cols
    data = []
    for i, row in enumerate(a):
        if i < len(pivots):
            pv = row[pivots[i]]
            data.append([Fraction(x, pv) for x in row])
        else:
            data.append(zero_row[:])
    return data, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and its pivot columns (both canonical)."""
    if m.rows == 0 or m.cols == 0:
        return m.copy(), []
    if _has_fast_path(m.field):
        arr, pivots = _rref_mod(_to_np(m), m.field.p)
        return _from_np(m.field, arr), pivots
    if isinstance(m.field, RationalField):
        data, pivots = _rref_rational(m)
    else:
        data, pivots = _rref_generic(m)
    return Matrix._raw(m.field, data, m.cols), pivots


def _modular_rank_probe(m: Matrix, p: int) -> int:
    """Rank of the cleared integer matrix reduced mod p.

    Reduction can only collapse independent rows, never create new ones,
    so the probe is a certified lower bound for the rational rank.
    """
    arr = np.array(
        [[v % p for v in row] for row in _cleared_int_rows(m)], dtype=np.int64
    ).reshape(m.rows, m.cols)
    return len(_rref_mod(arr, p)[1])


def rank(m: Matrix) -> int:
    """Exact rank over the matrix's field."""
    if isinstance(m.field, RationalField) and m.rows and m.cols:
        bound = min(m.rows, m.cols)
        if _modular_rank_probe(m, DEFAULT_PRIME) == bound:
            return bound
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list[list]:
    """Canonical basis of the right kernel.

    Returns exactly ``cols - rank`` vectors v with m @ v = 0.  The stacked
    basis is in reduced row echelon form, so two kernels coincide as
    subspaces iff the returned bases are equal.
    """
    field = m.field
    r, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    if not free:
        return []
    z, o = field.zero(), field.one()
    neg = field.neg
    vectors = []
    for f in free:
        v = [z] * m.cols
        v[f] = o
        for i, pc in enumerate(pivots):
            v[pc] = neg(r.data[i][f])
        vectors.append(v)
    stacked = Matrix._raw(field, vectors, m.cols)
    reduced, _ = rref(stacked)
    return [row[:] for row in reduced.data]


def inverse(m: Matrix) -> Matrix:
    """Exact inverse; DomainError if the matrix is singular."""
    if m.rows != m.cols:
        raise ShapeError("only square matrices can be inverted")
    n = m.rows
    aug = Matrix.hstack([m, Matrix.identity(m.field, n)])
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise DomainError("matrix is singular")
    return red.submatrix(0, n, n, 2 * n)


def row_space_canonical(m: Matrix) -> Matrix:
    """RREF with zero rows dropped: the canonical form of the row space."""
    red, pivots = rref(m)
    return Matrix._raw(m.field, [red.data[i][:] for i in range(len(pivots))], m.cols)


def spans_match(field: Field, vectors_a: Iterable[Sequence], vectors_b: Iterable[Sequence], length: int) -> bool:
    """Subspace equality of two spans, decided by canonical row spaces."""
    a = Matrix(field, [list(v) for v in vectors_a], length)
    b = Matrix(field, [list(v) for v in vectors_b], length)
    return row_space_canonical(a) == row_space_canonical(b)

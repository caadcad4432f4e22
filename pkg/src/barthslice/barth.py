"""Algebra of the Barth slice of normalized instanton monads.

A slice point is a tuple (A1, A2, B1, B2, a1, a2, b1, b2) of four symmetric
n x n matrices and four n-vectors subject to three skew-symmetric quadratic
matrix equations:

    [A1, B1] + a1 ^ b1 = 0
    [A2, B2] + a2 ^ b2 = 0
    [A1, B2] + [A2, B1] + a1 ^ b2 + a2 ^ b1 = 0

with [X, Y] = XY - YX and a ^ b = a b^T - b a^T.  The equations are
bilinear in the (A, a) half and the (B, b) half, so freezing the half data
turns them into a linear system in (B1, B2, b1, b2): the fiber system.

Coordinate conventions (fixed for certificate comparability):

* symmetric matrices are vectorized by their upper triangle including the
  diagonal, row-major;
* skew matrices by their strict upper triangle, row-major;
* fiber coordinates are ordered B1, B2, b1, b2 (half coordinates A1, A2,
  a1, a2 mirror this);
* equation rows are ordered first equation, second, third.

The slice carries an O(n) x SL(2) action; the residual transforms by
conjugation under it, so the solution set is invariant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, InvariantError, SamplingError, ShapeError
from .fields import Field
from .linalg import Matrix, inverse, matvec


def _check_not_char2(field: Field):
    if field.characteristic == 2:
        raise InvariantError("slice algebra requires characteristic != 2")


def _coerce_vector(field: Field, v, n: int) -> tuple:
    if len(v) != n:
        raise ShapeError(f"vector has length {len(v)}, expected {n}")
    return tuple(field.coerce(x) for x in v)


def _check_symmetric(m: Matrix, n: int, name: str):
    if m.shape != (n, n):
        raise ShapeError(f"{name} has shape {m.shape}, expected ({n}, {n})")
    if not m.is_symmetric():
        raise InvariantError(f"{name} is not symmetric")


@dataclass(frozen=True)
class HalfData:
    """The frozen half (A1, A2, a1, a2) of a slice point."""

    n: int
    A1: Matrix
    A2: Matrix
    a1: tuple
    a2: tuple

    def __post_init__(self):
        field = self.A1.field
        _check_not_char2(field)
        if self.A2.field != field:
            raise InvariantError("half data mixes coefficient fields")
        _check_symmetric(self.A1, self.n, "A1")
        _check_symmetric(self.A2, self.n, "A2")
        object.__setattr__(self, "a1", _coerce_vector(field, self.a1, self.n))
        object.__setattr__(self, "a2", _coerce_vector(field, self.a2, self.n))

    @property
    def field(self) -> Field:
        return self.A1.field


@dataclass(frozen=True)
class FiberData:
    """The unknown half (B1, B2, b1, b2) of the linearized equations."""

    B1: Matrix
    B2: Matrix
    b1: tuple
    b2: tuple

    def __post_init__(self):
        n = self.B1.rows
        field = self.B1.field
        _check_not_char2(field)
        if self.B2.field != field:
            raise InvariantError("fiber data mixes coefficient fields")
        _check_symmetric(self.B1, n, "B1")
        _check_symmetric(self.B2, n, "B2")
        object.__setattr__(self, "b1", _coerce_vector(field, self.b1, n))
        object.__setattr__(self, "b2", _coerce_vector(field, self.b2, n))

    @property
    def n(self) -> int:
        return self.B1.rows

    @property
    def field(self) -> Field:
        return self.B1.field


@dataclass(frozen=True)
class SliceData:
    """A full slice point: half data plus fiber data, 2n(n+3) coordinates."""

    half: HalfData
    fiber: FiberData

    def __post_init__(self):
        if self.fiber.n != self.half.n:
            raise ShapeError("half and fiber sizes disagree")
        if self.fiber.field != self.half.field:
            raise InvariantError("half and fiber fields disagree")

    @property
    def n(self) -> int:
        return self.half.n

    @property
    def field(self) -> Field:
        return self.half.field


@dataclass(frozen=True)
class SliceResidual:
    """Left-hand sides of the three slice equations; each is skew-symmetric."""

    R1: Matrix
    R2: Matrix
    R3: Matrix

    def __post_init__(self):
        for name in ("R1", "R2", "R3"):
            r = getattr(self, name)
            if not r.is_skew_symmetric():
                raise InvariantError(f"residual block {name} is not skew-symmetric")

    def is_zero(self) -> bool:
        return self.R1.is_zero() and self.R2.is_zero() and self.R3.is_zero()


@dataclass(frozen=True)
class GroupElement:
    """An element (g, m) of O(n) x SL(2): g orthogonal, det m = 1."""

    g: Matrix
    m: Matrix

    def __post_init__(self):
        field = self.g.field
        _check_not_char2(field)
        n = self.g.rows
        if self.g.cols != n:
            raise ShapeError("orthogonal factor must be square")
        if self.m.field != field:
            raise InvariantError("group element mixes coefficient fields")
        if self.m.shape != (2, 2):
            raise ShapeError("SL(2) factor must be 2x2")
        if (self.g @ self.g.T) != Matrix.identity(field, n):
            raise InvariantError("g is not orthogonal")
        s, t = self.m.data[0]
        u, v = self.m.data[1]
        det = field.sub(field.mul(s, v), field.mul(t, u))
        if det != field.one():
            raise InvariantError("SL(2) factor does not have determinant 1")

    @property
    def field(self) -> Field:
        return self.g.field


# ---------------------------------------------------------------------------
# Residual and vectorization


def wedge(field: Field, a, b) -> Matrix:
    """a b^T - b a^T for two equal-length vectors; always skew-symmetric."""
    if len(a) != len(b):
        raise ShapeError("wedge of vectors with different lengths")
    a = [field.coerce(x) for x in a]
    b = [field.coerce(x) for x in b]
    sub, mul = field.sub, field.mul
    n = len(a)
    data = [[sub(mul(a[i], b[j]), mul(b[i], a[j])) for j in range(n)] for i in range(n)]
    return Matrix._raw(field, data, n)


def _commutator(x: Matrix, y: Matrix) -> Matrix:
    return (x @ y) - (y @ x)


def residual(x: SliceData) -> SliceResidual:
    """Evaluate the three slice equations at a point."""
    h, f = x.half, x.fiber
    field = x.field
    r1 = _commutator(h.A1, f.B1) + wedge(field, h.a1, f.b1)
    r2 = _commutator(h.A2, f.B2) + wedge(field, h.a2, f.b2)
    r3 = (
        _commutator(h.A1, f.B2)
        + _commutator(h.A2, f.B1)
        + wedge(field, h.a1, f.b2)
        + wedge(field, h.a2, f.b1)
    )
    return SliceResidual(r1, r2, r3)


def residual_cross(h: SliceData) -> SliceResidual:
    """Purely bilinear tail of the expansion.

    The residual is bilinear in (half, fiber), so
    residual(x + h) = residual(x) + directional terms + residual_cross(h)
    holds exactly, with residual_cross(h) = residual(h).
    """
    return residual(h)


def sym_index(n: int) -> list[tuple[int, int]]:
    """Upper triangle including the diagonal, row-major."""
    return [(i, j) for i in range(n) for j in range(i, n)]


def skew_index(n: int) -> list[tuple[int, int]]:
    """Strict upper triangle, row-major."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def vec_fiber(f: FiberData) -> list:
    """Fiber coordinates: vech(B1), vech(B2), b1, b2; length n(n+3)."""
    idx = sym_index(f.n)
    out = [f.B1.data[i][j] for i, j in idx]
    out += [f.B2.data[i][j] for i, j in idx]
    out += list(f.b1)
    out += list(f.b2)
    return out


def vec_half(h: HalfData) -> list:
    """Half coordinates: vech(A1), vech(A2), a1, a2; length n(n+3)."""
    idx = sym_index(h.n)
    out = [h.A1.data[i][j] for i, j in idx]
    out += [h.A2.data[i][j] for i, j in idx]
    out += list(h.a1)
    out += list(h.a2)
    return out


def vec_slice(x: SliceData) -> list:
    """Full coordinates: half block first, then fiber block."""
    return vec_half(x.half) + vec_fiber(x.fiber)


def vec_skew(r: SliceResidual) -> list:
    """Equation values: strict upper triangles of R1, R2, R3, row-major."""
    n = r.R1.rows
    idx = skew_index(n)
    out = [r.R1.data[i][j] for i, j in idx]
    out += [r.R2.data[i][j] for i, j in idx]
    out += [r.R3.data[i][j] for i, j in idx]
    return out


def _symmetric_from_vech(field: Field, n: int, vals: list) -> Matrix:
    z = field.zero()
    data = [[z] * n for _ in range(n)]
    for (i, j), v in zip(sym_index(n), vals):
        data[i][j] = v
        data[j][i] = v
    return Matrix._raw(field, data, n)


def fiber_from_vec(field: Field, n: int, v: list) -> FiberData:
    """Inverse of vec_fiber."""
    s = n * (n + 1) // 2
    if len(v) != n * (n + 3):
        raise ShapeError(f"fiber vector has length {len(v)}, expected {n * (n + 3)}")
    v = [field.coerce(x) for x in v]
    b1m = _symmetric_from_vech(field, n, v[:s])
    b2m = _symmetric_from_vech(field, n, v[s : 2 * s])
    return FiberData(b1m, b2m, tuple(v[2 * s : 2 * s + n]), tuple(v[2 * s + n :]))


def half_from_vec(field: Field, n: int, v: list) -> HalfData:
    """Inverse of vec_half."""
    s = n * (n + 1) // 2
    if len(v) != n * (n + 3):
        raise ShapeError(f"half vector has length {len(v)}, expected {n * (n + 3)}")
    v = [field.coerce(x) for x in v]
    a1m = _symmetric_from_vech(field, n, v[:s])
    a2m = _symmetric_from_vech(field, n, v[s : 2 * s])
    return HalfData(n, a1m, a2m, tuple(v[2 * s : 2 * s + n]), tuple(v[2 * s + n :]))


# ---------------------------------------------------------------------------
# The linear fiber system


def fiber_system(half: HalfData) -> Matrix:
    """Matrix L of the equations linearized in the fiber unknowns.

    L has 3n(n-1)/2 rows and n(n+3) columns and satisfies
    vec_skew(residual(half, f)) = L @ vec_fiber(f) for every FiberData f.
    """
    n = half.n
    field = half.field
    s = n * (n + 1) // 2
    width = n * (n + 3)
    pos = {ij: k for k, ij in enumerate(sym_index(n))}
    a1_off, a2_off = 2 * s, 2 * s + n

    # per equation: commutator terms (matrix, unknown block offset) and
    # wedge terms (vector, unknown vector offset)
    equations = (
        ([(half.A1.data, 0)], [(half.a1, a1_off)]),
        ([(half.A2.data, s)], [(half.a2, a2_off)]),
        (
            [(half.A1.data, s), (half.A2.data, 0)],
            [(half.a1, a2_off), (half.a2, a1_off)],
        ),
    )

    rows = []
    pairs = skew_index(n)
    for commutators, wedges in equations:
        for i, j in pairs:
            row = [0] * width
            for sd, off in commutators:
                srow = sd[i]
                for k in range(n):
                    row[off + pos[(k, j) if k <= j else (j, k)]] += srow[k]
                    row[off + pos[(i, k) if i <= k else (k, i)]] -= sd[k][j]
            for vec, off in wedges:
                row[off + j] += vec[i]
                row[off + i] -= vec[j]
            rows.append([field.coerce(e) for e in row])
    return Matrix._raw(field, rows, width)


def canonical_fiber_solutions(half: HalfData) -> list[FiberData]:
    """The four fiber solutions present for every half datum.

    (I, 0, 0, 0), (0, I, 0, 0), (A1, A2, 0, 0), (0, 0, a1, a2): identities
    [X, I] = 0, [X, X] = 0, a ^ a = 0 and a1 ^ a2 + a2 ^ a1 = 0 make each
    residual vanish identically; this is asserted.
    """
    n, field = half.n, half.field
    eye = Matrix.identity(field, n)
    zero = Matrix.zeros(field, n, n)
    zv = tuple(field.zero() for _ in range(n))
    sols = [
        FiberData(eye, zero, zv, zv),
        FiberData(zero, eye, zv, zv),
        FiberData(half.A1, half.A2, zv, zv),
        FiberData(zero, zero, half.a1, half.a2),
    ]
    for f in sols:
        if not residual(SliceData(half, f)).is_zero():
            raise InvariantError("canonical fiber solution has nonzero residual")
    return sols


# ---------------------------------------------------------------------------
# Group action


def apply_group(x: SliceData, e: GroupElement) -> SliceData:
    """Act by (g, m): conjugate the matrices by g, mix the vector pairs by m."""
    if e.field != x.field or e.g.rows != x.n:
        raise ShapeError("group element does not match the slice point")
    field = x.field
    g = e.g
    gt = g.T
    h, f = x.half, x.fiber
    s, t = e.m.data[0]
    u, v = e.m.data[1]

    ga1, gb1 = matvec(g, h.a1), matvec(g, f.b1)
    ga2, gb2 = matvec(g, h.a2), matvec(g, f.b2)
    add, mul = field.add, field.mul

    def mix(c1, w1, c2, w2):
        return tuple(add(mul(c1, p), mul(c2, q)) for p, q in zip(w1, w2))

    new_half = HalfData(
        x.n,
        g @ h.A1 @ gt,
        g @ h.A2 @ gt,
        mix(s, ga1, u, gb1),
        mix(s, ga2, u, gb2),
    )
    new_fiber = FiberData(
        g @ f.B1 @ gt,
        g @ f.B2 @ gt,
        mix(t, ga1, v, gb1),
        mix(t, ga2, v, gb2),
    )
    return SliceData(new_half, new_fiber)


def compose_group(e2: GroupElement, e1: GroupElement) -> GroupElement:
    """Composite element so that acting by e1 then e2 equals acting by it.

    The orthogonal factors compose as g2 g1; the SL(2) factors act on the
    right of the vector pairs and therefore compose as m1 m2.
    """
    return GroupElement(e2.g @ e1.g, e1.m @ e2.m)


def random_orthogonal(rng, field: Field, n: int, *, signed_permutation: bool = True,
                      attempts: int = 16) -> Matrix:
    """Exactly orthogonal matrix from the Cayley transform of a random skew S.

    Returns (I - S)(I + S)^{-1}, optionally composed with a random signed
    permutation so all components of O(n) are reachable.  Resamples S when
    I + S is singular, then gives up with SamplingError.
    """
    _check_not_char2(field)
    if n < 1:
        raise DomainError("orthogonal matrices need n >= 1")
    eye = Matrix.identity(field, n)
    for _ in range(attempts):
        z = field.zero()
        data = [[z] * n for _ in range(n)]
        for i, j in skew_index(n):
            v = field.sample(rng)
            data[i][j] = v
            data[j][i] = field.neg(v)
        skew = Matrix._raw(field, data, n)
        try:
            cayley = (eye - skew) @ inverse(eye + skew)
        except DomainError:
            continue
        if not signed_permutation:
            return cayley
        perm = rng.permutation(n)
        one = field.one()
        signs = [one if rng.integers(2) == 0 else field.neg(one) for _ in range(n)]
        pdata = [[z] * n for _ in range(n)]
        for i in range(n):
            pdata[i][perm[i]] = signs[i]
        return Matrix._raw(field, pdata, n) @ cayley
    raise SamplingError(f"no invertible I + S found in {attempts} attempts")


def random_sl2(rng, field: Field) -> Matrix:
    """Random 2x2 matrix of determinant one (top-left entry kept nonzero)."""
    while True:
        s = field.sample(rng)
        if s != field.zero():
            break
    t = field.sample(rng)
    u = field.sample(rng)
    v = field.div(field.add(field.one(), field.mul(t, u)), s)
    return Matrix._raw(field, [[s, t], [u, v]], 2)


def random_group_element(rng, field: Field, n: int) -> GroupElement:
    return GroupElement(random_orthogonal(rng, field, n), random_sl2(rng, field))


# ---------------------------------------------------------------------------
# Jacobian


def jacobian(x: SliceData) -> Matrix:
    """Exact derivative of vec_skew(residual) in the full coordinates.

    Shape (3n(n-1)/2) x 2n(n+3), half-block columns first.  By bilinearity
    the fiber block is fiber_system(x.half); the half block is the linear
    system in (A, a) with (B, b) frozen, which is the negated fiber system
    of the fiber data read as half data.
    """
    f = x.fiber
    swapped = HalfData(x.n, f.B1, f.B2, f.b1, f.b2)
    half_block = -fiber_system(swapped)
    fiber_block = fiber_system(x.half)
    return Matrix.hstack([half_block, fiber_block])

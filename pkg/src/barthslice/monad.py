"""Monad-level checks for slice points.

A slice point is packaged as a (2n+2) x 4n matrix gamma with column blocks
C1, C2, C3, C4 (n columns each):

    [  0    I    A1   A2 ]
    [ -I    0    B1   B2 ]
    [  0    0   a1^T a2^T]
    [  0    0   b1^T b2^T]

Pairing the blocks through the symplectic form q = diag(J_2n, J_2) gives the
Gram blocks M_ij = C_i^T q C_j.  Skew-symmetry of gamma^T q gamma, i.e.
M_ii = 0 and M_ij + M_ji = 0, reproduces the slice equations exactly: the
diagonal blocks M_33, M_44 are the first two residuals and M_34 + M_43 the
third, while the remaining conditions hold identically by symmetry of the
A and B blocks.

The module also checks the two genericity conditions used to certify that a
point yields an honest monad: pointwise injectivity of the linear map
v -> gamma(v) on a sample of fibre directions, and the rank condition on the
vector pencil (a1 + t a2, b1 + t b2) for all t, including t = infinity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .barth import SliceData
from .errors import DomainError, InvariantError, ShapeError
from .fields import Field
from .linalg import Matrix, rank
from .poly import Poly, poly_gcd


@dataclass(frozen=True)
class GammaMatrix:
    """The (2n+2) x 4n block matrix attached to a slice point."""

    n: int
    body: Matrix

    def __post_init__(self):
        expected = (2 * self.n + 2, 4 * self.n)
        if self.body.shape != expected:
            raise ShapeError(f"gamma body has shape {self.body.shape}, expected {expected}")

    @property
    def field(self) -> Field:
        return self.body.field

    def col_block(self, j: int) -> Matrix:
        """The j-th column block C_{j+1}, shape (2n+2) x n, for j in 0..3."""
        if not 0 <= j < 4:
            raise DomainError("column block index must be in 0..3")
        return self.body.submatrix(0, self.body.rows, j * self.n, (j + 1) * self.n)


def build_gamma(x: SliceData) -> GammaMatrix:
    n, field = x.n, x.field
    h, f = x.half, x.fiber
    z, one = field.zero(), field.one()
    rows = []
    for i in range(n):
        row = [z] * n
        row += [one if j == i else z for j in range(n)]
        row += h.A1.data[i] + h.A2.data[i]
        rows.append(row)
    for i in range(n):
        row = [field.neg(one) if j == i else z for j in range(n)]
        row += [z] * n
        row += f.B1.data[i] + f.B2.data[i]
        rows.append(row)
    rows.append([z] * (2 * n) + list(h.a1) + list(h.a2))
    rows.append([z] * (2 * n) + list(f.b1) + list(f.b2))
    return GammaMatrix(n, Matrix._raw(field, rows, 4 * n))


def symplectic_form(field: Field, n: int) -> Matrix:
    """q = diag(J_2n, J_2) with J_2k = [[0, I_k], [-I_k, 0]]; size 2n+2."""
    z, one = field.zero(), field.one()
    neg_one = field.neg(one)
    size = 2 * n + 2
    data = [[z] * size for _ in range(size)]
    for i in range(n):
        data[i][n + i] = one
        data[n + i][i] = neg_one
    data[2 * n][2 * n + 1] = one
    data[2 * n + 1][2 * n] = neg_one
    return Matrix._raw(field, data, size)


@dataclass(frozen=True)
class GramBlocks:
    """The 4 x 4 grid of n x n blocks of gamma^T q gamma."""

    n: int
    blocks: tuple

    def block(self, i: int, j: int) -> Matrix:
        return self.blocks[i][j]


def gram_blocks(gamma: GammaMatrix) -> GramBlocks:
    """Compute M_ij = C_i^T q C_j for all i, j.

    The full Gram matrix gamma^T q gamma is skew-symmetric because q is;
    M_ij^T = -M_ji is asserted rather than assumed.
    """
    n, field = gamma.n, gamma.field
    q = symplectic_form(field, n)
    gram = gamma.body.T @ q @ gamma.body
    blocks = tuple(
        tuple(gram.submatrix(i * n, (i + 1) * n, j * n, (j + 1) * n) for j in range(4))
        for i in range(4)
    )
    for i in range(4):
        for j in range(4):
            if blocks[i][j].T != -blocks[j][i]:
                raise InvariantError("Gram matrix is not skew-symmetric")
    return GramBlocks(n, blocks)


def monad_condition(gamma: GammaMatrix) -> bool:
    """Whether the Gram blocks vanish in pairs: M_ii = 0, M_ij + M_ji = 0.

    Equivalent to the residual of the underlying slice point being zero;
    the equivalence is exercised independently by the test suite.
    """
    g = gram_blocks(gamma)
    for i in range(4):
        if not g.block(i, i).is_zero():
            return False
        for j in range(i + 1, 4):
            if not (g.block(i, j) + g.block(j, i)).is_zero():
                return False
    return True


def evaluate_alpha(gamma: GammaMatrix, v) -> Matrix:
    """The (2n+2) x n matrix sum(v_j C_{j+1}) at a nonzero direction v."""
    field = gamma.field
    if len(v) != 4:
        raise ShapeError(f"direction vector has length {len(v)}, expected 4")
    coeffs = [field.coerce(c) for c in v]
    if all(c == field.zero() for c in coeffs):
        raise DomainError("direction vector must be nonzero")
    out = gamma.col_block(0).scale(coeffs[0])
    for j in range(1, 4):
        out = out + gamma.col_block(j).scale(coeffs[j])
    return out


def point_rank_check(gamma: GammaMatrix, v) -> bool:
    """Whether evaluate_alpha(gamma, v) has full rank n (injectivity at v)."""
    return rank(evaluate_alpha(gamma, v)) == gamma.n


@dataclass(frozen=True)
class PencilReport:
    """Rank condition on the vector pencil t -> (a1 + t a2, b1 + t b2).

    finite_ok: the 2 x 2 minors of [a1 + t a2 | b1 + t b2] have no common
    root, so the pencil has rank 2 at every finite parameter t (over the
    algebraic closure).  infinity_ok: the leading pair (a2, b2) is itself
    of rank 2, the t = infinity case.  The two checks are reported
    separately; only their conjunction is invariant under the SL(2) mixing
    of the vector pairs, which moves the point at infinity.
    """

    finite_ok: bool
    infinity_ok: bool

    @property
    def ok(self) -> bool:
        return self.finite_ok and self.infinity_ok


def pencil_check(field: Field, a1, a2, b1, b2) -> PencilReport:
    """Evaluate the pencil rank condition for four length-n vectors.

    Each 2 x 2 minor of the pencil is a polynomial of degree <= 2 in t;
    rank < 2 at some finite t iff all minors share a root, i.e. iff their
    monic gcd has positive degree (or all minors vanish identically).  For
    n < 2 there are no minors and finite_ok is False by convention.
    """
    n = len(a1)
    for name, vec in (("a2", a2), ("b1", b1), ("b2", b2)):
        if len(vec) != n:
            raise ShapeError(f"{name} has length {len(vec)}, expected {n}")
    a1 = [field.coerce(x) for x in a1]
    a2 = [field.coerce(x) for x in a2]
    b1 = [field.coerce(x) for x in b1]
    b2 = [field.coerce(x) for x in b2]

    # columns of the pencil as vectors of degree-1 polynomials
    acol = [Poly(field, (a1[i], a2[i])) for i in range(n)]
    bcol = [Poly(field, (b1[i], b2[i])) for i in range(n)]
    minors = []
    for i in range(n):
        for j in range(i + 1, n):
            m = acol[i] * bcol[j] - acol[j] * bcol[i]
            if not m.is_zero():
                minors.append(m)
    if not minors:
        finite_ok = False
    else:
        g = minors[0]
        for m in minors[1:]:
            g = poly_gcd(g, m)
            if g.degree() == 0:
                break
        finite_ok = g.degree() == 0

    tail = Matrix(field, [[a2[i], b2[i]] for i in range(n)], 2)
    infinity_ok = rank(tail) == 2
    return PencilReport(finite_ok, infinity_ok)

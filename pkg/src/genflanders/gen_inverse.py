"""Drazin and group inverses."""
from __future__ import annotations

from dataclasses import dataclass

from .decomposition import ConsistencyError, _require_square, core_nilpotent
from .exact_matrix import DimensionError, Matrix, inverse, mat_pow, rref


class NoGroupInverse(ValueError):
    def __init__(self, index: int, what: str = "matrix"):
        super().__init__(f"{what} has index {index}; a group inverse needs index <= 1")
        self.index = index


@dataclass(frozen=True)
class DrazinResult:
    inverse: Matrix
    index: int


def verify_drazin(a: Matrix, x: Matrix, k: int) -> bool:
    """Check AX = XA, XAX = X and A^(k+1) X = A^k exactly."""
    if not (a.is_square and x.shape == a.shape):
        raise DimensionError("A and X must be square of equal size")
    ax = a @ x
    if ax != x @ a:
        return False
    if x @ ax != x:
        return False
    ak = mat_pow(a, k)
    return ak @ ax == ak


def verify_group_inverse(a: Matrix, x: Matrix) -> bool:
    return verify_drazin(a, x, 1) and a @ x @ a == a


def drazin(a: Matrix) -> DrazinResult:
    """Drazin inverse through the core-nilpotent split.

    ``A^D = P^-1 diag(core^-1, 0) P``; the three defining identities are
    re-checked before returning.
    """
    _require_square(a)
    cn = core_nilpotent(a)
    zero = Matrix.zeros(a.rows - cn.r)
    x = cn.P_inv @ Matrix.block_diag(inverse(cn.core), zero) @ cn.P
    if not verify_drazin(a, x, cn.index):
        raise ConsistencyError("computed Drazin inverse fails its axioms")
    return DrazinResult(x, cn.index)


def group_inverse(a: Matrix) -> Matrix:
    res = drazin(a)
    if res.index > 1:
        raise NoGroupInverse(res.index)
    return res.inverse


def full_rank_factorization(a: Matrix) -> tuple[Matrix, Matrix]:
    """A = F @ G with F the pivot columns of A and G the nonzero rows of its RREF."""
    reduced, pivots, _ = rref(a)
    f = Matrix.from_columns([a.column(j) for j in pivots], a.rows)
    g = reduced.submatrix(0, len(pivots), 0, a.cols)
    return f, g


def drazin_cline(a: Matrix) -> Matrix:
    """Drazin inverse by recursive full-rank factorization.

    Uses Cline's identity (FG)^D = F ((GF)^D)^2 G and recurses on the
    smaller square matrix GF.  Independent of the core-nilpotent route.
    """
    _require_square(a)
    n = a.rows
    if a.is_zero():
        return Matrix.zeros(n)
    f, g = full_rank_factorization(a)
    if f.cols == n:
        return inverse(a)
    inner = drazin_cline(g @ f)
    return f @ inner @ inner @ g

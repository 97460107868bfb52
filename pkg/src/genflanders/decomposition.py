"""Index, core-nilpotent splitting, unit-regular factors and nilpotent similarity."""
from __future__ import annotations

from dataclasses import dataclass

from .exact_matrix import (
    DimensionError,
    Matrix,
    colspace_basis,
    inverse,
    linearly_independent,
    mat_pow,
    nullspace_basis,
    rank,
    rank_normal_form,
)


class ConsistencyError(RuntimeError):
    """An identity that must hold by construction failed; indicates a bug."""


class NotNilpotentError(ValueError):
    pass


class WeyrMismatch(ValueError):
    """Two nilpotent matrices have different Weyr sequences."""

    def __init__(self, power: int, lhs: list[int], rhs: list[int]):
        super().__init__(
            f"Weyr sequences differ at power {power}: {lhs} vs {rhs}")
        self.power = power
        self.lhs = lhs
        self.rhs = rhs


def _require_square(a: Matrix, what: str = "matrix") -> None:
    if not a.is_square:
        raise DimensionError(f"{what} must be square, got {a.rows}x{a.cols}")


def index(a: Matrix) -> int:
    """Smallest k >= 0 with rank(A^(k+1)) == rank(A^k)."""
    _require_square(a)
    power = Matrix.identity(a.rows)
    prev = a.rows
    k = 0
    while True:
        power = power @ a
        r = rank(power)
        if r == prev:
            return k
        prev = r
        k += 1


def rank_powers(a: Matrix, count: int) -> list[int]:
    """[rank(A^1), ..., rank(A^count)]."""
    _require_square(a)
    out = []
    power = Matrix.identity(a.rows)
    for _ in range(count):
        power = power @ a
        out.append(rank(power))
    return out


@dataclass(frozen=True)
class CoreNilpotent:
    """``P @ A @ P_inv == block_diag(core, nil)`` with ``core`` invertible."""

    P: Matrix
    P_inv: Matrix
    core: Matrix
    nil: Matrix
    index: int
    r: int

    def reassemble(self) -> Matrix:
        return self.P_inv @ Matrix.block_diag(self.core, self.nil) @ self.P


def core_nilpotent(a: Matrix) -> CoreNilpotent:
    _require_square(a)
    n = a.rows
    k = index(a)
    ak = mat_pow(a, k)
    basis = colspace_basis(ak) + nullspace_basis(ak)
    r = rank(ak)
    p_inv = Matrix.from_columns(basis, n)
    p = inverse(p_inv)
    split = p @ a @ p_inv
    core = split.submatrix(0, r, 0, r)
    nil = split.submatrix(r, n, r, n)
    if not (split.submatrix(0, r, r, n).is_zero()
            and split.submatrix(r, n, 0, r).is_zero()):
        raise ConsistencyError("core-nilpotent split is not block diagonal")
    if rank(core) != r:
        raise ConsistencyError("core block is singular")
    if not mat_pow(nil, k).is_zero():
        raise ConsistencyError("nilpotent block does not vanish at the index")
    if k >= 1 and r < n and mat_pow(nil, k - 1).is_zero():
        raise ConsistencyError("nilpotent block vanishes below the index")
    return CoreNilpotent(P=p, P_inv=p_inv, core=core, nil=nil, index=k, r=r)


def unit_regular_factor(x: Matrix) -> Matrix:
    """Invertible V with ``x @ V @ x == x``.

    From ``x = P diag(I_r, 0) Q`` we take ``V = Q^-1 P^-1``.
    """
    _require_square(x)
    p, _, q = rank_normal_form(x)
    return inverse(q) @ inverse(p)


def weyr_sequence(nil: Matrix) -> list[int]:
    """Successive nullity jumps of the powers of a nilpotent matrix."""
    _require_square(nil)
    n = nil.rows
    if not mat_pow(nil, n).is_zero():
        raise NotNilpotentError("matrix is not nilpotent")
    out = []
    power = Matrix.identity(n)
    prev_nullity = 0
    while prev_nullity < n:
        power = power @ nil
        nullity = n - rank(power)
        out.append(nullity - prev_nullity)
        prev_nullity = nullity
    return out


def jordan_basis(nil: Matrix) -> tuple[Matrix, list[int]]:
    """Columns forming Jordan chains of a nilpotent matrix.

    Returns ``(M, sizes)`` where ``inverse(M) @ nil @ M`` is the upper
    Jordan form with blocks of the given sizes, largest first.
    """
    weyr = weyr_sequence(nil)
    n = nil.rows
    height = len(weyr)
    kernels = [[]]
    power = Matrix.identity(n)
    for _ in range(height):
        power = power @ nil
        kernels.append(nullspace_basis(power))

    chains: list[list[tuple]] = []  # each chain listed bottom (kernel vector) to top
    for level in range(height, 0, -1):
        # vectors already sitting at this level inside longer chains
        present = [ch[level - 1] for ch in chains]
        accumulated = list(kernels[level - 1]) + present
        wanted = weyr[level - 1] - (weyr[level] if level < height else 0)
        new_tops = []
        for cand in kernels[level]:
            if len(new_tops) == wanted:
                break
            if linearly_independent(accumulated + [cand]):
                accumulated.append(cand)
                new_tops.append(cand)
        if len(new_tops) != wanted:
            raise ConsistencyError("could not extend Jordan chains")
        for top in new_tops:
            chain = [top]
            for _ in range(level - 1):
                chain.append(_apply(nil, chain[-1]))
            chain.reverse()
            chains.append(chain)
    columns = [v for ch in chains for v in ch]
    sizes = [len(ch) for ch in chains]
    return Matrix.from_columns(columns, n), sizes


def _apply(m: Matrix, v: tuple) -> tuple:
    return (m @ Matrix(len(v), 1, v)).entries


def jordan_nilpotent(sizes: list[int]) -> Matrix:
    """Block-diagonal nilpotent with ones on the superdiagonal of each block."""
    blocks = []
    for s in sizes:
        blocks.append(Matrix(s, s, (int(j == i + 1) for i in range(s) for j in range(s))))
    return Matrix.block_diag(*blocks) if blocks else Matrix.zeros(0)


def nilpotent_similarity(n1: Matrix, n2: Matrix) -> Matrix:
    """Invertible S with ``n1 == inverse(S) @ n2 @ S``.

    Raises WeyrMismatch, naming the first power where the nullity jumps
    differ, when no such S exists.
    """
    _require_square(n1)
    _require_square(n2)
    if n1.rows != n2.rows:
        raise DimensionError("nilpotent blocks differ in size")
    w1, w2 = weyr_sequence(n1), weyr_sequence(n2)
    if w1 != w2:
        length = max(len(w1), len(w2))
        p1 = w1 + [0] * (length - len(w1))
        p2 = w2 + [0] * (length - len(w2))
        first = next(i for i in range(length) if p1[i] != p2[i])
        raise WeyrMismatch(first + 1, w1, w2)
    m1, sizes1 = jordan_basis(n1)
    m2, sizes2 = jordan_basis(n2)
    if sizes1 != sizes2:
        raise ConsistencyError("equal Weyr sequences gave different chain sizes")
    s = m2 @ inverse(m1)
    if inverse(s) @ n2 @ s != n1:
        raise ConsistencyError("nilpotent conjugation failed")
    return s

"""Similarity certificates for AC and BA when ABA = ACA.

Every construction here ends in a :class:`SimilarityCertificate` that can be
re-checked with nothing but matrix multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass

from .decomposition import (
    ConsistencyError,
    core_nilpotent,
    index,
    nilpotent_similarity,
    rank_powers,
    unit_regular_factor,
)
from .exact_matrix import DimensionError, Matrix, inverse, mat_pow
from .gen_inverse import NoGroupInverse, drazin, group_inverse, verify_group_inverse

RELATIONS = ("group", "group_inverse", "drazin", "drazin_core", "full", "power")


class ConstraintViolated(ValueError):
    """ABA != ACA."""

    def __init__(self, row: int, col: int, aba, aca):
        super().__init__(
            f"ABA != ACA at entry ({row}, {col}): {aba} vs {aca}")
        self.position = (row, col)
        self.aba = aba
        self.aca = aca


class IndexTooSmall(ValueError):
    def __init__(self, s: int, ac_index: int, ba_index: int):
        super().__init__(
            f"power {s} is below max(ind(AC)={ac_index}, ind(BA)={ba_index}) or < 1")
        self.s = s
        self.ac_index = ac_index
        self.ba_index = ba_index


@dataclass(frozen=True)
class FlandersTriple:
    A: Matrix
    B: Matrix
    C: Matrix

    def __post_init__(self):
        n = self.A.rows
        for m in (self.A, self.B, self.C):
            if m.shape != (n, n):
                raise DimensionError("A, B, C must be square of the same size")
        aba = self.A @ self.B @ self.A
        aca = self.A @ self.C @ self.A
        if aba != aca:
            k = next(i for i, (p, q) in enumerate(zip(aba.entries, aca.entries)) if p != q)
            raise ConstraintViolated(k // n, k % n, aba.entries[k], aca.entries[k])

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def AC(self) -> Matrix:
        return self.A @ self.C

    @property
    def BA(self) -> Matrix:
        return self.B @ self.A


def validate_triple(a: Matrix, b: Matrix, c: Matrix) -> FlandersTriple:
    return FlandersTriple(a, b, c)


@dataclass(frozen=True)
class SimilarityCertificate:
    """Claims ``lhs == u_inv @ rhs @ u`` with ``u @ u_inv == I``."""

    u: Matrix
    u_inv: Matrix
    lhs: Matrix
    rhs: Matrix
    relation: str

    def verify(self) -> bool:
        return verify_certificate(self.u, self.u_inv, self.lhs, self.rhs)


def verify_certificate(u: Matrix, u_inv: Matrix, lhs: Matrix, rhs: Matrix) -> bool:
    n = u.rows
    if not (u.shape == u_inv.shape == lhs.shape == rhs.shape == (n, n)):
        return False
    eye = Matrix.identity(n)
    if u @ u_inv != eye or u_inv @ u != eye:
        return False
    return u_inv @ rhs @ u == lhs


@dataclass(frozen=True)
class NotSimilar:
    """rank((AC)^k) != rank((BA)^k) at k = witness_power."""

    witness_power: int
    rank_lhs: int
    rank_rhs: int


@dataclass(frozen=True)
class Workings:
    """Intermediate elements of the unit construction."""

    x: Matrix
    y: Matrix
    v: Matrix

    def check(self) -> None:
        x, y, v = self.x, self.y, self.v
        eye = Matrix.identity(x.rows)
        if x @ v @ x != x:
            raise ConsistencyError("xvx != x")
        if x @ y @ x != x:
            raise ConsistencyError("xyx != x")
        if y @ x @ y != y:
            raise ConsistencyError("yxy != y")
        left = eye - x @ y - x @ v
        right = eye - y @ x - v @ x
        if left @ left != eye or right @ right != eye:
            raise ConsistencyError("reflection factors do not square to I")


def _unit_from(x: Matrix, y: Matrix) -> tuple[Matrix, Matrix, Workings]:
    """u = (1 - xy - xv) v^-1 (1 - yx - vx) and its inverse v - vxv + y."""
    v = unit_regular_factor(x)
    w = Workings(x, y, v)
    w.check()
    eye = Matrix.identity(x.rows)
    left = eye - x @ y - x @ v
    right = eye - y @ x - v @ x
    u = left @ inverse(v) @ right
    u_inv = v - v @ x @ v + y
    if right @ v @ left != u_inv:
        raise ConsistencyError("closed form of u^-1 disagrees with the product form")
    if u @ u_inv != eye:
        raise ConsistencyError("u_inv is not the inverse of u")
    return u, u_inv, w


def _certify(u, u_inv, lhs, rhs, relation) -> SimilarityCertificate:
    cert = SimilarityCertificate(u, u_inv, lhs, rhs, relation)
    if not cert.verify():
        raise ConsistencyError(f"{relation} certificate does not verify")
    return cert


def lemma1_transfer(t: FlandersTriple) -> tuple[Matrix, Matrix]:
    """Return ``((BA)^D, (AC)^D)`` with (BA)^D obtained as B ((AC)^D)^2 A."""
    a, b, c = t.A, t.B, t.C
    ac = t.AC
    ac_d = drazin(ac).inverse
    ba_d = b @ ac_d @ ac_d @ a
    if ba_d != drazin(t.BA).inverse:
        raise ConsistencyError("B((AC)^D)^2 A differs from (BA)^D")
    if a @ ba_d != ac_d @ a:
        raise ConsistencyError("A(BA)^D != (AC)^D A")
    if a @ b @ ac_d != ac @ ac_d:
        raise ConsistencyError("AB(AC)^D != AC(AC)^D")
    if a @ ba_d @ ba_d @ c != ac_d:
        raise ConsistencyError("A((BA)^D)^2 C != (AC)^D")
    return ba_d, ac_d


def group_similarity_certificate(
        t: FlandersTriple) -> tuple[SimilarityCertificate, SimilarityCertificate, Workings]:
    """Certificates for AC ~ BA and (AC)^# ~ (BA)^#, sharing one unit u."""
    a = t.A
    ac, ba = t.AC, t.BA
    try:
        ac_g = group_inverse(ac)
    except NoGroupInverse as e:
        raise NoGroupInverse(e.index, "AC") from None
    try:
        ba_g = group_inverse(ba)
    except NoGroupInverse as e:
        raise NoGroupInverse(e.index, "BA") from None

    x = t.B @ ac_g
    y = ac @ ac_g @ a
    if x @ ac @ y != ba or y @ ba @ x != ac:
        raise ConsistencyError("x(AC)y = BA or y(BA)x = AC failed")
    if x @ ac_g @ y != ba_g or y @ ba_g @ x != ac_g:
        raise ConsistencyError("x(AC)^# y = (BA)^# or y(BA)^# x = (AC)^# failed")
    u, u_inv, w = _unit_from(x, y)

    aca = ac @ a
    if ac @ u_inv != aca or u_inv @ ba != aca:
        raise ConsistencyError("AC u^-1 = u^-1 BA = ACA failed")
    if ac_g @ u_inv != ac_g @ a or u_inv @ ba_g != ac_g @ a:
        raise ConsistencyError("(AC)^# u^-1 = u^-1 (BA)^# = (AC)^# A failed")

    cert = _certify(u, u_inv, ac, ba, "group")
    cert_sharp = _certify(u, u_inv, ac_g, ba_g, "group_inverse")
    return cert, cert_sharp, w


def drazin_similarity_certificate(
        t: FlandersTriple) -> tuple[SimilarityCertificate, SimilarityCertificate, Workings]:
    """Certificates for (AC)^D ~ (BA)^D and (AC)^2 (AC)^D ~ (BA)^2 (BA)^D."""
    a = t.A
    ac, ba = t.AC, t.BA
    ba_d, ac_d = lemma1_transfer(t)
    x = t.B @ ac_d
    y = ac @ ac_d @ a
    if x @ ac_d @ y != ba_d or y @ ba_d @ x != ac_d:
        raise ConsistencyError("x(AC)^D y = (BA)^D or y(BA)^D x = (AC)^D failed")
    u, u_inv, w = _unit_from(x, y)
    if ac_d @ u_inv != ac_d @ a or u_inv @ ba_d != ac_d @ a:
        raise ConsistencyError("(AC)^D u^-1 = u^-1 (BA)^D = (AC)^D A failed")

    cert = _certify(u, u_inv, ac_d, ba_d, "drazin")
    # (X^D)^D = X^2 X^D, and Drazin inversion commutes with conjugation,
    # so the same u relates the core parts.
    core_cert = _certify(u, u_inv, ac @ ac @ ac_d, ba @ ba @ ba_d, "drazin_core")
    return cert, core_cert, w


def rank_sequence(t: FlandersTriple) -> tuple[list[int], list[int]]:
    """Ranks of (AC)^k and (BA)^k for k = 1..n."""
    return rank_powers(t.AC, t.n), rank_powers(t.BA, t.n)


def full_similarity(t: FlandersTriple) -> SimilarityCertificate | NotSimilar:
    """Decide AC ~ BA by rank sequences and, when similar, build S.

    S is glued from the core block of the Drazin certificate's unit
    (expressed in the core-nilpotent bases of AC and BA) and a Jordan-chain
    conjugator between the nilpotent blocks.
    """
    ac_ranks, ba_ranks = rank_sequence(t)
    for k, (p, q) in enumerate(zip(ac_ranks, ba_ranks), start=1):
        if p != q:
            return NotSimilar(k, p, q)

    n = t.n
    ac, ba = t.AC, t.BA
    split_ac = core_nilpotent(ac)
    split_ba = core_nilpotent(ba)
    r = split_ac.r
    if split_ba.r != r:
        raise ConsistencyError("equal rank sequences but different core sizes")

    cert, _, _ = drazin_similarity_certificate(t)
    tmat = split_ba.P @ cert.u @ split_ac.P_inv
    if not (tmat.submatrix(0, r, r, n).is_zero() and tmat.submatrix(r, n, 0, r).is_zero()):
        raise ConsistencyError("transported unit is not block diagonal")
    t11 = tmat.submatrix(0, r, 0, r)
    if t11 @ split_ac.core != split_ba.core @ t11:
        raise ConsistencyError("core blocks are not intertwined by T11")
    s22 = nilpotent_similarity(split_ac.nil, split_ba.nil)
    s = split_ba.P_inv @ Matrix.block_diag(t11, s22) @ split_ac.P
    return _certify(s, inverse(s), ac, ba, "full")


def power_similarity(t: FlandersTriple, s: int) -> SimilarityCertificate:
    """Certificate for (AC)^s ~ (BA)^s when s >= max(ind(AC), ind(BA)), s >= 1.

    Reduces to the group case on the triple (A, (BA)^(s-1) B, C (AC)^(s-1)).
    """
    ac, ba = t.AC, t.BA
    i_ac, i_ba = index(ac), index(ba)
    if s < 1 or s < max(i_ac, i_ba):
        raise IndexTooSmall(s, i_ac, i_ba)
    b2 = mat_pow(ba, s - 1) @ t.B
    c2 = t.C @ mat_pow(ac, s - 1)
    try:
        reduced = FlandersTriple(t.A, b2, c2)
    except ConstraintViolated as e:
        raise ConsistencyError("A B' A != A C' A") from e
    for m in (reduced.AC, reduced.BA):
        if not verify_group_inverse(m, group_inverse(m)):
            raise ConsistencyError("power is not group invertible")
    cert, _, _ = group_similarity_certificate(reduced)
    if cert.lhs != mat_pow(ac, s) or cert.rhs != mat_pow(ba, s):
        raise ConsistencyError("reduced triple does not reproduce the powers")
    return SimilarityCertificate(cert.u, cert.u_inv, cert.lhs, cert.rhs, "power")


def ab_ba_power(a: Matrix, b: Matrix, s: int) -> SimilarityCertificate:
    """(AB)^s ~ (BA)^s, the triple (A, B, B)."""
    return power_similarity(FlandersTriple(a, b, b), s)

"""Deterministic random instances: Flanders triples and similar nilpotent pairs.

Randomness comes from SplitMix64 so that another implementation can
reproduce every instance bit for bit:

    state += 0x9E3779B97F4A7C15                      (mod 2^64)
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9         (mod 2^64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB         (mod 2^64)
    return z ^ (z >> 31)

Integers in [lo, hi] are drawn by rejection: with span = hi - lo + 1 and
limit = 2^64 - (2^64 mod span), draw until the value is below limit, then
return lo + value mod span.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .decomposition import index, jordan_nilpotent
from .exact_matrix import Matrix, inverse, mat_pow, nullspace_basis, rank
from .flanders import FlandersTriple

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range [lo, hi]."""
        span = hi - lo + 1
        if span <= 0:
            raise ValueError("empty range")
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            z = self.next_u64()
            if z < limit:
                return lo + z % span


class InvalidConfig(ValueError):
    pass


class RejectionExhausted(RuntimeError):
    def __init__(self, draws: int):
        super().__init__(f"no group-invertible triple in {draws} draws")
        self.draws = draws


@dataclass(frozen=True)
class GenConfig:
    n: int
    seed: int = 0
    entry_bound: int = 2
    rank_deficit: int = 0
    max_rejects: int = 100

    def __post_init__(self):
        if self.n < 1:
            raise InvalidConfig("n must be at least 1")
        if self.entry_bound < 1:
            raise InvalidConfig("entry_bound must be at least 1")
        if not 0 <= self.rank_deficit < self.n:
            raise InvalidConfig("rank_deficit must lie in [0, n)")
        if self.max_rejects < 0:
            raise InvalidConfig("max_rejects must be non-negative")
        if not 0 <= self.seed <= MASK64:
            raise InvalidConfig("seed must be a 64-bit unsigned value")


def random_scalar(rng: SplitMix64, bound: int) -> Fraction:
    num = rng.randint(-bound, bound)
    den = rng.randint(1, bound)
    return Fraction(num, den)


def random_matrix(rng: SplitMix64, rows: int, cols: int, bound: int) -> Matrix:
    return Matrix(rows, cols, (random_scalar(rng, bound) for _ in range(rows * cols)))


def random_invertible(rng: SplitMix64, n: int, bound: int) -> Matrix:
    while True:
        m = random_matrix(rng, n, n, bound)
        if rank(m) == n:
            return m


def random_of_rank(rng: SplitMix64, n: int, r: int, bound: int) -> Matrix:
    """n x n matrix of rank exactly r, as a random matrix times a rank-limited one."""
    while True:
        left = random_matrix(rng, n, n, bound)
        limited = random_matrix(rng, n, r, bound) @ random_matrix(rng, r, n, bound)
        m = left @ limited
        if rank(m) == r:
            return m


def annihilator_system(a: Matrix) -> Matrix:
    """Coefficient matrix of W -> A W A acting on row-major vec(W)."""
    n = a.rows
    rows = []
    for i in range(n):
        for j in range(n):
            rows.append([a[i, k] * a[l, j] for k in range(n) for l in range(n)])
    return Matrix.from_rows(rows, n * n)


def sandwich_kernel(a: Matrix) -> list[tuple]:
    """Basis of {W : A W A = 0}, vectors in row-major vec(W) order.

    The dimension is n^2 - rank(A)^2; checked here as a guard on the
    system assembly.
    """
    n = a.rows
    basis = nullspace_basis(annihilator_system(a))
    expected = n * n - rank(a) ** 2
    if len(basis) != expected:
        raise AssertionError(f"kernel dimension {len(basis)} != {expected}")
    return basis


def _draw_triple(rng: SplitMix64, cfg: GenConfig) -> FlandersTriple:
    n, bound = cfg.n, cfg.entry_bound
    a = random_of_rank(rng, n, n - cfg.rank_deficit, bound)
    b = random_matrix(rng, n, n, bound)
    w = Matrix.zeros(n)
    for vec in sandwich_kernel(a):
        coeff = rng.randint(-bound, bound)
        if coeff:
            w = w + Matrix(n, n, vec).scale(coeff)
    return FlandersTriple(a, b, b + w)


def random_triple(cfg: GenConfig) -> FlandersTriple:
    return _draw_triple(SplitMix64(cfg.seed), cfg)


def random_group_invertible_triple(cfg: GenConfig) -> FlandersTriple:
    """Rejection-sample until ind(AC) <= 1 and ind(BA) <= 1.

    One initial draw plus at most ``max_rejects`` retries, all from one
    stream seeded by ``cfg.seed``.
    """
    rng = SplitMix64(cfg.seed)
    for _ in range(cfg.max_rejects + 1):
        t = _draw_triple(rng, cfg)
        if index(t.AC) <= 1 and index(t.BA) <= 1:
            return t
    raise RejectionExhausted(cfg.max_rejects + 1)


def random_partition(rng: SplitMix64, n: int) -> list[int]:
    parts = []
    left = n
    while left:
        p = rng.randint(1, left)
        parts.append(p)
        left -= p
    return sorted(parts, reverse=True)


def random_nilpotent_pair(n: int, seed: int, bound: int = 2) -> tuple[Matrix, Matrix]:
    """Two conjugates of one random nilpotent Jordan matrix."""
    if n < 1:
        raise InvalidConfig("n must be at least 1")
    rng = SplitMix64(seed)
    j = jordan_nilpotent(random_partition(rng, n))
    s1 = random_invertible(rng, n, bound)
    s2 = random_invertible(rng, n, bound)
    return inverse(s1) @ j @ s1, inverse(s2) @ j @ s2


def random_matrix_with_index(n: int, seed: int, bound: int = 2) -> Matrix:
    """Conjugate of diag(invertible core, nilpotent part) with a random split.

    Gives matrices whose index ranges over 0..n, unlike dense random draws
    which almost always have index <= 1.
    """
    rng = SplitMix64(seed)
    nil_size = rng.randint(0, n)
    core = random_invertible(rng, n - nil_size, bound)
    nil = jordan_nilpotent(random_partition(rng, nil_size))
    s = random_invertible(rng, n, bound)
    return inverse(s) @ Matrix.block_diag(core, nil) @ s


def random_structured_triple(cfg: GenConfig) -> FlandersTriple:
    """A triple whose A carries a nilpotent part, so AC and BA reach index >= 2.

    A is built by :func:`random_matrix_with_index`; B is a random polynomial
    in a perturbation of A, and C = B + W with A W A = 0 as usual.
    """
    rng = SplitMix64(cfg.seed)
    n, bound = cfg.n, cfg.entry_bound
    a = random_matrix_with_index(n, rng.next_u64(), bound)
    choice = rng.randint(0, 2)
    if choice == 0:
        b = random_matrix(rng, n, n, bound)
    elif choice == 1:
        b = Matrix.identity(n).scale(rng.randint(1, bound)) + a.scale(rng.randint(-bound, bound))
    else:
        b = mat_pow(a, rng.randint(0, 2)) @ random_invertible(rng, n, bound)
    w = Matrix.zeros(n)
    for vec in sandwich_kernel(a):
        coeff = rng.randint(-1, 1)
        if coeff:
            w = w + Matrix(n, n, vec).scale(coeff)
    return FlandersTriple(a, b, b + w)

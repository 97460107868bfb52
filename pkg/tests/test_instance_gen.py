import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genflanders.decomposition import index, weyr_sequence
from genflanders.exact_matrix import Matrix, rank
from genflanders.instance_gen import (
    GenConfig,
    InvalidConfig,
    RejectionExhausted,
    SplitMix64,
    annihilator_system,
    random_group_invertible_triple,
    random_nilpotent_pair,
    random_structured_triple,
    random_triple,
    sandwich_kernel,
)

from conftest import M, square_matrices, sparse_ints


def test_splitmix64_reference_vector():
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(5)] == [
        6457827717110365317, 3203168211198807973, 9817491932198370423,
        4593380528125082431, 16408922859458223821]


def test_randint_range():
    rng = SplitMix64(0)
    draws = [rng.randint(-2, 2) for _ in range(500)]
    assert set(draws) == {-2, -1, 0, 1, 2}
    with pytest.raises(ValueError):
        rng.randint(1, 0)


@pytest.mark.parametrize("kwargs", [
    dict(n=0), dict(n=2, entry_bound=0), dict(n=2, rank_deficit=2), dict(n=2, max_rejects=-1),
    dict(n=2, seed=-1), dict(n=2, seed=2**64)])
def test_invalid_config(kwargs):
    with pytest.raises(InvalidConfig):
        GenConfig(**kwargs)


def test_invertible_a_forces_c_equal_b():
    for seed in range(5):
        t = random_triple(GenConfig(n=3, seed=seed, rank_deficit=0))
        assert rank(t.A) == 3
        assert t.B == t.C


def test_determinism():
    cfg = GenConfig(n=3, seed=7, rank_deficit=1)
    assert random_triple(cfg) == random_triple(cfg)
    assert random_structured_triple(cfg) == random_structured_triple(cfg)
    assert random_nilpotent_pair(4, 9) == random_nilpotent_pair(4, 9)
    assert random_triple(cfg) != random_triple(GenConfig(n=3, seed=8, rank_deficit=1))


def test_triples_satisfy_constraint():
    for seed in range(40):
        n = 2 + seed % 4
        t = random_triple(GenConfig(n=n, seed=seed, rank_deficit=seed % n))
        assert t.A @ t.B @ t.A == t.A @ t.C @ t.A
        assert rank(t.A) == n - seed % n


@settings(max_examples=60, deadline=None)
@given(square_matrices(max_size=4, elements=sparse_ints))
def test_sandwich_kernel_dimension(a):
    n = a.rows
    basis = sandwich_kernel(a)
    assert len(basis) == n * n - rank(a) ** 2
    for vec in basis:
        w = Matrix(n, n, vec)
        assert (a @ w @ a).is_zero()


def test_annihilator_system_matches_product():
    a = M([[1, 2], [0, 3]])
    w = M([[5, -1], [2, 7]])
    flat = Matrix(4, 1, w.entries)
    assert (annihilator_system(a) @ flat).entries == (a @ w @ a).entries


def test_group_invertible_triples():
    for seed in range(20):
        t = random_group_invertible_triple(GenConfig(n=3, seed=seed, rank_deficit=1))
        assert index(t.AC) <= 1 and index(t.BA) <= 1
    t = random_group_invertible_triple(GenConfig(n=3, seed=1, rank_deficit=0, max_rejects=0))
    assert index(t.AC) == 0


def test_rejection_exhausted():
    # a seed whose first draw has a product of index >= 2
    seed = next(s for s in range(5000)
                if max(index(random_triple(GenConfig(n=2, seed=s, rank_deficit=1)).AC),
                       index(random_triple(GenConfig(n=2, seed=s, rank_deficit=1)).BA)) >= 2)
    with pytest.raises(RejectionExhausted):
        random_group_invertible_triple(
            GenConfig(n=2, seed=seed, rank_deficit=1, entry_bound=2, max_rejects=0))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**63))
def test_nilpotent_pairs_share_weyr(n, seed):
    n1, n2 = random_nilpotent_pair(n, seed)
    assert weyr_sequence(n1) == weyr_sequence(n2)


def test_nilpotent_pair_size_one():
    assert random_nilpotent_pair(1, 3) == (Matrix.zeros(1), Matrix.zeros(1))

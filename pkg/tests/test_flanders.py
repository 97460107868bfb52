from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genflanders.decomposition import index
from genflanders.exact_matrix import DimensionError, Matrix, inverse, mat_pow, rank
from genflanders.flanders import (
    ConstraintViolated,
    FlandersTriple,
    IndexTooSmall,
    NotSimilar,
    ab_ba_power,
    drazin_similarity_certificate,
    full_similarity,
    group_similarity_certificate,
    lemma1_transfer,
    power_similarity,
    rank_sequence,
    validate_triple,
)
from genflanders.gen_inverse import NoGroupInverse, drazin
from genflanders.instance_gen import (
    GenConfig,
    random_group_invertible_triple,
    random_structured_triple,
    random_triple,
)
from genflanders.serialize import certificate_from_doc, certificate_to_doc

from conftest import M

half = Fraction(1, 2)
EX_A, EX_B, EX_C = M([[0, 1], [0, 1]]), M([[1, 1], [1, 1]]), M([[0, 0], [1, 1]])
PW_A, PW_C = M([[0, 1], [0, 1]]), M([[0, 1], [1, 0]])
MISMATCH = (M([[0, 1], [0, 0]]), M([[1, 0], [0, 0]]), M([[1, 0], [0, 0]]))


def triples(seed: int) -> FlandersTriple:
    n = 2 + seed % 4
    if seed % 2:
        return random_structured_triple(GenConfig(n=n, seed=seed))
    return random_triple(GenConfig(n=n, seed=seed, rank_deficit=seed % n))


seeds = st.integers(0, 2**40)


def test_validate_triple():
    t = validate_triple(EX_A, EX_B, EX_C)
    assert t.B != t.C
    a = M([[3, 1], [0, 2]])
    validate_triple(a, a, a)
    with pytest.raises(ConstraintViolated) as exc:
        validate_triple(Matrix.identity(2), Matrix.zeros(2), Matrix.identity(2))
    assert exc.value.position == (0, 0)
    with pytest.raises(DimensionError):
        validate_triple(Matrix.identity(2), Matrix.identity(3), Matrix.identity(2))


def test_lemma1_examples():
    ba_d, ac_d = lemma1_transfer(FlandersTriple(EX_A, EX_B, EX_C))
    assert ba_d == M([[0, half], [0, half]])
    assert ac_d == M([[1, 1], [1, 1]]).scale(Fraction(1, 4))
    i2 = Matrix.identity(2)
    assert lemma1_transfer(FlandersTriple(i2, i2, i2))[0] == i2


def test_group_certificate_paper_example():
    t = FlandersTriple(EX_A, EX_B, EX_C)
    cert, cert_sharp, w = group_similarity_certificate(t)
    assert cert.verify() and cert_sharp.verify()
    assert cert.lhs == t.AC and cert.rhs == t.BA
    assert cert_sharp.u == cert.u
    assert cert_sharp.lhs == M([[1, 1], [1, 1]]).scale(Fraction(1, 4))
    assert cert_sharp.rhs == M([[0, half], [0, half]])
    # the paper's conjugator also works; ours need not equal it in general
    s = M([[1, 0], [half, half]])
    assert t.AC == inverse(s) @ t.BA @ s


def test_group_certificate_identity_and_failure():
    i2 = Matrix.identity(2)
    cert, _, _ = group_similarity_certificate(FlandersTriple(i2, i2, i2))
    assert cert.verify()
    with pytest.raises(NoGroupInverse) as exc:
        group_similarity_certificate(FlandersTriple(*MISMATCH))
    assert exc.value.index == 2


def test_drazin_certificate_examples():
    cert, core, _ = drazin_similarity_certificate(FlandersTriple(EX_A, EX_B, EX_C))
    assert cert.verify() and core.verify()
    n = M([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    cert, core, _ = drazin_similarity_certificate(FlandersTriple(n, n, n))
    assert cert.lhs.is_zero() and cert.rhs.is_zero() and cert.verify()


def test_rank_sequence_examples():
    assert rank_sequence(FlandersTriple(EX_A, EX_B, EX_C)) == ([1, 1], [1, 1])
    z = Matrix.zeros(3)
    assert rank_sequence(FlandersTriple(z, z, z)) == ([0, 0, 0], [0, 0, 0])
    assert rank_sequence(FlandersTriple(*MISMATCH)) == ([0, 0], [1, 0])


def test_full_similarity_examples():
    t = FlandersTriple(EX_A, EX_B, EX_C)
    cert = full_similarity(t)
    assert cert.relation == "full" and cert.verify()
    assert t.AC == cert.u_inv @ t.BA @ cert.u
    assert full_similarity(FlandersTriple(*MISMATCH)) == NotSimilar(1, 0, 1)
    i3 = Matrix.identity(3)
    assert full_similarity(FlandersTriple(i3, i3, i3)).verify()


def test_power_similarity_paper_example():
    t = FlandersTriple(PW_A, PW_A, PW_C)
    assert index(t.AC) == index(t.BA) == 1
    u = M([[0, 1], [1, 0]])
    for s in range(1, 6):
        cert = power_similarity(t, s)
        assert cert.verify() and cert.relation == "power"
        assert cert.lhs == mat_pow(t.AC, s) and cert.rhs == mat_pow(t.BA, s)
        assert mat_pow(t.AC, s) == inverse(u) @ mat_pow(t.BA, s) @ u
    assert ab_ba_power(PW_A, PW_A, 2).verify()


def test_power_similarity_too_small():
    t = FlandersTriple(PW_A, PW_A, PW_C)
    with pytest.raises(IndexTooSmall):
        power_similarity(t, 0)
    with pytest.raises(IndexTooSmall) as exc:
        power_similarity(FlandersTriple(*MISMATCH), 1)
    assert exc.value.ba_index == 2
    assert power_similarity(FlandersTriple(*MISMATCH), 2).verify()


def test_power_similarity_invertible_products():
    for seed in range(5):
        t = random_triple(GenConfig(n=3, seed=seed))
        if rank(t.AC) == 3 and rank(t.BA) == 3:
            cert = power_similarity(t, 1)
            g, _, _ = group_similarity_certificate(t)
            assert cert.u == g.u


def _check_workings(w):
    x, y, v = w.x, w.y, w.v
    eye = Matrix.identity(x.rows)
    assert x @ y @ x == x and y @ x @ y == y and x @ v @ x == x
    assert (eye - x @ y - x @ v) @ (eye - x @ y - x @ v) == eye
    assert (eye - y @ x - v @ x) @ (eye - y @ x - v @ x) == eye


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_lemma1_identities(seed):
    t = triples(seed)
    ac_d, ba_d = drazin(t.AC).inverse, drazin(t.BA).inverse
    assert t.B @ ac_d @ ac_d @ t.A == ba_d
    assert t.A @ ba_d @ ba_d @ t.C == ac_d
    assert t.A @ ba_d == ac_d @ t.A
    assert t.A @ t.B @ ac_d == t.A @ t.C @ ac_d


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_drazin_certificates(seed):
    t = triples(seed)
    cert, core, w = drazin_similarity_certificate(t)
    _check_workings(w)
    # u^-1 from the closed form matches elimination
    assert inverse(cert.u) == cert.u_inv
    for c in (cert, core):
        assert certificate_from_doc(certificate_to_doc(c)).verify()
    # Drazin inversion of both sides stays related by the same u
    assert drazin(cert.lhs).inverse == cert.u_inv @ drazin(cert.rhs).inverse @ cert.u


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_group_certificates(seed):
    n = 2 + seed % 4
    t = random_group_invertible_triple(GenConfig(n=n, seed=seed, rank_deficit=seed % n))
    cert, sharp, w = group_similarity_certificate(t)
    _check_workings(w)
    assert w.x @ t.AC @ w.y == t.BA and w.y @ t.BA @ w.x == t.AC
    assert inverse(cert.u) == cert.u_inv
    assert cert.verify() and sharp.verify() and sharp.u == cert.u


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_full_similarity_iff(seed):
    t = triples(seed)
    ac, ba = rank_sequence(t)
    res = full_similarity(t)
    if ac == ba:
        assert not isinstance(res, NotSimilar)
        assert res.verify()
    else:
        assert isinstance(res, NotSimilar)
        k = res.witness_power
        assert rank(mat_pow(t.AC, k)) == res.rank_lhs != res.rank_rhs == rank(mat_pow(t.BA, k))
        assert ac[:k - 1] == ba[:k - 1]


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_power_similarity_random(seed):
    t = triples(seed)
    s0 = max(index(t.AC), index(t.BA), 1)
    for s in (s0, s0 + 1):
        cert = power_similarity(t, s)
        assert cert.verify()
    a, b = t.A, t.B
    assert ab_ba_power(a, b, a.rows).verify()


def test_generated_suite_exercises_mismatches_and_high_index():
    mismatches = high = 0
    for seed in range(1, 120, 2):
        t = triples(seed)
        high += max(index(t.AC), index(t.BA)) >= 2
        mismatches += isinstance(full_similarity(t), NotSimilar)
    assert mismatches >= 1 and high >= 5

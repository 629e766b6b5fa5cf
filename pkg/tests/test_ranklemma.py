import pytest

from hok.errors import InvalidParams
from hok.linalg import Matrix, mat_rank
from hok.ranklemma import (
    RankLemmaParams,
    binomial_identity_1,
    binomial_identity_2,
    ef_sets,
    ef_sizes,
    sign_matrix,
    sweep,
    valid_params,
    verify_rank,
)


def test_param_validation():
    RankLemmaParams(2, 1, 0, 0)
    with pytest.raises(InvalidParams):
        RankLemmaParams(2, 2, 0, 0)  # z - d must be z' + d +- 1
    with pytest.raises(InvalidParams):
        RankLemmaParams(2, 1, 3, 0)  # d > z
    with pytest.raises(InvalidParams):
        RankLemmaParams(2, 1, 0, -2)  # d' < -z'


def test_z_plus_zprime_forced_odd():
    assert all((p.z + p.z_prime) % 2 == 1 for p in valid_params(9))


def test_base_cases():
    p = RankLemmaParams(1, 0, 0, 0)
    e, f = ef_sets(p)
    assert e == [0] and f == [0]
    assert sign_matrix(p).entries == [1]
    p = RankLemmaParams(1, 0, 1, 1)
    e, f = ef_sets(p)
    assert e == [1] and f == [1]
    assert sign_matrix(p).entries == [-1]


def test_2100_sets_and_rank():
    p = RankLemmaParams(2, 1, 0, 0)
    e, f = ef_sets(p)
    assert len(e) == len(f) == 3
    m = sign_matrix(p)
    assert m.rows == m.cols == 3
    assert mat_rank(m) == 3
    assert verify_rank(p)


def test_rectangular_instance():
    p = RankLemmaParams(2, 1, 1, 0)
    m = sign_matrix(p)
    _, nf = ef_sizes(p)
    assert m.rows == nf
    assert mat_rank(m) == nf
    assert verify_rank(p)


def test_transpose_swaps_roles():
    p = RankLemmaParams(3, 2, 1, 0)
    q = RankLemmaParams(3, 2, 0, 1)
    assert sign_matrix(p).transpose() == sign_matrix(q)


def test_sweep_small_exhaustive():
    results = sweep(5)
    assert results, "sweep must cover instances"
    assert all(ok for _, ok in results)


def test_modular_certificate_agrees_with_exact():
    for p in valid_params(5):
        m = sign_matrix(p)
        _, nf = ef_sizes(p)
        assert (mat_rank(m) == nf) == verify_rank(p)


def test_binomial_identity_1_degenerate_and_range():
    # d = 0 collapses to C(z', l - d') on both sides
    assert binomial_identity_1(4, 0, 2, 3)
    for zp in range(0, 8):
        for d in range(0, 8):
            for dp in range(-6, 7):
                for l in range(-6, 7):
                    assert binomial_identity_1(zp, d, dp, l)


def test_binomial_identity_2_examples_and_range():
    assert binomial_identity_2(0, 0)
    for z in range(0, 13):
        for k in range(-z - 1, z + 1):
            assert binomial_identity_2(z, k)

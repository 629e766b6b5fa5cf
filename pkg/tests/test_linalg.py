import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hok.errors import NonSquare
from hok.linalg import (
    CycloNumber,
    Matrix,
    cyclotomic_polynomial,
    in_span,
    mat_det,
    mat_rank,
    matrix_from_json,
    matrix_to_csv,
    matrix_to_json,
)


def naive_rank(rows):
    """Independent oracle: textbook Gauss elimination over Fraction."""
    rows = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    col = 0
    width = len(rows[0]) if rows else 0
    while rank < len(rows) and col < width:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        pr[:] = [x / pr[col] for x in pr]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        rank += 1
        col += 1
    return rank


def test_rank_identity():
    assert mat_rank(Matrix.identity(3)) == 3


def test_rank_constant_half_matrix_is_one():
    m = Matrix.from_rows([[Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 2)]])
    assert mat_rank(m) == 1


def test_rank_subset_sign_matrix_2100():
    # Exhaustive subset construction for (z, z', d, d') = (2, 1, 0, 0):
    # Z* = {0, 1}, Z_* = {2}; E = F = subsets with equal intersections.
    universe = [frozenset(), frozenset({0, 2}), frozenset({1, 2})]
    rows = [
        [Fraction((-1) ** len(n & m)) for m in universe] for n in universe
    ]
    assert naive_rank(rows) == 3
    assert mat_rank(Matrix.from_rows(rows)) == 3


def test_det_trivial_and_errors():
    assert mat_det(Matrix.identity(2)) == 1
    with pytest.raises(NonSquare):
        mat_det(Matrix(2, 3, [1] * 6))


def test_det_zero_on_singular():
    m = Matrix.from_rows([[1, 2], [2, 4]])
    assert mat_det(m) == 0


def test_in_span_basic():
    assert in_span([[1, 0], [0, 1]], [2, 3]) == [2, 3]
    assert in_span([[1, 1]], [1, 2]) is None


def test_in_span_reconstructs():
    vectors = [[1, 2, 3], [0, 1, 1], [1, 0, 0]]
    target = [3, 5, 7]
    coeffs = in_span(vectors, target)
    assert coeffs is not None
    recon = [sum(c * v[j] for c, v in zip(coeffs, vectors)) for j in range(3)]
    assert recon == target


@given(
    st.lists(
        st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=3, max_size=5
    )
)
@settings(max_examples=60, deadline=None)
def test_rank_matches_naive_oracle(rows):
    assert mat_rank(Matrix.from_rows(rows)) == naive_rank(rows)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_det_multiplicative_4x4(seed):
    rng = random.Random(seed)
    a = Matrix.from_rows(
        [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4)] for _ in range(4)]
    )
    b = Matrix.from_rows(
        [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4)] for _ in range(4)]
    )
    assert mat_det(a @ b) == mat_det(a) * mat_det(b)


@pytest.mark.parametrize("n", [3, 4, 6, 12])
def test_roots_of_unity(n):
    z = CycloNumber.zeta(n)
    power = CycloNumber.from_rational(1)
    total = CycloNumber.from_rational(0)
    for _ in range(n):
        total = total + power
        power = power * z
    assert power == 1  # zeta^n == 1
    assert total == 0  # sum of all n-th roots of unity


def test_cyclotomic_polynomials():
    as_ints = lambda t: [int(c) for c in t]
    assert as_ints(cyclotomic_polynomial(1)) == [-1, 1]
    assert as_ints(cyclotomic_polynomial(4)) == [1, 0, 1]
    assert as_ints(cyclotomic_polynomial(12)) == [1, 0, -1, 0, 1]


def test_cyclo_cross_conductor_equality_and_roundtrip():
    # zeta_6^3 = -1 should equal the rational -1 and the conductor-2 value.
    z6 = CycloNumber.zeta(6)
    cube = z6 * z6 * z6
    assert cube == -1
    assert cube.is_rational() and cube.to_fraction() == -1
    assert CycloNumber.zeta(3, 1) == CycloNumber.zeta(6, 2)


def test_cyclo_inverse_and_conj():
    z = CycloNumber.zeta(12, 5)
    assert z * z.inverse() == 1
    # conj is inversion on roots of unity
    assert z.conj() == z.inverse()
    # |1 + zeta_4|^2 = 2
    w = 1 + CycloNumber.zeta(4)
    assert w * w.conj() == 2


def test_cyclo_matrix_rank_and_det():
    z = CycloNumber.zeta(3)
    m = Matrix.from_rows([[1, z], [z.conj(), 1]])
    # det = 1 - z*conj(z) = 0
    assert mat_det(m) == 0
    assert mat_rank(m) == 1


def test_json_and_csv_roundtrip():
    m = Matrix.from_rows([[Fraction(1, 2), 3], [Fraction(-5, 7), 0]])
    again = matrix_from_json(matrix_to_json(m))
    assert again == m
    assert matrix_to_csv(m).splitlines()[0] == "1/2,3"
    z = Matrix.from_rows([[CycloNumber.zeta(4)]])
    assert matrix_from_json(matrix_to_json(z)) == z

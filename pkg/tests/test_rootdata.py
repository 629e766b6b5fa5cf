import pytest

from hok.errors import InvalidIsogeny, InvalidRank
from hok.rootdata import (
    RootSystemType,
    bad_primes,
    build_root_datum,
    cartan_matrix,
    coxeter_number,
    fundamental_group_order,
    image_lattice,
    isogeny_labels,
    parse_type,
)

ALL_TYPES = (
    [RootSystemType("A", n) for n in range(1, 9)]
    + [RootSystemType("B", n) for n in range(2, 7)]
    + [RootSystemType("C", n) for n in range(2, 7)]
    + [RootSystemType("D", n) for n in (4, 5, 6)]
    + [RootSystemType("E6", 6), RootSystemType("E7", 7), RootSystemType("E8", 8)]
    + [RootSystemType("F4", 4), RootSystemType("G2", 2)]
)


def test_positive_root_counts():
    assert len(build_root_datum(RootSystemType("A", 2)).positive_roots) == 3
    assert len(build_root_datum(RootSystemType("G2", 2)).positive_roots) == 6
    assert len(build_root_datum(RootSystemType("E8", 8)).positive_roots) == 120


def test_coxeter_numbers():
    assert coxeter_number(build_root_datum(RootSystemType("A", 1))) == 2
    for n in range(1, 8):
        assert coxeter_number(build_root_datum(RootSystemType("A", n))) == n + 1
    assert coxeter_number(build_root_datum(RootSystemType("E8", 8))) == 30
    assert coxeter_number(build_root_datum(RootSystemType("F4", 4))) == 12


@pytest.mark.parametrize("t", ALL_TYPES, ids=str)
def test_root_count_equals_nh_over_two(t):
    d = build_root_datum(t)
    h = coxeter_number(d)
    assert len(d.positive_roots) == t.rank * h // 2


@pytest.mark.parametrize("t", ALL_TYPES, ids=str)
def test_cartan_shape_and_marks(t):
    d = build_root_datum(t)
    for i, row in enumerate(d.cartan):
        assert row[i] == 2
        assert all(v <= 0 for j, v in enumerate(row) if j != i)
    # marks dominate every positive root coefficient-wise
    for beta in d.positive_roots:
        assert all(b <= c for b, c in zip(beta, d.marks))


def test_good_primes():
    assert bad_primes(RootSystemType("A", 7)) == frozenset()
    assert bad_primes(RootSystemType("F4", 4)) == frozenset({2, 3})
    assert bad_primes(RootSystemType("D", 5)) == frozenset({2})
    assert bad_primes(RootSystemType("E8", 8)) == frozenset({2, 3, 5})
    assert bad_primes(RootSystemType("BC", 3)) == frozenset({2})


def test_image_lattice_examples():
    a4 = RootSystemType("A", 4)
    adj = image_lattice(a4, "adjoint")
    assert adj.congruences == () and adj.contains((1, 1, 1, 1))
    sc = image_lattice(a4, "simply_connected")
    assert sc.index == 5
    # a_1 + 2a_2 + 3a_3 + 4a_4 = 0 mod 5
    assert sc.contains((5, 0, 0, 0)) and not sc.contains((1, 0, 0, 0))
    cn = image_lattice(RootSystemType("C", 3), "simply_connected")
    assert cn.contains((1, 1, 2)) and not cn.contains((1, 1, 1))


def test_invalid_isogeny_rejected():
    with pytest.raises(InvalidIsogeny):
        image_lattice(RootSystemType("A", 3), "intermediate(3)")
    with pytest.raises(InvalidIsogeny):
        image_lattice(RootSystemType("G2", 2), "half_spin")


@pytest.mark.parametrize("t", ALL_TYPES, ids=str)
def test_cartan_columns_in_simply_connected_lattice(t):
    labels = isogeny_labels(t)
    sc = image_lattice(t, labels[-1])
    a = cartan_matrix(t)
    n = t.rank
    for i in range(n):
        column = tuple(a[j][i] for j in range(n))
        assert sc.contains(column)


@pytest.mark.parametrize("t", ALL_TYPES, ids=str)
def test_adjoint_to_sc_index_is_fundamental_group_order(t):
    labels = isogeny_labels(t)
    sc = image_lattice(t, labels[-1])
    assert sc.index == fundamental_group_order(t)
    adj = image_lattice(t, labels[0])
    assert adj.index == 1


def test_parse_type():
    assert parse_type("B5") == RootSystemType("B", 5)
    assert parse_type("2A3") == RootSystemType("A", 3, 2)
    assert parse_type("3D4") == RootSystemType("D", 4, 3)
    assert parse_type("E7") == RootSystemType("E7", 7)
    with pytest.raises(InvalidRank):
        parse_type("D3")
    with pytest.raises(InvalidRank):
        parse_type("2B4")

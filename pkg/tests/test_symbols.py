from itertools import combinations

import pytest

from hok.errors import NotAMember, SeriesMismatch
from hok.symbols import (
    Symbol,
    balanced,
    decode_subset,
    enumerate_symbols,
    families,
    make_symbol,
    principal_series,
    row_subset,
    subset_encoding,
)


def test_rank_formula():
    s = make_symbol("BC", (0, 2), (1,))
    assert s.rank == 2
    assert make_symbol("BC", (1,), ()).rank == 1
    assert make_symbol("2D", (0, 1), ()).rank == 1


def test_enumeration_counts():
    assert len(enumerate_symbols("BC", 1)) == 2
    assert len(enumerate_symbols("BC", 2)) == 6


def test_bc2_defect_split():
    syms = enumerate_symbols("BC", 2)
    by_defect = {}
    for s in syms:
        by_defect.setdefault(s.defect, []).append(s)
    assert len(by_defect[1]) == 5 and len(by_defect[3]) == 1


def test_principal_series_predicate():
    assert principal_series(make_symbol("BC", (0, 2), (1,)))
    assert not principal_series(make_symbol("BC", (0, 1, 2), ()))
    assert principal_series(make_symbol("2D", (0, 1), ()))


def test_normalization_rejected():
    with pytest.raises(SeriesMismatch):
        make_symbol("BC", (0, 1), (0,))
    with pytest.raises(SeriesMismatch):
        make_symbol("BC", (0, 2), (1, 3))  # even defect
    with pytest.raises(SeriesMismatch):
        make_symbol("BC", (2, 1), ())  # not increasing


def test_bc2_families():
    fams = families(enumerate_symbols("BC", 2))
    sizes = sorted(len(f.members) for f in fams)
    assert sizes == [1, 1, 4]
    big = next(f for f in fams if len(f.members) == 4)
    assert big.z_singletons == (0, 1, 2)
    assert big.z == 1
    assert big.z_star_low == frozenset({1})
    assert big.z_star_high == frozenset({0, 2})


def test_bc1_families_are_singletons():
    fams = families(enumerate_symbols("BC", 1))
    assert [len(f.members) for f in fams] == [1, 1]


def test_degenerate_d_symbols_form_two_singleton_families():
    syms = enumerate_symbols("D", 2)
    degenerate = [s for s in syms if s.is_degenerate()]
    assert len(degenerate) == 2
    assert degenerate[0].top == (1,)
    fams = families(syms)
    deg_fams = [f for f in fams if f.is_degenerate()]
    assert len(deg_fams) == 2
    assert all(len(f.members) == 1 for f in deg_fams)


def test_special_symbol_and_empty_encoding():
    fams = families(enumerate_symbols("BC", 2))
    big = next(f for f in fams if len(f.members) == 4)
    special = big.special_symbol()
    assert special.top == (0, 2) and special.bottom == (1,)
    assert subset_encoding(big, special) == frozenset()


def test_bc2_encodings_and_cuspidal_member():
    fams = families(enumerate_symbols("BC", 2))
    big = next(f for f in fams if len(f.members) == 4)
    encodings = {m: subset_encoding(big, m) for m in big.members}
    # distinct members map to distinct even-cardinality subsets
    assert len(set(encodings.values())) == 4
    assert all(len(e) % 2 == 0 for e in encodings.values())
    unbalanced = [m for m, e in encodings.items() if not balanced(big, e)]
    assert len(unbalanced) == 1
    assert unbalanced[0].defect == 3  # the cuspidal member
    ps_members = [m for m, e in encodings.items() if balanced(big, e)]
    assert len(ps_members) == 3
    assert all(principal_series(m) for m in ps_members)


def test_round_trip_m_sharp():
    for series, n in [("BC", 3), ("2D", 3), ("BC", 4)]:
        for fam in families(enumerate_symbols(series, n)):
            for m in fam.members:
                enc = subset_encoding(fam, m)
                back = decode_subset(fam, enc)
                raw = row_subset(fam, m)
                if series == "D":
                    continue
                assert back == raw


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_bc_family_sizes_and_special_everywhere(n):
    syms = enumerate_symbols("BC", n)
    fams = families(syms)
    assert sum(len(f.members) for f in fams) == len(syms)
    for f in fams:
        assert len(f.members) == 4 ** f.z
        special = f.special_symbol()
        assert special.defect == 1
        assert subset_encoding(f, special) == frozenset()
        encs = [subset_encoding(f, m) for m in f.members]
        assert len({tuple(sorted(e)) for e in encs}) == len(f.members)
        # principal-series members are exactly the balanced encodings
        ps = [m for m in f.members if principal_series(m)]
        bal = [m for m in f.members if balanced(f, subset_encoding(f, m))]
        assert sorted(map(str, ps)) == sorted(map(str, bal))


@pytest.mark.parametrize("series,n", [("D", 4), ("D", 5), ("2D", 4), ("2D", 5)])
def test_d_series_family_partition(series, n):
    syms = enumerate_symbols(series, n)
    fams = families(syms)
    assert sum(len(f.members) for f in fams) == len(syms)
    for f in fams:
        if f.is_degenerate():
            assert len(f.z_singletons) == 0
            continue
        z = f.z
        if series == "D":
            expected = 4 ** (z - 1) if z >= 1 else 1
        else:
            expected = sum(
                1
                for k in range(0, z)
                if (z - 1 - k) % 2 == 0
                for _ in combinations(f.z_singletons, k)
            )
        assert len(f.members) == expected
        encs = [subset_encoding(f, m) for m in f.members]
        assert len({tuple(sorted(e)) for e in encs}) == len(f.members)


def test_not_a_member():
    fams = families(enumerate_symbols("BC", 2))
    outsider = make_symbol("BC", (5,), ())
    with pytest.raises(NotAMember):
        subset_encoding(fams[0], outsider)

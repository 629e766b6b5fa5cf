import pytest

from hok.rootdata import RootSystemType, build_root_datum
from hok.weyl import (
    WeylGroup,
    _compose,
    _inv,
    diagram_twist,
    f_conjugacy_classes,
    generate_weyl,
    torus_class_count,
    trivial_twist,
    twist_permutation,
)


def W(label_family, n) -> WeylGroup:
    return generate_weyl(build_root_datum(RootSystemType(label_family, n)))


def brute_force_conjugacy(w: WeylGroup):
    """Independent oracle: partition by x^{-1} v x over all x."""
    classes = []
    seen = set()
    for k, v in enumerate(w.elements):
        if k in seen:
            continue
        orbit = set()
        for x in w.elements:
            conj = _compose(_compose(_inv(x), v), x)
            orbit.add(w.index_of(conj))
        seen |= orbit
        classes.append(frozenset(orbit))
    return classes


def test_orders():
    assert len(W("A", 2)) == 6
    assert len(W("B", 3)) == 48
    assert len(W("G2", 2)) == 12
    assert len(W("D", 4)) == 192


def test_generators_are_involutions_permuting_other_positives():
    w = W("B", 2)
    npos = len(w.datum.positive_roots)
    n = w.datum.rank
    for i, g in enumerate(w.generators):
        perm = w.elements[g]
        assert _compose(perm, perm) == tuple(range(len(perm)))
        # s_i sends alpha_i negative and permutes the other positive roots
        alpha_i = tuple(int(j == i) for j in range(n))
        moved_neg = [k for k in range(npos) if perm[k] >= npos]
        assert moved_neg == [w.roots.index(alpha_i)]


def test_f_classes_trivial_twists():
    reps, classes = f_conjugacy_classes(W("A", 1), trivial_twist(1))
    assert len(reps) == 2
    reps, classes = f_conjugacy_classes(W("B", 2), trivial_twist(2))
    assert len(reps) == 5


def test_f_classes_match_brute_force_conjugacy():
    for fam, n in [("A", 2), ("B", 2), ("G2", 2), ("A", 3)]:
        w = W(fam, n)
        _, classes = f_conjugacy_classes(w, trivial_twist(n))
        oracle = {frozenset(c) for c in brute_force_conjugacy(w)}
        assert {frozenset(c) for c in classes} == oracle


def test_twisted_a2_has_three_classes():
    t = RootSystemType("A", 2, 2)
    w = generate_weyl(build_root_datum(t))
    reps, classes = f_conjugacy_classes(w, diagram_twist(t))
    assert len(reps) == 3
    assert sum(len(c) for c in classes) == len(w)


@pytest.mark.parametrize(
    "fam,n,twist",
    [("A", 1, 1), ("A", 2, 1), ("A", 3, 2), ("D", 4, 1), ("D", 4, 2), ("D", 4, 3)],
)
def test_class_sizes_sum(fam, n, twist):
    t = RootSystemType(fam, n, twist)
    w = generate_weyl(build_root_datum(t))
    reps, classes = f_conjugacy_classes(w, diagram_twist(t))
    assert sum(len(c) for c in classes) == len(w)
    assert len({i for c in classes for i in c}) == len(w)


def test_twisted_count_invariant_under_conjugated_twist():
    # Replacing F by its conjugate under any fixed w in W must not change the
    # class count.
    t = RootSystemType("A", 3, 2)
    w = generate_weyl(build_root_datum(t))
    twist = diagram_twist(t)
    base_perm = twist_permutation(w, twist)
    reps, _ = f_conjugacy_classes(w, twist)

    class _PermTwist:
        def __init__(self, perm):
            self._perm = perm

        def apply_root(self, coeffs):
            raise NotImplementedError

    # conjugate twist action: F' = x F x^{-1} on roots
    for xk in [1, 5, len(w) - 1]:
        x = w.elements[xk]
        conj_perm = _compose(_compose(_inv(x), base_perm), x)
        seen = [False] * len(w)
        count = 0
        for start in range(len(w)):
            if seen[start]:
                continue
            count += 1
            stack = [start]
            seen[start] = True
            while stack:
                cur = stack.pop()
                for g in w.generators:
                    gp = w.elements[g]
                    fg = _compose(_compose(_inv(conj_perm), gp), conj_perm)
                    moved = _compose(_compose(fg, w.elements[cur]), gp)
                    k = w.index_of(moved)
                    if not seen[k]:
                        seen[k] = True
                        stack.append(k)
        assert count == len(reps)


def test_torus_class_counts():
    assert torus_class_count(RootSystemType("A", 1)) == 2
    assert torus_class_count(RootSystemType("A", 2)) == 3  # partitions of 3
    assert torus_class_count(RootSystemType("A", 2, 2)) == 3

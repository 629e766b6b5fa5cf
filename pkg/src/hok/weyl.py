"""Weyl groups as permutations of the root list, with F-conjugacy classes.

Elements are permutations of the full root list (positive and negative),
stored as index tuples.  A diagram twist acts by permuting simple-root
coordinates; F-classes under w ~ x^{-1} w F(x) count conjugacy classes of
maximal tori of the corresponding finite reductive group.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidRank, ResourceLimit
from .rootdata import RootDatum, RootSystemType, build_root_datum, cartan_matrix

WEYL_ORDER_GUARD = 51840  # |W(E6)|


@dataclass(frozen=True)
class FrobeniusTwist:
    diagram: tuple  # permutation of simple-root indices
    order: int

    def apply_root(self, coeffs) -> tuple:
        inv = [0] * len(self.diagram)
        for i, j in enumerate(self.diagram):
            inv[j] = i
        return tuple(coeffs[inv[i]] for i in range(len(coeffs)))


def trivial_twist(n: int) -> FrobeniusTwist:
    return FrobeniusTwist(tuple(range(n)), 1)


def diagram_twist(t: RootSystemType) -> FrobeniusTwist:
    """The standard twist of the given order for the type, as a diagram map."""
    n = t.rank
    if t.twist == 1:
        return trivial_twist(n)
    a = cartan_matrix(t)
    if t.twist == 2:
        if t.family == "A":
            perm = tuple(n - 1 - i for i in range(n))
        elif t.family == "D":
            perm = tuple(list(range(n - 2)) + [n - 1, n - 2])
        elif t.family == "E6":
            perm = (5, 1, 4, 3, 2, 0)
        else:
            raise InvalidRank(f"no order-2 twist for {t.family}")
    else:  # order 3, D4 triality: rotate the three outer nodes around node 2
        perm = (2, 1, 3, 0)
    for i in range(n):
        for j in range(n):
            assert a[perm[i]][perm[j]] == a[i][j], "twist must preserve the Cartan matrix"
    return FrobeniusTwist(perm, t.twist)


@dataclass
class WeylGroup:
    datum: RootDatum
    roots: tuple  # positive then negative root coefficient vectors
    elements: tuple  # permutations of `roots`, identity first
    generators: tuple  # indices into `elements` of the simple reflections
    words: tuple  # a geodesic word in the generators for each element

    def __len__(self):
        return len(self.elements)

    def compose(self, p, q) -> tuple:
        """Permutation of p followed by q... composition (p then q) as maps."""
        return tuple(q[i] for i in p)

    def index_of(self, perm) -> int:
        return self._index[perm]


def _simple_reflection(datum: RootDatum, roots, i: int) -> tuple:
    n = datum.rank
    a = datum.cartan
    lookup = {r: k for k, r in enumerate(roots)}
    image = []
    for beta in roots:
        pairing = sum(beta[j] * a[j][i] for j in range(n))
        new = list(beta)
        new[i] -= pairing
        image.append(lookup[tuple(new)])
    return tuple(image)


def generate_weyl(datum: RootDatum) -> WeylGroup:
    """Full enumeration by closure from the simple reflections (BFS order)."""
    pos = list(datum.positive_roots)
    roots = tuple(pos + [tuple(-c for c in r) for r in pos])
    n = datum.rank
    gens = [_simple_reflection(datum, roots, i) for i in range(n)]
    identity = tuple(range(len(roots)))
    elements = [identity]
    words = [()]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        new_frontier = []
        for perm in frontier:
            base_word = words[index[perm]]
            for gi, g in enumerate(gens):
                nxt = tuple(g[i] for i in perm)  # apply g after perm
                if nxt not in index:
                    if len(elements) >= WEYL_ORDER_GUARD + 1:
                        raise ResourceLimit("Weyl group above order guard")
                    index[nxt] = len(elements)
                    elements.append(nxt)
                    words.append(base_word + (gi,))
                    new_frontier.append(nxt)
        frontier = new_frontier
    group = WeylGroup(
        datum=datum,
        roots=roots,
        elements=tuple(elements),
        generators=tuple(index[g] for g in gens),
        words=tuple(words),
    )
    group._index = index
    return group


def twist_permutation(w: WeylGroup, twist: FrobeniusTwist) -> tuple:
    """The twist as a permutation of the root list."""
    lookup = {r: k for k, r in enumerate(w.roots)}
    return tuple(lookup[twist.apply_root(r)] for r in w.roots)


def _inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _compose(p, q):
    """Apply p, then q (as functions on indices)."""
    return tuple(q[i] for i in p)


def f_conjugacy_classes(w: WeylGroup, twist: FrobeniusTwist):
    """Partition of W under w ~ x^{-1} w F(x); returns (reps, classes).

    `classes` is a list of lists of element indices; `reps` the first element
    of each class in generation order.
    """
    f_perm = twist_permutation(w, twist)
    f_of = {}
    for k, elem in enumerate(w.elements):
        # F(w) = f ∘ w ∘ f^{-1} as a root permutation
        fw = _compose(_compose(_inv(f_perm), elem), f_perm)
        f_of[k] = w.index_of(fw)
    gen_idx = list(w.generators)
    seen = [False] * len(w.elements)
    reps, classes = [], []
    for start in range(len(w.elements)):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        queue = [start]
        while queue:
            cur = queue.pop()
            cur_perm = w.elements[cur]
            for g in gen_idx:
                g_perm = w.elements[g]
                # x = generator s: move w -> s^{-1} w F(s) = s * w * F(s) since
                # s is an involution.  Under the left-action convention the
                # product a*b applies b first, so this is: apply F(s), then w,
                # then s.
                moved = _compose(_compose(w.elements[f_of[g]], cur_perm), g_perm)
                k = w.index_of(moved)
                if not seen[k]:
                    seen[k] = True
                    orbit.append(k)
                    queue.append(k)
        reps.append(start)
        classes.append(sorted(orbit))
    return reps, classes


def torus_class_count(t: RootSystemType) -> int:
    """Number of F-conjugacy classes = number of torus classes."""
    datum = build_root_datum(t)
    w = generate_weyl(datum)
    reps, _ = f_conjugacy_classes(w, diagram_twist(t))
    return len(reps)

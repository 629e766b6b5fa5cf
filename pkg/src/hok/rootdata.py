"""Classified root-system data: Cartan matrices, positive roots, marks,
Coxeter numbers, bad primes, and cocharacter image lattices per isogeny.

Simple roots are numbered as in Bourbaki plates (for E6/E7 the branch node is
alpha_2 attached to alpha_4).  Positive roots are generated by closing the
simple roots under root-string addition and are ordered by height then
lexicographically, so everything downstream is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidIsogeny, InvalidRank

FAMILIES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2", "BC")

#: families for which a reduced root datum is built (BC is good-prime only)
DATUM_FAMILIES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")


@dataclass(frozen=True)
class RootSystemType:
    family: str
    rank: int
    twist: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidRank(f"unknown family {self.family!r}")
        n = self.rank
        fam = self.family
        ok = (
            (fam in ("A", "BC") and n >= 1)
            or (fam in ("B", "C") and n >= 2)
            or (fam == "D" and n >= 4)
            or (fam == "E6" and n == 6)
            or (fam == "E7" and n == 7)
            or (fam == "E8" and n == 8)
            or (fam == "F4" and n == 4)
            or (fam == "G2" and n == 2)
        )
        if not ok:
            raise InvalidRank(f"rank {n} invalid for family {fam}")
        if self.twist not in (1, 2, 3):
            raise InvalidRank(f"twist order {self.twist} not supported")
        if self.twist == 3 and (fam, n) != ("D", 4):
            raise InvalidRank("twist order 3 only exists for D4")
        if self.twist == 2 and fam not in ("A", "D", "E6"):
            raise InvalidRank(f"no order-2 diagram twist for {fam}")

    def __str__(self):
        prefix = "" if self.twist == 1 else str(self.twist)
        return f"{prefix}{self.family}{self.rank}"


def parse_type(label: str) -> RootSystemType:
    """Parse labels like 'B5', '2A3', '3D4', 'E7', 'G2'."""
    s = label.strip()
    twist = 1
    if s and s[0] in "23" and len(s) > 1 and s[1].isalpha():
        twist = int(s[0])
        s = s[1:]
    fam = "".join(ch for ch in s if not ch.isdigit())
    digits = "".join(ch for ch in s if ch.isdigit())
    if fam in ("E", "F", "G"):
        fam = fam + digits
    if fam in ("E6", "E7", "E8", "F4", "G2"):
        n = int(fam[1])
    else:
        if not digits:
            raise InvalidRank(f"missing rank in type label {label!r}")
        n = int(digits)
    return RootSystemType(fam, n, twist)


def cartan_matrix(t: RootSystemType) -> list[list[int]]:
    n = t.rank
    fam = t.family
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if fam == "A":
        for i in range(n - 1):
            bond(i, i + 1)
    elif fam == "B":
        # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -2, -1)
    elif fam == "C":
        # alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, -1, -2)
    elif fam == "D":
        for i in range(n - 3):
            bond(i, i + 1)
        bond(n - 3, n - 2)
        bond(n - 3, n - 1)
    elif fam in ("E6", "E7", "E8"):
        # Bourbaki: chain 1-3-4-5-6(-7)(-8), branch 2 attached to 4.
        chain = [0] + list(range(2, n))
        for x, y in zip(chain, chain[1:]):
            bond(x, y)
        bond(1, 3)
    elif fam == "F4":
        bond(0, 1)
        bond(1, 2, -2, -1)  # alpha_2 long, alpha_3 short
        bond(2, 3)
    elif fam == "G2":
        bond(0, 1, -1, -3)  # alpha_1 short: <alpha_2, alpha_1^vee> = -3
    else:
        raise InvalidRank(f"no Cartan matrix for family {fam}")
    return a


@dataclass(frozen=True)
class RootDatum:
    type: RootSystemType
    cartan: tuple
    positive_roots: tuple  # coefficient vectors over the simple roots
    marks: tuple  # highest-root coefficients c_i

    @property
    def rank(self) -> int:
        return self.type.rank


@lru_cache(maxsize=None)
def build_root_datum(t: RootSystemType) -> RootDatum:
    """Positive roots by closure from the simple roots.

    A root beta extends to beta + alpha_i iff the alpha_i-string through beta
    has q = p - <beta, alpha_i^vee> > 0, where p is the largest k with
    beta - k*alpha_i already a root.  Closure by height terminates.
    """
    if t.family not in DATUM_FAMILIES:
        raise InvalidRank(f"no root datum for family {t.family}")
    n = t.rank
    a = cartan_matrix(t)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    known = set(simple)
    layer = list(simple)
    while layer:
        new = []
        for beta in layer:
            for i in range(n):
                pairing = sum(beta[j] * a[j][i] for j in range(n))
                p = 0
                probe = list(beta)
                while True:
                    probe[i] -= 1
                    if probe[i] < 0 or tuple(probe) not in known:
                        break
                    p += 1
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    cand = tuple(up)
                    if cand not in known:
                        known.add(cand)
                        new.append(cand)
        layer = new
    roots = sorted(known, key=lambda r: (sum(r), r))
    top_height = sum(roots[-1])
    highest = [r for r in roots if sum(r) == top_height]
    assert len(highest) == 1, "highest root must be unique"
    marks = highest[0]
    assert all(c >= 1 for c in marks)
    return RootDatum(t, tuple(tuple(row) for row in a), tuple(roots), marks)


def coxeter_number(d: RootDatum) -> int:
    """h = 1 + sum of the highest-root marks."""
    return 1 + sum(d.marks)


def bad_primes(t: RootSystemType) -> frozenset[int]:
    fam = t.family
    if fam == "A":
        return frozenset()
    if fam in ("B", "C", "D", "BC"):
        return frozenset({2})
    if fam in ("E6", "E7", "F4", "G2"):
        return frozenset({2, 3})
    if fam == "E8":
        return frozenset({2, 3, 5})
    raise InvalidRank(f"unknown family {fam}")


def good_primes(t: RootSystemType):
    """The excluded-prime set and a goodness predicate."""
    bad = bad_primes(t)
    return bad, (lambda p: p not in bad)


@dataclass(frozen=True)
class IsogenyLattice:
    """Image of the cocharacter lattice in Z^n, cut out by congruences.

    Each congruence is (coefficient vector, modulus); the adjoint lattice has
    none.  `index` is the index in Z^n.
    """

    type: RootSystemType
    label: str
    congruences: tuple
    index: int

    def contains(self, vec) -> bool:
        return all(
            sum(c * v for c, v in zip(coeffs, vec)) % mod == 0
            for coeffs, mod in self.congruences
        )


def fundamental_group_order(t: RootSystemType) -> int:
    fam, n = t.family, t.rank
    return {
        "A": n + 1,
        "B": 2,
        "C": 2,
        "D": 4,
        "E6": 3,
        "E7": 2,
        "E8": 1,
        "F4": 1,
        "G2": 1,
    }[fam]


def isogeny_labels(t: RootSystemType) -> list[str]:
    fam, n = t.family, t.rank
    if fam == "A":
        return [f"intermediate({r})" for r in range(1, n + 2) if (n + 1) % r == 0]
    if fam in ("B", "C", "E7", "E6"):
        return ["adjoint", "simply_connected"]
    if fam == "D":
        if n % 2 == 1:
            return ["adjoint", "so", "simply_connected"]
        return ["adjoint", "so", "half_spin", "simply_connected"]
    return ["adjoint"]


def _canonical_label(t: RootSystemType, label: str) -> str:
    fam, n = t.family, t.rank
    if fam == "A":
        if label == "adjoint":
            return "intermediate(1)"
        if label == "simply_connected":
            return f"intermediate({n + 1})"
        return label
    if label == "sc":
        return "simply_connected"
    if fam in ("E8", "F4", "G2") and label == "simply_connected":
        return "adjoint"
    return label


def image_lattice(t: RootSystemType, label: str) -> IsogenyLattice:
    """The congruence description of phi(X_*(T)) for the given isogeny."""
    fam, n = t.family, t.rank
    label = _canonical_label(t, label)
    if label not in isogeny_labels(t):
        raise InvalidIsogeny(f"{label!r} is not an isogeny of {t}")
    congruences: list[tuple[tuple[int, ...], int]] = []
    if fam == "A":
        r = int(label[len("intermediate(") : -1])
        if r > 1:
            form = tuple(i + 1 for i in range(n))
            congruences.append((form, r))
        index = r
    elif fam == "B":
        if label == "simply_connected":
            form = tuple(1 if i % 2 == 0 else 0 for i in range(n))
            congruences.append((form, 2))
        index = 2 if congruences else 1
    elif fam == "C":
        if label == "simply_connected":
            form = tuple(0 if i < n - 1 else 1 for i in range(n))
            congruences.append((form, 2))
        index = 2 if congruences else 1
    elif fam == "D":
        if n % 2 == 1:
            # single cyclic form, modulus r in {1, 2, 4}
            form = tuple(
                (2 if i % 2 == 0 else 0) if i < n - 2 else (1 if i == n - 2 else -1)
                for i in range(n)
            )
            r = {"adjoint": 1, "so": 2, "simply_connected": 4}[label]
            if r > 1:
                congruences.append((form, r))
            index = r
        else:
            e1 = tuple(1 if (i % 2 == 0 and i < n) else 0 for i in range(n))
            e2 = tuple(1 if i >= n - 2 else 0 for i in range(n))
            chosen = {
                "adjoint": [],
                "half_spin": [e1],
                "so": [e2],
                "simply_connected": [e1, e2],
            }[label]
            congruences.extend((f, 2) for f in chosen)
            index = 2 ** len(chosen)
    elif fam == "E6":
        if label == "simply_connected":
            congruences.append(((1, 0, -1, 0, 1, -1), 3))
        index = 3 if congruences else 1
    elif fam == "E7":
        if label == "simply_connected":
            congruences.append(((0, 1, 0, 0, 1, 0, 1), 2))
        index = 2 if congruences else 1
    elif fam in ("E8", "F4", "G2"):
        index = 1
    else:
        raise InvalidIsogeny(f"no lattices for family {fam}")
    return IsogenyLattice(t, label, tuple(congruences), index)

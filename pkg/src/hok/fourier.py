"""Pairing matrices on M(Gamma) and the classical-family subset blocks.

M(Gamma) indexes pairs (class representative x, irreducible character sigma
of its centralizer); the pairing is

    {(x,s),(y,t)} = 1/(|Z(x)||Z(y)|) * sum over g with x.gyg^-1 = gyg^-1.x
                    of s(g y g^-1) * conj(t(g^-1 x g)).

Supported groups: (Z/2)^k generated on the fly, S3 and S4 from bundled data
files (validated at load by exact orthogonality).  The explicit block
matrices M1..M8 ship as fixtures with their published determinants/ranks.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import combinations, product

from .errors import GroupMismatch, SeriesMismatch
from .linalg import CycloNumber, Matrix, as_cyclo, scalar_conj
from .symbols import Family, balanced


@dataclass(frozen=True)
class FamilyGroup:
    kind: str
    elements: tuple  # hashable canonical element keys
    mult: dict  # (a, b) -> ab
    inv: dict
    class_reps: tuple
    centralizers: dict  # rep -> tuple of elements
    characters: dict  # rep -> tuple of per-element value dicts

    def centralizer_order(self, rep) -> int:
        return len(self.centralizers[rep])


@dataclass(frozen=True)
class MPair:
    x: object  # class representative
    sigma: int  # index of the character of Z(x)

    def __str__(self):
        return f"({self.x},chi{self.sigma})"


def elementary_abelian_2(k: int) -> FamilyGroup:
    elems = tuple(product((0, 1), repeat=k))
    mult = {
        (a, b): tuple((x + y) % 2 for x, y in zip(a, b))
        for a in elems
        for b in elems
    }
    inv = {a: a for a in elems}
    chars = {}
    cents = {}
    for rep in elems:
        cents[rep] = elems
        tables = []
        for a in elems:
            tables.append(
                {
                    g: as_cyclo(Fraction((-1) ** (sum(x * y for x, y in zip(a, g)) % 2)))
                    for g in elems
                }
            )
        chars[rep] = tuple(tables)
    return FamilyGroup(
        kind=f"elementary_abelian_2({k})",
        elements=elems,
        mult=mult,
        inv=inv,
        class_reps=elems,
        centralizers=cents,
        characters=chars,
    )


def _decode_value(v) -> CycloNumber:
    conductor, coeffs = v
    return CycloNumber(int(conductor), [Fraction(c) for c in coeffs])


def _data_path(name: str):
    override = os.environ.get("HOK_DATA_DIR")
    if override:
        return os.path.join(override, name)
    return resources.files("hok.data").joinpath(name)


def _load_sym(name: str) -> FamilyGroup:
    path = _data_path(f"{name}.json")
    if hasattr(path, "read_text"):
        data = json.loads(path.read_text(encoding="utf-8"))
    else:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    if data.get("version") != 1:
        raise GroupMismatch(f"unsupported data version in {name}")
    elems = tuple(tuple(e) for e in data["elements"])
    index = {e: i for i, e in enumerate(elems)}
    mult = {}
    for a in elems:
        for b in elems:
            mult[(a, b)] = tuple(a[b[i]] for i in range(len(a)))
    inv = {}
    for a in elems:
        out = [0] * len(a)
        for i, j in enumerate(a):
            out[j] = i
        inv[a] = tuple(out)
    reps = tuple(elems[i] for i in data["class_representatives"])
    cents = {}
    chars = {}
    for block in data["centralizers"]:
        rep = elems[block["rep"]]
        cent = tuple(elems[i] for i in block["elements"])
        cents[rep] = cent
        tables = []
        for char in block["characters"]:
            tables.append({g: _decode_value(v) for g, v in zip(cent, char)})
        chars[rep] = tuple(tables)
    group = FamilyGroup(
        kind=data["name"],
        elements=elems,
        mult=mult,
        inv=inv,
        class_reps=reps,
        centralizers=cents,
        characters=chars,
    )
    _validate_tables(group)
    return group


def _validate_tables(g: FamilyGroup) -> None:
    """Exact row orthogonality and a completeness check per centralizer."""
    for rep in g.class_reps:
        cent = g.centralizers[rep]
        tables = g.characters[rep]
        order = len(cent)
        dims = []
        for i, chi in enumerate(tables):
            dims.append(chi[_identity(g)])
            for j, psi in enumerate(tables):
                acc = as_cyclo(0)
                for h in cent:
                    acc = acc + chi[h] * scalar_conj(psi[h])
                expected = as_cyclo(Fraction(order)) if i == j else as_cyclo(0)
                if acc != expected:
                    raise GroupMismatch(
                        f"character table of Z({rep}) fails orthogonality"
                    )
        total = as_cyclo(0)
        for d in dims:
            total = total + d * d
        if total != order:
            raise GroupMismatch(f"character table of Z({rep}) incomplete")


def _identity(g: FamilyGroup):
    if g.kind.startswith("elementary"):
        return tuple(0 for _ in g.elements[0])
    return tuple(range(len(g.elements[0])))


def family_group(kind: str) -> FamilyGroup:
    kind = kind.strip()
    if kind.lower() in ("s3", "s4"):
        return _load_sym(kind.lower())
    if kind.startswith("elementary_abelian_2(") and kind.endswith(")"):
        return elementary_abelian_2(int(kind[len("elementary_abelian_2(") : -1]))
    if kind.upper().startswith("Z2^"):
        return elementary_abelian_2(int(kind[3:]))
    raise GroupMismatch(f"unsupported family group {kind!r}")


def m_of_gamma(g: FamilyGroup) -> list[MPair]:
    """One pair per (class representative, centralizer irreducible)."""
    out = []
    for rep in g.class_reps:
        for k in range(len(g.characters[rep])):
            out.append(MPair(rep, k))
    return out


def pairing(g: FamilyGroup, p1: MPair, p2: MPair) -> CycloNumber:
    """Exact value of {(x,sigma),(y,tau)}."""
    x, y = p1.x, p2.x
    sigma = g.characters[x][p1.sigma]
    tau = g.characters[y][p2.sigma]
    acc = as_cyclo(0)
    for h in g.elements:
        hyh = g.mult[(g.mult[(h, y)], g.inv[h])]
        if g.mult[(x, hyh)] != g.mult[(hyh, x)]:
            continue
        hxh = g.mult[(g.mult[(g.inv[h], x)], h)]
        acc = acc + sigma[hyh] * scalar_conj(tau[hxh])
    denom = Fraction(1, g.centralizer_order(x) * g.centralizer_order(y))
    return acc * as_cyclo(denom)


def pairing_matrix(g: FamilyGroup) -> Matrix:
    pairs = m_of_gamma(g)
    return Matrix.from_rows(
        [[pairing(g, p, q) for q in pairs] for p in pairs]
    )


def classical_block(f: Family) -> Matrix:
    """The subset sign block of a classical family, scaled by 1/2^z.

    BC: square on balanced subsets.  D: reduced modulo complement pairs.
    2D: rectangular, rows balanced (Z0) by columns one-off-balance (Z1).
    """
    z = f.z
    zset = f.z_singletons
    scale = Fraction(1, 2**z)

    def subsets_with(delta):
        out = []
        for r in range(len(zset) + 1):
            for c in combinations(zset, r):
                s = frozenset(c)
                if len(s & f.z_star_high) == len(s & f.z_star_low) + delta:
                    out.append(s)
        return sorted(out, key=lambda s: (len(s), tuple(sorted(s))))

    def entry(s1, s2):
        return scale * Fraction((-1) ** len(s1 & s2))

    if f.series == "BC":
        idx = subsets_with(0)
        return Matrix.from_rows([[entry(a, b) for b in idx] for a in idx])
    if f.series == "D":
        if not zset:
            return Matrix.from_rows([[Fraction(1)]])
        anchor = min(f.z_star_low)
        idx = [s for s in subsets_with(0) if anchor not in s]
        return Matrix.from_rows([[entry(a, b) for b in idx] for a in idx])
    if f.series == "2D":
        rows = subsets_with(0)
        cols = subsets_with(-1)
        return Matrix.from_rows([[entry(a, b) for b in cols] for a in rows])
    raise SeriesMismatch(f"no classical block for series {f.series}")


def _m(rows):
    return Matrix.from_rows([[Fraction(x) for x in row] for row in rows])


def _half(rows):
    return Matrix.from_rows([[Fraction(x, 2) for x in row] for row in rows])


def paper_fixtures() -> dict:
    """The eight published block matrices with their expected det/rank."""
    h = Fraction(1, 2)
    t = Fraction(1, 3)
    s = Fraction(1, 6)
    fixtures = {
        "M1": (
            _half([[1, 1], [1, -1], [1, 1]]),
            {"rank": 2},
        ),
        "M2": (
            _m(
                [
                    [s, h, t, t],
                    [h, h, 0, 0],
                    [t, 0, 2 * t, -t],
                    [t, 0, -t, 2 * t],
                ]
            ),
            {"det": Fraction(-1, 6)},
        ),
        "M3": (
            _half([[1, 1, 1], [1, 1, -1], [1, -1, 1]]),
            {"det": Fraction(-1, 2)},
        ),
        "M4": (
            _m(
                [
                    [Fraction(1, 24), Fraction(1, 8), Fraction(1, 8), Fraction(1, 12), Fraction(1, 4), Fraction(1, 4), Fraction(1, 8), Fraction(1, 8), Fraction(1, 8), Fraction(1, 3), Fraction(1, 4)],
                    [Fraction(1, 8), Fraction(3, 8), Fraction(3, 8), Fraction(1, 4), Fraction(1, 4), Fraction(1, 4), Fraction(-1, 8), Fraction(-1, 8), Fraction(-1, 8), 0, Fraction(-1, 4)],
                    [Fraction(1, 8), Fraction(3, 8), Fraction(3, 8), Fraction(1, 4), Fraction(-1, 4), Fraction(-1, 4), Fraction(-1, 8), Fraction(-1, 8), Fraction(-1, 8), 0, Fraction(1, 4)],
                    [Fraction(1, 12), Fraction(1, 4), Fraction(1, 4), Fraction(1, 6), 0, 0, Fraction(1, 4), Fraction(1, 4), Fraction(1, 4), Fraction(-1, 3), 0],
                    [Fraction(1, 4), Fraction(1, 4), Fraction(-1, 4), 0, Fraction(1, 2), 0, Fraction(1, 4), Fraction(1, 4), Fraction(-1, 4), 0, 0],
                    [Fraction(1, 4), Fraction(1, 4), Fraction(-1, 4), 0, 0, Fraction(1, 2), Fraction(-1, 4), Fraction(-1, 4), Fraction(1, 4), 0, 0],
                    [Fraction(1, 8), Fraction(-1, 8), Fraction(-1, 8), Fraction(1, 4), Fraction(1, 4), Fraction(-1, 4), Fraction(3, 8), Fraction(-1, 8), Fraction(3, 8), 0, Fraction(1, 4)],
                    [Fraction(1, 8), Fraction(-1, 8), Fraction(-1, 8), Fraction(1, 4), Fraction(1, 4), Fraction(-1, 4), Fraction(-1, 8), Fraction(3, 8), Fraction(-1, 8), 0, Fraction(-1, 4)],
                    [Fraction(1, 8), Fraction(-1, 8), Fraction(-1, 8), Fraction(1, 4), Fraction(-1, 4), Fraction(1, 4), Fraction(3, 8), Fraction(-1, 8), Fraction(3, 8), 0, Fraction(-1, 4)],
                    [Fraction(1, 3), 0, 0, Fraction(-1, 3), 0, 0, 0, 0, 0, Fraction(2, 3), 0],
                    [Fraction(1, 4), Fraction(-1, 4), Fraction(1, 4), 0, 0, 0, Fraction(1, 4), Fraction(-1, 4), Fraction(-1, 4), 0, Fraction(1, 2)],
                ]
            ),
            {"det": Fraction(1, 192)},
        ),
        "M5": (
            _m(
                [
                    [s, h, t, t, s],
                    [h, h, 0, 0, -h],
                    [t, 0, 2 * t, -t, t],
                    [t, 0, -t, 2 * t, t],
                    [s, -h, t, t, s],
                ]
            ),
            {"det": Fraction(1, 6)},
        ),
        "M6": (
            _half(
                [
                    [1, 1, 1, 1],
                    [1, 1, -1, -1],
                    [1, -1, 1, -1],
                    [1, -1, -1, 1],
                ]
            ),
            {"invertible": True},
        ),
        "M7": (
            _m(
                [
                    [2 * t, t, 0, 0, -t],
                    [t, s, -h, -h, t],
                    [0, -h, h, -h, 0],
                    [0, -h, -h, h, 0],
                    [-t, t, 0, 0, 2 * t],
                ]
            ),
            {"det": Fraction(-1, 6)},
        ),
        "M8": (
            _half([[1, 1], [1, 1]]),
            {"rank": 1},
        ),
    }
    return fixtures


def matches_up_to_simultaneous_permutation(a: Matrix, b: Matrix) -> bool:
    """True if some simultaneous row/column permutation carries a onto b."""
    if (a.rows, a.cols) != (b.rows, b.cols) or a.rows != a.cols:
        return a == b
    n = a.rows
    from itertools import permutations as _perms

    for perm in _perms(range(n)):
        if all(
            a[perm[i], perm[j]] == b[i, j] for i in range(n) for j in range(n)
        ):
            return True
    return False

"""Concrete GL_n(F_q) models with parabolic data.

Elements are n*n matrices over the field, stored as flat tuples of field
codes and addressed by index.  Conjugacy classes are keyed by (characteristic
polynomial, minimal polynomial), which separates classes for n <= 3.

Parabolic data is uniform: a block datum is an ordered tuple of disjoint
coordinate blocks.  The Levi keeps entries within blocks; the parabolic also
allows entries from earlier blocks to later ones; the radical is the
parabolic with identity diagonal blocks.  Nonsplit tori embed extension
fields by their multiplication action on a polynomial basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

from ..errors import ResourceLimit, TwistDoesNotStabilize
from .gf import GaloisField, irreducible_over

SUPPORTED = {(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)}
ORDER_GUARD = 12000


@dataclass(frozen=True)
class BlockDatum:
    """Ordered disjoint coordinate blocks covering 0..n-1."""

    blocks: tuple  # tuple of tuples of coordinates

    @property
    def coords(self):
        return tuple(c for b in self.blocks for c in b)

    def block_of(self):
        out = {}
        for k, b in enumerate(self.blocks):
            for c in b:
                out[c] = k
        return out

    def reversed(self) -> "BlockDatum":
        return BlockDatum(tuple(reversed(self.blocks)))

    def shape(self):
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))


class FiniteGroupModel:
    def __init__(self, n: int, q: int):
        if (n, q) not in SUPPORTED:
            raise ResourceLimit(f"GL_{n}(F_{q}) is not a supported model")
        self.n = n
        self.q = q
        self.field = GaloisField(q)
        self.elements: list[tuple] = []
        self.index: dict[tuple, int] = {}
        self._enumerate_elements()
        if len(self.elements) > ORDER_GUARD:
            raise ResourceLimit("group order above guard")
        self.identity = self.index[self._identity_tuple()]
        self.inverse = [self.index[self._invert(self.elements[i])]
                        for i in range(len(self.elements))]
        self._class_data()
        self._subgroup_data()
        self._twist_cache: dict = {}

    # -- construction ---------------------------------------------------------

    def _identity_tuple(self):
        n = self.n
        return tuple(1 if i == j else 0 for i in range(n) for j in range(n))

    def _enumerate_elements(self):
        n, q = self.n, self.q
        for entries in product(range(q), repeat=n * n):
            if self._det(entries) != 0:
                self.index[entries] = len(self.elements)
                self.elements.append(entries)

    def _det(self, m):
        f, n = self.field, self.n
        if n == 2:
            a, b, c, d = m
            return f.sub(f.mul[a][d], f.mul[b][c])
        acc = 0
        for perm, sign in (
            ((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
            ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1),
        ):
            term = f.mul[f.mul[m[0 * 3 + perm[0]]][m[1 * 3 + perm[1]]]][m[2 * 3 + perm[2]]]
            acc = f.add[acc][term if sign == 1 else f.neg[term]]
        return acc

    def mat_mul(self, a, b):
        f, n = self.field, self.n
        out = []
        for i in range(n):
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc = f.add[acc][f.mul[a[i * n + k]][b[k * n + j]]]
                out.append(acc)
        return tuple(out)

    def mul(self, i: int, j: int) -> int:
        return self.index[self.mat_mul(self.elements[i], self.elements[j])]

    def _invert(self, m):
        f, n = self.field, self.n
        det = self._det(m)
        dinv = f.inv[det]
        if n == 2:
            a, b, c, d = m
            return (
                f.mul[d][dinv], f.mul[f.neg[b]][dinv],
                f.mul[f.neg[c]][dinv], f.mul[a][dinv],
            )
        cof = []
        for i in range(3):
            for j in range(3):
                rows = [r for r in range(3) if r != j]
                cols = [c for c in range(3) if c != i]
                minor = f.sub(
                    f.mul[m[rows[0] * 3 + cols[0]]][m[rows[1] * 3 + cols[1]]],
                    f.mul[m[rows[0] * 3 + cols[1]]][m[rows[1] * 3 + cols[0]]],
                )
                cof.append(f.mul[minor][dinv] if (i + j) % 2 == 0 else f.mul[f.neg[minor]][dinv])
        return tuple(cof)

    def conj(self, h: int, g: int) -> int:
        """h^{-1} g h."""
        hm = self.elements[h]
        return self.index[
            self.mat_mul(self.mat_mul(self.elements[self.inverse[h]], self.elements[g]), hm)
        ]

    # -- conjugacy classes ------------------------------------------------------

    def _charpoly(self, m):
        f, n = self.field, self.n
        if n == 2:
            a, b, c, d = m
            tr = f.add[a][d]
            return (self._det(m), f.neg[tr], 1)
        tr = f.add[f.add[m[0]][m[4]]][m[8]]
        c2 = 0
        for (i, j) in ((0, 1), (0, 2), (1, 2)):
            minor = f.sub(
                f.mul[m[i * 3 + i]][m[j * 3 + j]], f.mul[m[i * 3 + j]][m[j * 3 + i]]
            )
            c2 = f.add[c2][minor]
        return (f.neg[self._det(m)], c2, f.neg[tr], 1)

    def _minpoly(self, m):
        """First linear dependence among I, m, m^2, ... (Gauss over F_q)."""
        f, n = self.field, self.n
        powers = [self._identity_tuple()]
        while True:
            powers.append(self.mat_mul(powers[-1], m))
            # solve sum c_k powers[k] = 0 with c_last = 1
            rows = len(powers)
            # set up linear system over F_q: columns are the powers
            mat = [[powers[k][pos] for k in range(rows)] for pos in range(n * n)]
            sol = _solve_last_one(mat, f)
            if sol is not None:
                return tuple(sol)

    def _class_data(self):
        self.class_key = []
        reps: dict = {}
        members: dict = {}
        for i, m in enumerate(self.elements):
            key = (self._charpoly(m), self._minpoly(m))
            self.class_key.append(key)
            if key not in reps:
                reps[key] = i
                members[key] = []
            members[key].append(i)
        self.class_reps = sorted(reps.values())
        self.class_members = {reps[k]: members[k] for k in reps}
        self.class_rep_of = {}
        for rep, mem in self.class_members.items():
            for i in mem:
                self.class_rep_of[i] = rep

    def centralizer_order(self, g: int) -> int:
        return len(self.elements) // len(self.class_members[self.class_rep_of[g]])

    # -- subgroups ----------------------------------------------------------------

    def _matches_blocks(self, m, datum: BlockDatum, upper: bool) -> bool:
        n = self.n
        pos = datum.block_of()
        for i in range(n):
            for j in range(n):
                if m[i * n + j] == 0:
                    continue
                bi, bj = pos[i], pos[j]
                if bi == bj:
                    continue
                if not upper or bi > bj:
                    return False
        return True

    def levi_elements(self, datum: BlockDatum):
        return [
            self.index[m] for m in self.elements if self._matches_blocks(m, datum, False)
        ]

    def parabolic_elements(self, datum: BlockDatum):
        return [
            self.index[m] for m in self.elements if self._matches_blocks(m, datum, True)
        ]

    def radical_elements(self, datum: BlockDatum):
        out = []
        n = self.n
        pos = datum.block_of()
        for m in self.elements:
            if not self._matches_blocks(m, datum, True):
                continue
            diag_ok = all(
                m[i * n + j] == (1 if i == j else 0)
                for i in range(n)
                for j in range(n)
                if pos[i] == pos[j]
            )
            if diag_ok:
                out.append(self.index[m])
        return out

    def levi_part(self, p: int, datum: BlockDatum) -> int:
        """The block-diagonal part of a parabolic element."""
        n = self.n
        pos = datum.block_of()
        m = self.elements[p]
        out = [0] * (n * n)
        for i in range(n):
            for j in range(n):
                if pos[i] == pos[j]:
                    out[i * n + j] = m[i * n + j]
        return self.index[tuple(out)]

    def _subgroup_data(self):
        n = self.n
        full = BlockDatum((tuple(range(n)),))
        torus = BlockDatum(tuple((i,) for i in range(n)))
        self.full_datum = full
        self.torus_datum = torus
        self.split_torus = self.levi_elements(torus)
        self.borel = self.parabolic_elements(torus)
        self.unipotent_upper = self.radical_elements(torus)
        # standard Levi data by ordered composition of n
        self.standard_levis: list[BlockDatum] = []
        for comp in _compositions(n):
            start = 0
            blocks = []
            for part in comp:
                blocks.append(tuple(range(start, start + part)))
                start += part
            self.standard_levis.append(BlockDatum(tuple(blocks)))
        self.weyl_perm_matrices = []
        for perm in permutations(range(n)):
            m = [0] * (n * n)
            for i, j in enumerate(perm):
                m[j * n + i] = 1
            self.weyl_perm_matrices.append(self.index[tuple(m)])
        self.nonsplit_tori = self._build_nonsplit_tori()

    def _build_nonsplit_tori(self):
        """Embedded extension-field tori, keyed by partition shape."""
        f, n, q = self.field, self.n, self.q
        out = {}
        if n == 2:
            out[(2,)] = self._extension_torus((0, 1))
        else:
            out[(3,)] = self._extension_torus((0, 1, 2))
            # F_{q^2}^* x F_q^* in the (0,1) block
            quad = self._extension_torus((0, 1))
            torus = []
            for t in quad:
                m = list(self.elements[t])
                for scale in range(1, q):
                    mm = list(m)
                    mm[2 * n + 2] = scale
                    torus.append(self.index[tuple(mm)])
            out[(2, 1)] = sorted(torus)
        return out

    def _extension_torus(self, coords):
        """Multiplication action of F_{q^k}^* on itself, in the given block."""
        f, n = self.field, self.n
        k = len(coords)
        mod = irreducible_over(f, k)
        elems = []
        for vec in product(range(f.q), repeat=k):
            if all(v == 0 for v in vec):
                continue
            # columns: vec * x^j reduced mod the irreducible
            m = [1 if i == j else 0 for i in range(n) for j in range(n)]
            col = list(vec)
            for j in range(k):
                for i in range(k):
                    m[coords[i] * n + coords[j]] = col[i]
                col = _shift_reduce(col, mod, f)
            elems.append(self.index[tuple(m)])
        return sorted(elems)

    # -- automorphism -----------------------------------------------------------

    def standard_twist(self):
        """g -> w0 (g^T)^{-1} w0^{-1}: stabilizes B and the split torus."""
        if "twist" in self._twist_cache:
            return self._twist_cache["twist"]
        n = self.n
        w0 = [0] * (n * n)
        for i in range(n):
            w0[i * n + (n - 1 - i)] = 1
        w0i = self.index[tuple(w0)]
        images = []
        for i in range(len(self.elements)):
            m = self.elements[i]
            mt = tuple(m[j * n + i2] for i2 in range(n) for j in range(n))
            mti = self._invert(mt)
            img = self.mat_mul(self.mat_mul(self.elements[w0i], mti), self.elements[w0i])
            images.append(self.index[img])
        twist = GroupAutomorphism(self, tuple(images))
        self._twist_cache["twist"] = twist
        return twist

    def generators(self):
        """A small generating set (transvections and a primitive diagonal)."""
        f, n = self.field, self.n
        gens = []
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                m = list(self._identity_tuple())
                m[i * n + j] = 1
                gens.append(self.index[tuple(m)])
        if f.q > 2:
            m = list(self._identity_tuple())
            m[0] = f.generator
            gens.append(self.index[tuple(m)])
        return gens

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class GroupAutomorphism:
    model: FiniteGroupModel
    images: tuple  # index permutation

    def __post_init__(self):
        model = self.model
        imgs = self.images
        if imgs == tuple(range(len(model))):
            return
        gens = model.generators()
        # multiplicativity on (generators x everything) propagates to all
        # pairs since the generators generate; small models get the full check
        pairs = (
            product(range(len(model)), repeat=2)
            if len(model) ** 2 <= 250_000
            else product(gens, range(len(model)))
        )
        for a, b in pairs:
            if imgs[model.mul(a, b)] != model.mul(imgs[a], imgs[b]):
                raise TwistDoesNotStabilize("not multiplicative")

    def __call__(self, i: int) -> int:
        return self.images[i]

    def inverse_of(self, i: int) -> int:
        if not hasattr(self, "_inv"):
            inv = [0] * len(self.images)
            for a, b in enumerate(self.images):
                inv[b] = a
            object.__setattr__(self, "_inv", tuple(inv))
        return self._inv[i]

    def stabilizes(self, element_set) -> bool:
        s = set(element_set)
        return all(self.images[x] in s for x in s)


def identity_twist(model: FiniteGroupModel) -> GroupAutomorphism:
    return GroupAutomorphism(model, tuple(range(len(model))))


def _compositions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def _shift_reduce(col, mod, f: GaloisField):
    """Multiply the coefficient vector by x modulo the monic `mod`."""
    k = len(col)
    lead = col[-1]
    out = [0] + col[:-1]
    if lead:
        for i in range(k):
            out[i] = f.sub(out[i], f.mul[lead][mod[i]])
    return out


def _solve_last_one(mat, f: GaloisField):
    """Solve mat * c = 0 with the last coordinate forced to 1, else None."""
    rows = [list(r) for r in mat]
    cols = len(rows[0])
    # move the last column to the right side: sum_{k<cols-1} c_k v_k = -v_last
    rhs = [f.neg[r[-1]] for r in rows]
    width = cols - 1
    aug = [r[:-1] + [rhs[i]] for i, r in enumerate(rows)]
    pivots = []
    r = 0
    for c in range(width):
        pr = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = f.inv[aug[r][c]]
        aug[r] = [f.mul[x][inv] for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [f.sub(x, f.mul[factor][y]) for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][-1] != 0:
            return None
    sol = [0] * width
    for k, c in enumerate(pivots):
        sol[c] = aug[k][-1]
    return sol + [1]

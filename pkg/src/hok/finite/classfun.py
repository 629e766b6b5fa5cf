"""Class functions, parabolic restriction/induction, cuspidal decomposition.

Functions live on an explicit domain (the whole group or a Levi subgroup) as
exact value lists.  Twisted variants take a group automorphism gamma; the
twisted conjugation action is g -> gamma^{-1}(x) g x^{-1} and twisted
induction from a gamma-stable parabolic P = MU is

    Ind(phi)(g) = 1/|P| * sum over h in G of phi(levi part of
                  gamma^{-1}(h) g h^{-1}) when that element lies in P.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import (
    DecompositionFailure,
    GroupMismatch,
    TwistDoesNotStabilize,
)
from ..linalg import as_cyclo, in_span, scalar_conj, scalar_is_zero
from .model import BlockDatum, FiniteGroupModel, GroupAutomorphism, identity_twist


@dataclass
class ClassFunction:
    model: FiniteGroupModel
    domain: tuple  # element indices, sorted
    values: list

    def __post_init__(self):
        if len(self.domain) != len(self.values):
            raise GroupMismatch("domain/value length mismatch")
        self._pos = {g: k for k, g in enumerate(self.domain)}

    def __call__(self, g: int):
        return self.values[self._pos[g]]

    def supports(self, g: int) -> bool:
        return g in self._pos

    def same_domain(self, other: "ClassFunction") -> bool:
        return self.model is other.model and self.domain == other.domain

    def __add__(self, other):
        if not self.same_domain(other):
            raise GroupMismatch("mismatched domains")
        return ClassFunction(
            self.model, self.domain, [a + b for a, b in zip(self.values, other.values)]
        )

    def __sub__(self, other):
        if not self.same_domain(other):
            raise GroupMismatch("mismatched domains")
        return ClassFunction(
            self.model, self.domain, [a - b for a, b in zip(self.values, other.values)]
        )

    def scale(self, c):
        return ClassFunction(self.model, self.domain, [c * v for v in self.values])

    def is_zero(self) -> bool:
        return all(scalar_is_zero(v) for v in self.values)


def constant_function(model, domain, value=Fraction(1)) -> ClassFunction:
    return ClassFunction(model, tuple(domain), [value] * len(domain))


def delta_function(model, domain, at: int) -> ClassFunction:
    return ClassFunction(
        model, tuple(domain), [Fraction(1 if g == at else 0) for g in domain]
    )


def inner_product(f: ClassFunction, g: ClassFunction):
    """<f, g> = 1/|domain| sum conj(f) g, exact."""
    if not f.same_domain(g):
        raise GroupMismatch("inner product needs a common domain")
    acc = as_cyclo(0)
    for a, b in zip(f.values, g.values):
        acc = acc + scalar_conj(a) * (b if not isinstance(b, int) else Fraction(b))
    result = acc * as_cyclo(Fraction(1, len(f.domain)))
    if result.is_rational():
        return result.to_fraction()
    return result


def twisted_class_average(model, f: ClassFunction, gamma: GroupAutomorphism) -> ClassFunction:
    """Projection onto gamma-twisted class functions: average of
    g -> f(gamma^{-1}(h) g h^{-1}) over h."""
    if f.domain != tuple(range(len(model))):
        raise GroupMismatch("class average needs a G-function")
    order = len(model)
    out = [Fraction(0)] * order
    for h in range(order):
        gh = gamma.inverse_of(h)
        hinv = model.inverse[h]
        for g in range(order):
            moved = model.mul(model.mul(gh, g), hinv)
            out[moved] = out[moved] + f.values[g]
    scale = Fraction(1, order)
    return ClassFunction(model, f.domain, [scale * v for v in out])


def twisted_orbits(model, gamma: GroupAutomorphism, domain=None, movers=None):
    """Orbits of g -> gamma^{-1}(x) g x^{-1}; movers default to model generators
    (their closure is the whole group, so orbits are complete)."""
    if domain is None:
        domain = tuple(range(len(model)))
    if movers is None:
        movers = model.generators()
    dom = set(domain)
    seen = set()
    orbits = []
    for start in domain:
        if start in seen:
            continue
        orbit = {start}
        queue = [start]
        while queue:
            cur = queue.pop()
            for s in movers:
                nxt = model.mul(model.mul(gamma.inverse_of(s), cur), model.inverse[s])
                if nxt not in orbit:
                    if nxt not in dom:
                        raise GroupMismatch("domain not stable under the action")
                    orbit.add(nxt)
                    queue.append(nxt)
        seen |= orbit
        orbits.append(tuple(sorted(orbit)))
    return orbits


def is_class_function(model, f: ClassFunction, gamma=None) -> bool:
    gamma = gamma or identity_twist(model)
    if gamma.images == tuple(range(len(model))) and f.domain == tuple(range(len(model))):
        return all(
            all(f.values[i] == f.values[rep] for i in members)
            for rep, members in model.class_members.items()
        )
    for orbit in twisted_orbits(model, gamma, f.domain, movers=None):
        base = f(orbit[0])
        if any(f(g) != base for g in orbit[1:]):
            return False
    return True


def parabolic_restriction(model, f: ClassFunction, datum: BlockDatum) -> ClassFunction:
    """r_P f: m -> sum over the radical U of f(m u) (plain sum)."""
    levi = tuple(model.levi_elements(datum))
    radical = model.radical_elements(datum)
    vals = []
    for m in levi:
        acc = Fraction(0)
        for u in radical:
            acc = acc + f(model.mul(m, u))
        vals.append(acc)
    return ClassFunction(model, levi, vals)


def hc_restriction(model, f: ClassFunction, datum: BlockDatum, ambient_datum=None) -> ClassFunction:
    """The radical-averaged restriction (1/|U|) sum_u f(mu).

    This is the two-sided adjoint of the induction used here: adjunction,
    the double-coset composition formula, and the cuspidal orthogonality
    relations hold exactly with this normalization, while the plain-sum
    variant differs by the factor |U|.
    """
    if ambient_datum is None:
        plain = parabolic_restriction(model, f, datum)
        count = len(model.radical_elements(datum))
    else:
        plain = _restriction_within(model, f, ambient_datum, datum)
        ambient_set = set(model.levi_elements(ambient_datum))
        count = sum(1 for u in model.radical_elements(datum) if u in ambient_set)
    scale = Fraction(1, count)
    return ClassFunction(model, plain.domain, [scale * v for v in plain.values])


class InductionOperator:
    """Cached linear map from functions on the Levi of `datum` up to an
    ambient block group (the whole model by default).  When an ambient datum
    is given, `datum` must refine its blocks; the parabolic in use is then
    the intersection with the ambient Levi."""

    def __init__(self, model, datum: BlockDatum, gamma=None, ambient_datum=None):
        gamma = gamma or identity_twist(model)
        self.model = model
        self.datum = datum
        self.gamma = gamma
        if ambient_datum is None:
            self.ambient = tuple(range(len(model)))
        else:
            outer = [set(b) for b in ambient_datum.blocks]
            if not all(
                any(set(b) <= big for big in outer) for b in datum.blocks
            ):
                raise GroupMismatch("induction datum must refine the ambient blocks")
            self.ambient = tuple(model.levi_elements(ambient_datum))
        ambient_set = set(self.ambient)
        levi = tuple(model.levi_elements(datum))
        par = {p for p in model.parabolic_elements(datum) if p in ambient_set}
        if gamma.images != tuple(range(len(model))):
            if not gamma.stabilizes(par) or not gamma.stabilizes(set(levi)):
                raise TwistDoesNotStabilize(
                    f"twist does not stabilize the parabolic {datum.blocks}"
                )
        self.levi = levi
        self.parabolic_order = len(par)
        pos = {m: k for k, m in enumerate(levi)}
        coeffs = []
        for g in self.ambient:
            row: dict[int, int] = {}
            for h in self.ambient:
                p = model.mul(model.mul(gamma.inverse_of(h), g), model.inverse[h])
                if p in par:
                    mpart = model.levi_part(p, datum)
                    row[pos[mpart]] = row.get(pos[mpart], 0) + 1
            coeffs.append(row)
        self.coeffs = coeffs

    def apply(self, phi: ClassFunction) -> ClassFunction:
        if phi.domain != self.levi:
            raise GroupMismatch("function not on the expected Levi")
        scale = Fraction(1, self.parabolic_order)
        vals = []
        for row in self.coeffs:
            acc = Fraction(0)
            for k, count in row.items():
                acc = acc + count * phi.values[k]
            vals.append(scale * acc)
        return ClassFunction(self.model, self.ambient, vals)


def twisted_induction(model, phi, datum: BlockDatum, gamma=None) -> ClassFunction:
    return InductionOperator(model, datum, gamma).apply(phi)


def proper_sub_levis(datum: BlockDatum):
    """Proper refinements of a block datum into ordered sub-blocks (each
    block split into an ordered composition of contiguous runs)."""
    def splits(block):
        if len(block) == 1:
            yield (block,)
            return
        for k in range(1, len(block) + 1):
            first, rest = block[:k], block[k:]
            if not rest:
                yield (first,)
                continue
            for tail in splits(rest):
                yield (first,) + tail

    def rec(blocks):
        if not blocks:
            yield ()
            return
        for head in splits(blocks[0]):
            for tail in rec(blocks[1:]):
                yield head + tail

    out = []
    for refined in rec(datum.blocks):
        if refined != datum.blocks:
            out.append(BlockDatum(refined))
    return out


def is_cuspidal(model, f: ClassFunction, gamma=None, ambient_datum=None) -> bool:
    """All proper parabolic restrictions vanish (gamma-stable ones when a
    nontrivial twist is given, which suffices)."""
    gamma = gamma or identity_twist(model)
    datum = ambient_datum or model.full_datum
    untwisted = gamma.images == tuple(range(len(model)))
    for sub in proper_sub_levis(datum):
        if not untwisted:
            par = model.parabolic_elements(sub)
            levi = model.levi_elements(sub)
            if not (gamma.stabilizes(set(par)) and gamma.stabilizes(set(levi))):
                continue
        restricted = _restriction_within(model, f, datum, sub)
        if not restricted.is_zero():
            return False
    return True


def _restriction_within(model, f: ClassFunction, ambient: BlockDatum, sub: BlockDatum):
    """r from the ambient block group down to a sub-Levi: sum over the part of
    the radical of `sub` lying inside the ambient group."""
    levi = tuple(model.levi_elements(sub))
    ambient_set = set(model.levi_elements(ambient))
    radical = [u for u in model.radical_elements(sub) if u in ambient_set]
    vals = []
    for m in levi:
        acc = Fraction(0)
        for u in radical:
            acc = acc + f(model.mul(m, u))
        vals.append(acc)
    return ClassFunction(model, levi, vals)


@dataclass
class LeviComponent:
    datum: BlockDatum
    function: ClassFunction  # cuspidal, twisted-normalizer invariant
    induced: ClassFunction


def twisted_normalizer(model, datum: BlockDatum, gamma=None):
    """{n : x -> gamma^{-1}(n) x n^{-1} preserves the block matrix algebra}.

    Working with the block algebra (spanned by the matrix units inside the
    blocks) rather than the finite point set keeps the normalizer correct at
    tiny q, where the Levi can have too few rational points to determine it
    (for q = 2 the split torus is trivial but its normalizer is still the
    monomial group).
    """
    gamma = gamma or identity_twist(model)
    n_dim = model.n
    pos = datum.block_of()
    units = [
        (i, j)
        for i in range(n_dim)
        for j in range(n_dim)
        if pos[i] == pos[j]
    ]

    def conj_unit(a_idx, b_idx, i, j):
        a = model.elements[a_idx]
        b = model.elements[b_idx]
        # rows of a * E_ij * b: (a e_i) (e_j^T b) = outer(column i of a, row j of b)
        col = [a[r * n_dim + i] for r in range(n_dim)]
        row = [b[j * n_dim + c] for c in range(n_dim)]
        f = model.field
        for r in range(n_dim):
            for c in range(n_dim):
                if pos[r] != pos[c] and f.mul[col[r]][row[c]] != 0:
                    return False
        return True

    out = []
    for x in range(len(model)):
        gx = gamma.inverse_of(x)
        xi = model.inverse[x]
        if all(conj_unit(gx, xi, i, j) for (i, j) in units):
            out.append(x)
    return out


def levi_class_representatives(model, gamma=None):
    """One standard Levi per conjugacy class (same multiset of block sizes),
    restricted to gamma-stable data when a twist is given."""
    gamma = gamma or identity_twist(model)
    untwisted = gamma.images == tuple(range(len(model)))
    seen = set()
    reps = []
    for datum in model.standard_levis:
        shape = datum.shape()
        if shape in seen:
            continue
        if not untwisted:
            par = model.parabolic_elements(datum)
            levi = model.levi_elements(datum)
            if not (gamma.stabilizes(set(par)) and gamma.stabilizes(set(levi))):
                continue
        seen.add(shape)
        reps.append(datum)
    return reps


def cuspidal_basis(model, datum: BlockDatum, gamma=None):
    """Basis of the normalizer-invariant gamma-cuspidal functions on the Levi."""
    gamma = gamma or identity_twist(model)
    levi = tuple(model.levi_elements(datum))
    norm = twisted_normalizer(model, datum, gamma)
    orbits = twisted_orbits(model, gamma, domain=levi, movers=norm)
    indicators = [
        ClassFunction(
            model, levi, [Fraction(1 if g in set(orbit) else 0) for g in levi]
        )
        for orbit in orbits
    ]
    # cuspidality is a linear condition: solve for combinations whose proper
    # restrictions vanish
    conditions = []
    for sub in proper_sub_levis(datum):
        untwisted = gamma.images == tuple(range(len(model)))
        if not untwisted:
            par = model.parabolic_elements(sub)
            sublevi = model.levi_elements(sub)
            if not (gamma.stabilizes(set(par)) and gamma.stabilizes(set(sublevi))):
                continue
        rows = [
            _restriction_within(model, ind, datum, sub).values for ind in indicators
        ]
        conditions.append(rows)
    if not conditions:
        return indicators
    # stack all conditions: find null combinations over Q
    width = sum(len(c[0]) for c in conditions)
    stacked = []
    for k in range(len(indicators)):
        row = []
        for c in conditions:
            row.extend(c[k])
        stacked.append(row)
    kernel = _rational_kernel(stacked)
    out = []
    for combo in kernel:
        vals = [Fraction(0)] * len(levi)
        for c, ind in zip(combo, indicators):
            if c:
                vals = [v + c * w for v, w in zip(vals, ind.values)]
        out.append(ClassFunction(model, levi, vals))
    return out


def _rational_kernel(rows):
    """Basis of { x : x^T rows = 0 } over Q, exact."""
    n = len(rows)
    if n == 0:
        return []
    width = len(rows[0])
    # Gauss on the transpose with identity tracking
    aug = [[Fraction(rows[i][j]) for i in range(n)] for j in range(width)]
    basis = [[Fraction(1 if i == k else 0) for i in range(n)] for k in range(n)]
    # eliminate columns of aug (each column indexes a candidate function)
    r = 0
    pivot_cols = []
    for c in range(n):
        pr = next((i for i in range(r, width) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        piv = aug[r][c]
        aug[r] = [x / piv for x in aug[r]]
        for i in range(width):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
    free_cols = [c for c in range(n) if c not in pivot_cols]
    out = []
    for fc in free_cols:
        combo = [Fraction(0)] * n
        combo[fc] = Fraction(1)
        for k, pc in enumerate(pivot_cols):
            combo[pc] = -aug[k][fc]
        out.append(combo)
    return out


def cuspidal_decomposition(model, f: ClassFunction, gamma=None):
    """Write f as a sum of twisted inductions of cuspidal components.

    Returns a list of LeviComponent; reconstruction is exact or
    DecompositionFailure is raised.
    """
    gamma = gamma or identity_twist(model)
    if not is_class_function(model, f, gamma):
        raise GroupMismatch("input is not invariant under (twisted) conjugation")
    reps = levi_class_representatives(model, gamma)
    columns = []
    tags = []
    for datum in reps:
        op = InductionOperator(model, datum, gamma)
        for b in cuspidal_basis(model, datum, gamma):
            columns.append(op.apply(b))
            tags.append((datum, b))
    coeffs = in_span([c.values for c in columns], f.values)
    if coeffs is None:
        raise DecompositionFailure("inductions of cuspidals do not span")
    by_datum: dict = {}
    for coeff, (datum, b) in zip(coeffs, tags):
        if scalar_is_zero(coeff):
            continue
        cur = by_datum.get(datum.blocks)
        part = b.scale(coeff)
        by_datum[datum.blocks] = part if cur is None else cur + part
    out = []
    recon = None
    for datum in reps:
        if datum.blocks not in by_datum:
            continue
        part = by_datum[datum.blocks]
        induced = InductionOperator(model, datum, gamma).apply(part)
        out.append(LeviComponent(datum, part, induced))
        recon = induced if recon is None else recon + induced
    if recon is None or any(a != b for a, b in zip(recon.values, f.values)):
        raise DecompositionFailure("reconstruction mismatch")
    return out

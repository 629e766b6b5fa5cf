"""Double-coset decomposition of restriction-after-induction.

For Levis M, M' of a GL_n model the composition Res_{M'} o Ind_M equals the
sum over double cosets W_{M'} \\ W / W_M of
Ind^{M'}_{M' n wMw^-1} o Ad(w) o Res^M_{M n w^-1M'w}, with Res the
radical-averaged restriction.  Inner operations run inside the ambient
Levis; parabolic choices do not matter by independence.
"""

from __future__ import annotations

from itertools import permutations

from .classfun import ClassFunction, InductionOperator, hc_restriction
from .model import BlockDatum, FiniteGroupModel


def _perm_preserves(perm, datum: BlockDatum) -> bool:
    return all(set(perm[c] for c in b) == set(b) for b in datum.blocks)


def _compose(p, q):
    """(p o q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def _inverse(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def double_coset_reps(n, left: BlockDatum, right: BlockDatum):
    """Minimal representatives of W_left \\ S_n / W_right."""
    perms = list(permutations(range(n)))
    w_left = [p for p in perms if _perm_preserves(p, left)]
    w_right = [p for p in perms if _perm_preserves(p, right)]
    seen = set()
    reps = []
    for w in perms:
        if w in seen:
            continue
        coset = {_compose(a, _compose(w, b)) for a in w_left for b in w_right}
        seen |= coset
        reps.append(min(coset))
    return reps


def conjugate_datum(datum: BlockDatum, perm) -> BlockDatum:
    """w M w^{-1} for the permutation w."""
    return BlockDatum(tuple(tuple(sorted(perm[c] for c in b)) for b in datum.blocks))


def intersect_data(a: BlockDatum, b: BlockDatum) -> BlockDatum:
    """Common refinement, blocks ordered by minimal coordinate."""
    blocks = []
    for x in a.blocks:
        for y in b.blocks:
            inter = tuple(sorted(set(x) & set(y)))
            if inter:
                blocks.append(inter)
    return BlockDatum(tuple(sorted(blocks)))


def ad_perm(model: FiniteGroupModel, perm, f: ClassFunction, out_domain) -> ClassFunction:
    """Ad(w) f : x -> f(w^{-1} x w), matrices of w built from the permutation."""
    n = model.n
    m = [0] * (n * n)
    for i, j in enumerate(perm):
        m[j * n + i] = 1
    w = model.index[tuple(m)]
    vals = [f(model.conj(w, x)) for x in out_domain]
    return ClassFunction(model, tuple(out_domain), vals)


def mackey_rhs(model, phi: ClassFunction, m_datum: BlockDatum, mp_datum: BlockDatum):
    """The double-coset side of the formula, as a function on the M' Levi."""
    n = model.n
    out_domain = tuple(model.levi_elements(mp_datum))
    total = ClassFunction(model, out_domain, [0] * len(out_domain))
    for w in double_coset_reps(n, mp_datum, m_datum):
        lower = intersect_data(m_datum, conjugate_datum(mp_datum, _inverse(w)))
        upper = intersect_data(mp_datum, conjugate_datum(m_datum, w))
        restricted = hc_restriction(model, phi, lower, ambient_datum=m_datum)
        moved = ad_perm(model, w, restricted, model.levi_elements(upper))
        induced = InductionOperator(model, upper, ambient_datum=mp_datum).apply(moved)
        total = total + induced
    return total

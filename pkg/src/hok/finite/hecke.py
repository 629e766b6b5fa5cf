"""Hecke-algebra restrictions of orbital sums and the span reports.

The Hecke algebra is the space of functions bi-invariant under the standard
Borel; its basis is indexed by Bruhat double cosets (one per Weyl
permutation).  An invariant functional is the restriction of a class-function
pairing f -> sum d(g) f(g); orbital sums 1_g are the special case where d is
|Z(g)| on the class of g.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..linalg import Matrix, in_span, mat_rank
from .classfun import (
    ClassFunction,
    _rational_kernel,
    parabolic_restriction,
    proper_sub_levis,
    twisted_class_average,
)
from .model import BlockDatum, FiniteGroupModel


def double_cosets(model: FiniteGroupModel):
    """Bruhat double cosets B w B in Weyl-permutation order."""
    borel = model.borel
    cosets = []
    seen = set()
    for w in model.weyl_perm_matrices:
        if w in seen:
            continue
        coset = set()
        for b1 in borel:
            b1w = model.mul(b1, w)
            for b2 in borel:
                coset.add(model.mul(b1w, b2))
        seen |= coset
        cosets.append(tuple(sorted(coset)))
    assert sum(len(c) for c in cosets) == len(model)
    return cosets


def coset_index_of(model, cosets):
    out = [0] * len(model)
    for k, coset in enumerate(cosets):
        for g in coset:
            out[g] = k
    return out


def hecke_restriction(model, weights: ClassFunction, cosets=None):
    """Evaluate the functional f -> sum_g weights(g) f(g) on the coset basis."""
    cosets = cosets if cosets is not None else double_cosets(model)
    return [sum(weights(g) for g in coset) for coset in cosets]


def orbital(model, g: int, f: ClassFunction):
    """1_g(f) = sum over h of f(h^{-1} g h), via the class of g."""
    rep = model.class_rep_of[g]
    zg = model.centralizer_order(g)
    return zg * sum(f(x) for x in model.class_members[rep])


def orbital_weights(model, g: int) -> ClassFunction:
    """The class function d with 1_g(f) = sum d(x) f(x)."""
    rep = model.class_rep_of[g]
    zg = Fraction(model.centralizer_order(g))
    members = set(model.class_members[rep])
    dom = tuple(range(len(model)))
    return ClassFunction(
        model, dom, [zg if x in members else Fraction(0) for x in dom]
    )


def orbital_hecke_vector(model, g: int, cosets=None):
    cosets = cosets if cosets is not None else double_cosets(model)
    rep = model.class_rep_of[g]
    zg = model.centralizer_order(g)
    members = set(model.class_members[rep])
    return [Fraction(zg * len(members & set(c))) for c in cosets]


def is_regular_semisimple(model, g: int) -> bool:
    """Separable characteristic polynomial (distinct eigenvalues over the
    algebraic closure)."""
    f = model.field
    cp = list(model._charpoly(model.elements[g]))
    dp = [_int_times(f, i + 1, cp[i + 1]) for i in range(len(cp) - 1)]
    return _poly_gcd_is_one(f, cp, dp)


def _int_times(f, k, c):
    acc = 0
    for _ in range(k):
        acc = f.add[acc][c]
    return acc


def _poly_gcd_is_one(f, a, b):
    a = _trim(a)
    b = _trim(b)
    while b:
        a, b = b, _poly_mod(f, a, b)
    return len(a) == 1


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(f, a, b):
    a = list(a)
    inv_lead = f.inv[b[-1]]
    while len(a) >= len(b):
        coeff = f.mul[a[-1]][inv_lead]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = f.sub(a[shift + i], f.mul[coeff][c])
        a = _trim(a)
        if not a:
            break
    return a


def tori(model: FiniteGroupModel):
    """Stored maximal tori: one per torus class, named by the field partition."""
    out = [("1" * model.n if False else "+".join(["1"] * model.n), model.split_torus)]
    names = {"+".join(["1"] * model.n)}
    for shape, elems in sorted(model.nonsplit_tori.items()):
        name = "+".join(str(x) for x in shape) + ("+1" * (model.n - sum(shape)))
        out.append((name, elems))
        names.add(name)
    return out


def invariant_functional_matrix(model, cosets=None):
    """Rows: conjugacy classes; columns: |class n BwB|."""
    cosets = cosets if cosets is not None else double_cosets(model)
    rows = []
    for rep in model.class_reps:
        members = set(model.class_members[rep])
        rows.append([Fraction(len(members & set(c))) for c in cosets])
    return Matrix.from_rows(rows)


@dataclass
class TorusClassReport:
    name: str
    regular_elements: int
    vector: list | None  # None marks a (C1) failure
    vectors_all_equal: bool


@dataclass
class SpanReport:
    cosets: int
    invariant_dim: int
    torus_reports: list
    torus_matrix_rank: int | None
    torus_basis: bool
    unipotent_types: list
    unipotent_rank: int
    unipotent_spans_invariants: bool
    rs_memberships: list  # (class rep, coefficients or None)
    all_rs_in_unipotent_span: bool
    hecke_dim: int
    hecke_cuspidal_dims: dict
    hecke_sum_spans: bool
    hecke_direct_mod_c0: bool


def unipotent_class_reps(model):
    one = model.identity
    out = []
    for rep in model.class_reps:
        cp = model._charpoly(model.elements[rep])
        # unipotent: charpoly = (x-1)^n
        if _is_unipotent_charpoly(model, cp):
            out.append(rep)
    return out


def _is_unipotent_charpoly(model, cp):
    f = model.field
    # expand (x-1)^n over F_q
    poly = [1]
    for _ in range(model.n):
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] = f.add[nxt[i + 1]][c]
            nxt[i] = f.sub(nxt[i], c)
        poly = nxt
    return tuple(poly) == tuple(cp)


def span_report(model: FiniteGroupModel) -> SpanReport:
    cosets = double_cosets(model)
    inv_matrix = invariant_functional_matrix(model, cosets)
    invariant_dim = mat_rank(inv_matrix)

    torus_reports = []
    torus_vectors = []
    for name, elems in tori(model):
        regs = [g for g in elems if is_regular_semisimple(model, g)]
        vectors = [orbital_hecke_vector(model, g, cosets) for g in regs]
        equal = all(v == vectors[0] for v in vectors) if vectors else True
        torus_reports.append(
            TorusClassReport(
                name=name,
                regular_elements=len(regs),
                vector=vectors[0] if vectors else None,
                vectors_all_equal=equal,
            )
        )
        if vectors:
            torus_vectors.append(vectors[0])
    if all(t.vector is not None for t in torus_reports):
        torus_matrix_rank = mat_rank(Matrix.from_rows(torus_vectors))
        torus_basis = (
            torus_matrix_rank == len(torus_reports) == invariant_dim
        )
    else:
        torus_matrix_rank = None
        torus_basis = False

    uni_reps = unipotent_class_reps(model)
    uni_vectors = [orbital_hecke_vector(model, g, cosets) for g in uni_reps]
    unipotent_rank = mat_rank(Matrix.from_rows(uni_vectors))
    rs_memberships = []
    ok_all = True
    for rep in model.class_reps:
        if not is_regular_semisimple(model, rep):
            continue
        v = orbital_hecke_vector(model, rep, cosets)
        coeffs = in_span(uni_vectors, v)
        rs_memberships.append((rep, coeffs))
        if coeffs is None:
            ok_all = False

    hecke = _hecke_cuspidal_audit(model, cosets)
    return SpanReport(
        cosets=len(cosets),
        invariant_dim=invariant_dim,
        torus_reports=torus_reports,
        torus_matrix_rank=torus_matrix_rank,
        torus_basis=torus_basis,
        unipotent_types=[model.class_key[r] for r in uni_reps],
        unipotent_rank=unipotent_rank,
        unipotent_spans_invariants=unipotent_rank == invariant_dim,
        rs_memberships=rs_memberships,
        all_rs_in_unipotent_span=ok_all,
        hecke_dim=len(cosets),
        hecke_cuspidal_dims=hecke["dims"],
        hecke_sum_spans=hecke["spans"],
        hecke_direct_mod_c0=hecke["direct"],
    )


def _levi_hecke_lifts(model, datum: BlockDatum):
    """Basis of H_M lifted to G-functions supported on the parabolic."""
    levi = model.levi_elements(datum)
    lset = set(levi)
    borel_m = [b for b in model.borel if b in lset]
    # double cosets of the Levi's Borel inside the Levi
    cosets = []
    seen = set()
    for m in levi:
        if m in seen:
            continue
        coset = set()
        for b1 in borel_m:
            b1m = model.mul(b1, m)
            for b2 in borel_m:
                coset.add(model.mul(b1m, b2))
        seen |= coset
        cosets.append(sorted(coset))
    par = model.parabolic_elements(datum)
    dom = tuple(range(len(model)))
    lifts = []
    for coset in cosets:
        cset = set(coset)
        vals = [Fraction(0)] * len(model)
        for p in par:
            if model.levi_part(p, datum) in cset:
                vals[p] = Fraction(1)
        lifts.append(ClassFunction(model, dom, vals))
    return lifts


def _hecke_cuspidal_audit(model, cosets):
    """Check H_G = sum over Levi classes of H_{M,cusp}, direct mod C0."""
    from .classfun import levi_class_representatives

    reps = levi_class_representatives(model)
    dom = tuple(range(len(model)))
    all_vectors = []
    averaged_by_levi = {}
    dims = {}
    for datum in reps:
        lifts = _levi_hecke_lifts(model, datum)
        averages = [twisted_class_average(model, l, _id(model)) for l in lifts]
        # cuspidality of the average: all proper restrictions vanish
        condition_rows = []
        for k, avg in enumerate(averages):
            row = []
            for sub in proper_sub_levis(model.full_datum):
                row.extend(parabolic_restriction(model, avg, sub).values)
            condition_rows.append(row)
        if condition_rows and condition_rows[0]:
            kernel = _rational_kernel(condition_rows)
        else:
            kernel = [
                [Fraction(1 if i == k else 0) for i in range(len(lifts))]
                for k in range(len(lifts))
            ]
        basis = []
        avg_basis = []
        for combo in kernel:
            vals = [Fraction(0)] * len(model)
            avals = [Fraction(0)] * len(model)
            for c, l, a in zip(combo, lifts, averages):
                if c:
                    vals = [v + c * w for v, w in zip(vals, l.values)]
                    avals = [v + c * w for v, w in zip(avals, a.values)]
            basis.append(vals)
            avg_basis.append(avals)
        dims[datum.blocks] = len(basis)
        all_vectors.extend(basis)
        averaged_by_levi[datum.blocks] = avg_basis
    # spanning: the lifted cuspidal parts must span H_G
    hecke_basis = []
    for coset in cosets:
        cset = set(coset)
        hecke_basis.append([Fraction(1 if g in cset else 0) for g in dom])
    spans = all(in_span(all_vectors, h) is not None for h in hecke_basis)
    # directness mod C0: class-averaged pieces must sum dimensions
    stacked = [v for vecs in averaged_by_levi.values() for v in vecs]
    total_rank = mat_rank(Matrix.from_rows(stacked)) if stacked else 0
    per_rank = sum(
        mat_rank(Matrix.from_rows(vecs)) if vecs else 0
        for vecs in averaged_by_levi.values()
    )
    return {"dims": dims, "spans": spans, "direct": total_rank == per_rank}


def _id(model):
    from .model import identity_twist

    return identity_twist(model)

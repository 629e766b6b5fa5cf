"""Regular-reduction thresholds.

For a classified type with marks c_i and a cocharacter image lattice L in Z^n,
the threshold is the minimum of sum(c_i * a_i) + 1 over lattice points with
all a_i >= 1.  `q_threshold_search` certifies the minimum by dynamic
programming over congruence residues; `q_threshold_closed` evaluates the
per-type case table.  The two must agree everywhere, which is one of the
acceptance checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceLimit
from .rootdata import (
    IsogenyLattice,
    RootDatum,
    RootSystemType,
    build_root_datum,
    coxeter_number,
    image_lattice,
    isogeny_labels,
)

SEARCH_RANK_GUARD = 12


@dataclass(frozen=True)
class ThresholdResult:
    type: RootSystemType
    label: str
    q_threshold: int
    witness: tuple


def q_threshold_search(t: RootSystemType, label: str) -> ThresholdResult:
    """Exact minimum of sum(c_i a_i) + 1 over lattice points with a_i >= 1.

    In an optimal point each a_i is below the lcm of the moduli of the
    congruences touching coordinate i (subtracting that lcm would preserve
    every congruence and lower the cost), so a per-coordinate residue DP over
    a_i in [1, m_i] is exhaustive.
    """
    if t.rank > SEARCH_RANK_GUARD:
        raise ResourceLimit(f"rank {t.rank} above search guard {SEARCH_RANK_GUARD}")
    datum = build_root_datum(t)
    lattice = image_lattice(t, label)
    c = datum.marks
    n = t.rank
    forms = list(lattice.congruences)
    moduli = [m for _, m in forms]

    def coord_bound(i: int) -> int:
        bound = 1
        for (coeffs, m) in forms:
            if coeffs[i] % m != 0:
                bound = bound * m // _gcd(bound, m)
        return bound

    bounds = [coord_bound(i) for i in range(n)]
    # DP state: residues of each congruence form so far.
    start = tuple(0 for _ in forms)
    best: dict[tuple, tuple[int, tuple]] = {start: (0, ())}
    for i in range(n):
        nxt: dict[tuple, tuple[int, tuple]] = {}
        for state, (cost, path) in best.items():
            for a in range(1, bounds[i] + 1):
                new_state = tuple(
                    (res + coeffs[i] * a) % m
                    for res, (coeffs, m) in zip(state, forms)
                )
                new_cost = cost + c[i] * a
                prev = nxt.get(new_state)
                if prev is None or new_cost < prev[0]:
                    nxt[new_state] = (new_cost, path + (a,))
        best = nxt
    target = tuple(0 for _ in forms)
    if target not in best:
        raise ResourceLimit("no lattice point with all coordinates >= 1 found")
    cost, witness = best[target]
    assert lattice.contains(witness) and all(a >= 1 for a in witness)
    return ThresholdResult(t, lattice.label, cost + 1, witness)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def q_threshold_closed(t: RootSystemType, label: str) -> int:
    """Case table for the threshold (see q_threshold_search for the search)."""
    lattice = image_lattice(t, label)
    fam, n = t.family, t.rank
    label = lattice.label
    if fam == "A":
        r = lattice.index
        if r % 2 == 1 or ((n + 1) // 2) % r == 0:
            return n + 1
        return n + 2
    if fam == "B":
        if label == "adjoint" or n % 4 in (0, 3):
            return 2 * n
        return 2 * n + 1
    if fam == "C":
        return 2 * n if label == "adjoint" else 2 * n + 1
    if fam == "D":
        if n % 2 == 1:
            if label == "simply_connected" and n % 4 == 3:
                return 2 * n - 1
            return 2 * n - 2
        if n % 4 == 0 or label in ("adjoint", "so"):
            return 2 * n - 2
        return 2 * n - 1
    if fam == "E6":
        return 12
    if fam == "E7":
        return 18 if label == "adjoint" else 19
    if fam == "E8":
        return 30
    if fam == "F4":
        return 12
    if fam == "G2":
        return 6
    raise ResourceLimit(f"no closed form for family {fam}")


@dataclass(frozen=True)
class ExistenceReport:
    type: RootSystemType
    label: str
    q: int
    q_threshold: int
    witness: tuple
    criterion_met: bool  # q - 1 >= q_threshold, the proof's sufficient bound
    h_plus_one_met: bool  # q >= h + 1, the final statement's bound
    coxeter: int


def regular_reduction_exists(t: RootSystemType, label: str, q: int) -> ExistenceReport:
    """Evaluate both regular-reduction bounds at a given prime power q.

    The two flags can disagree at q = h for adjoint groups; both are reported
    and neither is silently preferred.
    """
    res = q_threshold_search(t, label)
    h = coxeter_number(build_root_datum(t))
    return ExistenceReport(
        type=t,
        label=res.label,
        q=q,
        q_threshold=res.q_threshold,
        witness=res.witness,
        criterion_met=q - 1 >= res.q_threshold,
        h_plus_one_met=q >= h + 1,
        coxeter=h,
    )


def threshold_table(t: RootSystemType) -> dict[str, int]:
    """Closed-form thresholds for every isogeny label of the type."""
    return {label: q_threshold_closed(t, label) for label in isogeny_labels(t)}

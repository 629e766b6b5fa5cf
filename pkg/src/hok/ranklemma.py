"""Sign-matrix rank checks over constrained subset families.

Parameters (z, z', d, d') with d <= z, z - d = z' + d +- 1 and -z' <= d' <= z
define Z as the disjoint union of Z^* (size z, low bit positions) and Z_*
(size z'), and the subset families
    E = { M : |M n Z^*| = |M n Z_*| + d },
    F = { N : |N n Z^*| = |N n Z_*| + d' }.
The claim under test: the matrix ((-1)^{|N n M|}) with rows F and columns E
always has rank |F| (square and invertible when d = d').

`verify_rank` certifies this cheaply: the rank over a large prime field is a
lower bound for the rank over Q, and |F| is an upper bound, so a modular rank
of |F| is an exact proof.  If the modular rank falls short the claim is
re-decided by exact fraction-free elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .errors import InvalidParams, ResourceLimit
from .linalg import Matrix, mat_rank

SIZE_GUARD = 4096
_PRIME = 2147483629  # < 2^31, so pivot products stay inside int64


@dataclass(frozen=True)
class RankLemmaParams:
    z: int
    z_prime: int
    d: int
    d_prime: int

    def __post_init__(self):
        z, zp, d, dp = self.z, self.z_prime, self.d, self.d_prime
        if min(z, zp, d) < 0:
            raise InvalidParams("z, z', d must be non-negative")
        if d > z:
            raise InvalidParams(f"d={d} exceeds z={z}")
        if z - d not in (zp + d + 1, zp + d - 1):
            raise InvalidParams(f"z-d={z - d} must equal z'+d+-1={zp + d}+-1")
        if not (-zp <= dp <= z):
            raise InvalidParams(f"d'={dp} outside [-z'={-zp}, z={z}]")


def valid_params(bound: int):
    """All valid parameter tuples with z + z' <= bound."""
    out = []
    for z in range(0, bound + 1):
        for zp in range(0, bound + 1 - z):
            for d in range(0, z + 1):
                if z - d not in (zp + d + 1, zp + d - 1):
                    continue
                for dp in range(-zp, z + 1):
                    out.append(RankLemmaParams(z, zp, d, dp))
    return out


def ef_sets(p: RankLemmaParams):
    """The subset families (E, F) as sorted bitmask lists.

    Z^* occupies bits 0..z-1, Z_* bits z..z+z'-1.
    """
    z, zp = p.z, p.z_prime

    def build(offset):
        masks = []
        for i in range(0, zp + 1):
            j = i + offset
            if j < 0 or j > z:
                continue
            for high in combinations(range(z), j):
                high_mask = sum(1 << b for b in high)
                for low in combinations(range(z, z + zp), i):
                    masks.append(high_mask + sum(1 << b for b in low))
        return sorted(masks)

    return build(p.d), build(p.d_prime)


def ef_sizes(p: RankLemmaParams):
    e = sum(comb(p.z_prime, i) * comb(p.z, i + p.d) for i in range(p.z_prime + 1))
    f = sum(
        comb(p.z_prime, i) * comb(p.z, i + p.d_prime)
        for i in range(max(0, -p.d_prime), p.z_prime + 1)
    )
    return e, f


def sign_matrix(p: RankLemmaParams) -> Matrix:
    """Rows indexed by F, columns by E, entries (-1)^{|N n M|}."""
    e, f = ef_sets(p)
    if len(e) > SIZE_GUARD or len(f) > SIZE_GUARD:
        raise ResourceLimit(f"|E|={len(e)}, |F|={len(f)} above guard {SIZE_GUARD}")
    rows = [[-1 if (n & m).bit_count() % 2 else 1 for m in e] for n in f]
    return Matrix.from_rows(rows) if rows else Matrix(0, len(e), [])


def _sign_array(p: RankLemmaParams) -> np.ndarray:
    e, f = ef_sets(p)
    if len(e) > SIZE_GUARD or len(f) > SIZE_GUARD:
        raise ResourceLimit(f"|E|={len(e)}, |F|={len(f)} above guard {SIZE_GUARD}")
    out = np.empty((len(f), len(e)), dtype=np.int64)
    for i, n in enumerate(f):
        out[i] = [-1 if (n & m).bit_count() % 2 else 1 for m in e]
    return out


def _rank_mod_prime(a: np.ndarray, prime: int = _PRIME) -> int:
    m = np.mod(a, prime).astype(np.int64)
    rows, cols = m.shape
    rank = 0
    col = 0
    while rank < rows and col < cols:
        pivots = np.nonzero(m[rank:, col])[0]
        if pivots.size == 0:
            col += 1
            continue
        pr = rank + int(pivots[0])
        if pr != rank:
            m[[rank, pr]] = m[[pr, rank]]
        inv = pow(int(m[rank, col]), prime - 2, prime)
        m[rank] = (m[rank] * inv) % prime
        below = m[rank + 1 :, col].copy()
        nz = np.nonzero(below)[0]
        if nz.size:
            m[rank + 1 + nz] = (
                m[rank + 1 + nz] - below[nz, None] * m[rank][None, :]
            ) % prime
        rank += 1
        col += 1
    return rank


def verify_rank(p: RankLemmaParams) -> bool:
    """True iff the sign matrix has rank |F|.

    The modular rank is a certificate when it reaches |F|; otherwise the
    question is settled by exact elimination.
    """
    a = _sign_array(p)
    nf = a.shape[0]
    if nf == 0:
        return True
    if _rank_mod_prime(a) == nf:
        return True
    return mat_rank(sign_matrix(p)) == nf


def sweep(bound: int):
    """verify_rank over every valid tuple with z + z' <= bound."""
    results = []
    for p in valid_params(bound):
        e, f = ef_sizes(p)
        if max(e, f) > SIZE_GUARD:
            continue
        results.append((p, verify_rank(p)))
    return results


def binomial_identity_1(z_prime: int, d: int, d_prime: int, l: int) -> bool:
    """sum_j C(z',j) C(d, j+d'-l) == C(z'+d, l+d-d')."""
    lhs = sum(comb(z_prime, j) * comb(d, j + d_prime - l) for j in range(z_prime + 1)
              if 0 <= j + d_prime - l <= d)
    k = l + d - d_prime
    rhs = comb(z_prime + d, k) if 0 <= k <= z_prime + d else 0
    return lhs == rhs


def binomial_identity_2(z: int, k: int) -> bool:
    """sum_l (-1)^l C(z,l) C(z+1,l+k) == (-1)^e C(z,e), e = floor((z-k+1)/2)."""
    lhs = sum(
        (-1) ** l * comb(z, l) * comb(z + 1, l + k)
        for l in range(z + 1)
        if 0 <= l + k <= z + 1
    )
    e = (z - k + 1) // 2
    rhs = (-1) ** e * comb(z, e) if 0 <= e <= z else 0
    return lhs == rhs

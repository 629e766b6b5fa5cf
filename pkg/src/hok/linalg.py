"""Exact scalars and dense matrices over Q and small cyclotomic fields.

Rationals are `fractions.Fraction`; cyclotomic numbers live in Q(zeta_N) for N
dividing MAX_CONDUCTOR, stored in the power basis modulo the N-th cyclotomic
polynomial.  Rank and determinant use fraction-free (Bareiss) elimination, so
every intermediate value is exact.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd

from .errors import DimensionMismatch, NonSquare, ResourceLimit

Rational = Fraction

#: Largest supported cyclotomic conductor.  Conductors must divide this so the
#: family is closed under lcm when mixing values from different fields.
MAX_CONDUCTOR = 12


def euler_phi(n: int) -> int:
    count = 0
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            count += 1
    return count


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1) if p and q else []
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _poly_trim(out)


def _poly_divmod(p, q):
    """Exact division in Q[x]; q monic-led is not required."""
    p = list(p)
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    while len(p) >= len(q) and _poly_trim(p):
        shift = len(p) - len(q)
        c = p[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            p[shift + i] -= c * b
        _poly_trim(p)
    return _poly_trim(quot), p


_CYCLO_CACHE: dict[int, tuple[Fraction, ...]] = {}


def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n in _CYCLO_CACHE:
        return _CYCLO_CACHE[n]
    # x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    den = [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    quot, rem = _poly_divmod(num, den)
    assert not rem, "cyclotomic polynomial division must be exact"
    result = tuple(quot)
    _CYCLO_CACHE[n] = result
    return result


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational value: {x!r}")


class CycloNumber:
    """Element of Q(zeta_N) in the power basis mod Phi_N.

    Values with different conductors compare and combine through the lcm
    conductor.  Instances are immutable; arithmetic never rounds.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        if conductor < 1 or MAX_CONDUCTOR % conductor != 0:
            raise ResourceLimit(
                f"conductor {conductor} not supported (must divide {MAX_CONDUCTOR})"
            )
        phi = euler_phi(conductor)
        cs = [_as_fraction(c) for c in coeffs]
        if len(cs) > phi:
            cs = _reduce_mod_cyclo(cs, conductor)
        cs += [Fraction(0)] * (phi - len(cs))
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("CycloNumber is immutable")

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def from_rational(x) -> "CycloNumber":
        return CycloNumber(1, [_as_fraction(x)])

    @staticmethod
    def zeta(n: int, k: int = 1) -> "CycloNumber":
        """zeta_n^k."""
        k %= n
        mono = [Fraction(0)] * k + [Fraction(1)]
        return CycloNumber(n, mono)

    # -- structure -------------------------------------------------------------

    def lift(self, conductor: int) -> "CycloNumber":
        """Rewrite in Q(zeta_conductor); conductor must be a multiple of ours."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor != 0:
            raise DimensionMismatch("cannot lift to a non-multiple conductor")
        step = conductor // self.conductor
        out = [Fraction(0)] * (max(1, (len(self.coeffs) - 1) * step + 1))
        for i, c in enumerate(self.coeffs):
            out[i * step] += c
        return CycloNumber(conductor, out)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    # -- arithmetic -------------------------------------------------------------

    def _pair(self, other):
        other = as_cyclo(other)
        n = lcm(self.conductor, other.conductor)
        return self.lift(n), other.lift(n), n

    def __add__(self, other):
        a, b, n = self._pair(other)
        return CycloNumber(n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.conductor, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-as_cyclo(other))

    def __rsub__(self, other):
        return as_cyclo(other) + (-self)

    def __mul__(self, other):
        a, b, n = self._pair(other)
        prod = _poly_mul(list(a.coeffs), list(b.coeffs))
        return CycloNumber(n, prod)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if all(c == 0 for c in self.coeffs):
            raise ZeroDivisionError("cyclotomic zero has no inverse")
        phi = list(cyclotomic_polynomial(self.conductor))
        # Bezout: find u with u*self = 1 mod Phi_N.
        r0, r1 = phi, _poly_trim(list(self.coeffs))
        u0, u1 = [Fraction(0)], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            nu = [Fraction(0)] * max(len(u0), len(_poly_mul(q, u1)))
            qu1 = _poly_mul(q, u1)
            for i, c in enumerate(u0):
                nu[i] += c
            for i, c in enumerate(qu1):
                nu[i] -= c
            u0, u1 = u1, _poly_trim(nu)
        # r0 is the gcd, a nonzero constant since Phi_N is irreducible.
        assert len(r0) == 1 and r0[0] != 0
        inv = [c / r0[0] for c in u0]
        return CycloNumber(self.conductor, inv)

    def __truediv__(self, other):
        return self * as_cyclo(other).inverse()

    def __rtruediv__(self, other):
        return as_cyclo(other) * self.inverse()

    def conj(self) -> "CycloNumber":
        """Complex conjugation zeta_N -> zeta_N^(N-1)."""
        n = self.conductor
        out = [Fraction(0)]
        for i, c in enumerate(self.coeffs):
            if c:
                mono = [Fraction(0)] * ((i * (n - 1)) % n) + [c]
                red = _reduce_mod_cyclo(mono, n)
                out = [
                    x + y
                    for x, y in zip(
                        out + [Fraction(0)] * (len(red) - len(out)),
                        red + [Fraction(0)] * (len(out) - len(red)),
                    )
                ]
        return CycloNumber(n, out)

    # -- comparison --------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b, _ = self._pair(other)
        return a.coeffs == b.coeffs

    __hash__ = None  # cross-conductor equality makes hashing a trap

    def __bool__(self):
        return any(c != 0 for c in self.coeffs)

    def __repr__(self):
        return f"CycloNumber({self.conductor}, {[str(c) for c in self.coeffs]})"


def _reduce_mod_cyclo(coeffs, n):
    phi = list(cyclotomic_polynomial(n))
    _, rem = _poly_divmod(list(coeffs), phi)
    return rem


def as_cyclo(x) -> CycloNumber:
    if isinstance(x, CycloNumber):
        return x
    return CycloNumber.from_rational(x)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def scalar_conj(x):
    """Complex conjugation for the scalar types used in this package."""
    if isinstance(x, CycloNumber):
        return x.conj()
    return _as_fraction(x)


def scalar_is_zero(x) -> bool:
    if isinstance(x, CycloNumber):
        return not bool(x)
    return x == 0


class Matrix:
    """Dense exact matrix; entries are Fractions or CycloNumbers."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(
                f"matrix {rows}x{cols} needs {rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = [
            e if isinstance(e, CycloNumber) else _as_fraction(e) for e in entries
        ]

    @staticmethod
    def from_rows(rows) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows:
            return Matrix(0, 0, [])
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        return Matrix(len(rows), width, [x for r in rows for x in r])

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, [Fraction(int(i == j)) for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            [self[i, j] for j in range(self.cols) for i in range(self.rows)],
        )

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(a == b for a, b in zip(self.entries, other.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch("shape mismatch in product")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = Fraction(0)
                for k in range(self.cols):
                    acc = acc + self[i, k] * other[k, j]
                out.append(acc)
        return Matrix(self.rows, other.cols, out)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


def _bareiss(m: Matrix):
    """Fraction-free elimination.

    Returns (rank, det_like, swaps) where det_like is the determinant when the
    matrix is square and elimination ran to completion.
    """
    a = [list(m.row(i)) for i in range(m.rows)]
    nr, nc = m.rows, m.cols
    prev = Fraction(1)
    sign = 1
    r = 0
    c = 0
    while r < nr and c < nc:
        # pivot search over the remaining block
        pr, pc = -1, -1
        for i in range(r, nr):
            for j in range(c, nc):
                if not scalar_is_zero(a[i][j]):
                    pr, pc = i, j
                    break
            if pr >= 0:
                break
        if pr < 0:
            break
        if pr != r:
            a[r], a[pr] = a[pr], a[r]
            sign = -sign
        if pc != c:
            for row in a:
                row[c], row[pc] = row[pc], row[c]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, nr):
            head = a[i][c]
            for j in range(c + 1, nc):
                num = piv * a[i][j] - head * a[r][j]
                if isinstance(num, CycloNumber) or isinstance(prev, CycloNumber):
                    a[i][j] = num / prev
                else:
                    a[i][j] = num / prev  # exact over a field
            a[i][c] = Fraction(0)
        prev = piv
        r += 1
        c += 1
    rank = r
    return rank, prev, sign


def mat_rank(m: Matrix) -> int:
    """Exact rank over Q (or the cyclotomic field)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    rank, _, _ = _bareiss(m)
    return rank


def mat_det(m: Matrix):
    """Exact determinant; raises NonSquare off the diagonal case."""
    if m.rows != m.cols:
        raise NonSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return Fraction(1)
    rank, last_pivot, sign = _bareiss(m)
    if rank < m.rows:
        return Fraction(0)
    det = last_pivot if sign == 1 else -last_pivot
    if isinstance(det, CycloNumber) and det.is_rational():
        return det.to_fraction()
    return det


def in_span(vectors, target):
    """Exact coefficients lambda with sum(lambda_i * v_i) == target, or None.

    `vectors` is a list of equal-length rows; any valid witness is returned.
    """
    vectors = [list(v) for v in vectors]
    target = list(target)
    width = len(target)
    if any(len(v) != width for v in vectors):
        raise DimensionMismatch("rows of unequal length")
    n = len(vectors)
    # Solve V^T x = t by Gauss elimination with the coefficient columns tracked.
    # Augmented system: columns are the vectors, right side the target.
    rows = [[vectors[j][i] for j in range(n)] + [target[i]] for i in range(width)]
    pivots = []
    r = 0
    for c in range(n):
        pr = next(
            (i for i in range(r, width) if not scalar_is_zero(rows[i][c])), None
        )
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(width):
            if i != r and not scalar_is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, width):
        if not scalar_is_zero(rows[i][-1]):
            return None
    coeffs = [Fraction(0)] * n
    for k, c in enumerate(pivots):
        coeffs[c] = rows[k][-1]
    return coeffs


# -- interchange ----------------------------------------------------------------


def _cell_to_str(x) -> str:
    if isinstance(x, CycloNumber):
        if x.is_rational():
            x = x.to_fraction()
        else:
            return f"{x.conductor}:" + ",".join(str(c) for c in x.coeffs)
    x = _as_fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _cell_from_str(s: str):
    if ":" in s:
        head, tail = s.split(":", 1)
        return CycloNumber(int(head), [Fraction(c) for c in tail.split(",")])
    return Fraction(s)


def matrix_to_json(m: Matrix) -> str:
    return json.dumps([[_cell_to_str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)])


def matrix_from_json(text: str) -> Matrix:
    data = json.loads(text)
    return Matrix.from_rows([[_cell_from_str(c) for c in row] for row in data])


def matrix_to_csv(m: Matrix) -> str:
    return "\n".join(
        ",".join(_cell_to_str(m[i, j]) for j in range(m.cols)) for i in range(m.rows)
    )

"""Small finite fields with table-driven arithmetic.

Elements are integers 0..q-1; for prime powers the integer's base-p digits
are the coefficients of a polynomial modulo a fixed irreducible.  A generator
of the multiplicative group is located and verified at construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ResourceLimit

MAX_Q = 9


def _prime_power(q: int):
    for p in (2, 3, 5, 7):
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m == 1:
                return p, k
    raise ResourceLimit(f"{q} is not a small prime power")


def _poly_mul_mod(a, b, p, modulus):
    """Multiply digit lists mod p and reduce by the monic `modulus`."""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    deg = len(modulus) - 1
    while len(out) > deg:
        lead = out.pop()
        if lead:
            for i in range(deg):
                out[-deg + i] = (out[-deg + i] - lead * modulus[i]) % p
    while len(out) < deg:
        out.append(0)
    return out


def _digits(x, p, k):
    out = []
    for _ in range(k):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds, p):
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


def irreducible_poly(p: int, k: int):
    """A monic irreducible of degree k over the prime field F_p (k <= 3, so
    having no roots suffices).  Low-to-high coefficients, leading 1 included."""
    assert k in (2, 3)
    for tail in range(p**k):
        coeffs = _digits(tail, p, k) + [1]
        has_root = any(
            sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0
            for x in range(p)
        )
        if not has_root:
            return coeffs
    raise AssertionError("no irreducible polynomial found")


def irreducible_over(field: "GaloisField", k: int):
    """A monic irreducible of degree k in F_q[x] for k in {2, 3}, found by
    scanning for polynomials without roots in F_q."""
    assert k in (2, 3)
    q = field.q

    def value(coeffs, x):
        acc = 0
        power = 1
        for c in coeffs:
            acc = field.add[acc][field.mul[c][power]]
            power = field.mul[power][x]
        return acc

    for tail in range(q**k):
        coeffs = _digits(tail, q, k) + [1]
        if all(value(coeffs, x) != 0 for x in range(q)):
            return coeffs
    raise AssertionError("no irreducible polynomial found")


@dataclass
class GaloisField:
    q: int
    p: int = field(init=False)
    k: int = field(init=False)

    def __post_init__(self):
        if self.q > MAX_Q:
            raise ResourceLimit(f"q={self.q} above guard {MAX_Q}")
        self.p, self.k = _prime_power(self.q)
        q, p, k = self.q, self.p, self.k
        if k == 1:
            self.add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            mod = irreducible_poly(p, k)
            self.modulus = mod
            self.add = [
                [
                    _undigits(
                        [(x + y) % p for x, y in zip(_digits(a, p, k), _digits(b, p, k))],
                        p,
                    )
                    for b in range(q)
                ]
                for a in range(q)
            ]
            self.mul = [
                [
                    _undigits(_poly_mul_mod(_digits(a, p, k), _digits(b, p, k), p, mod), p)
                    for b in range(q)
                ]
                for a in range(q)
            ]
        self.neg = [next(b for b in range(q) if self.add[a][b] == 0) for a in range(q)]
        self.inv = [0] + [
            next(b for b in range(1, q) if self.mul[a][b] == 1) for a in range(1, q)
        ]
        self.generator = self._find_generator()

    def _find_generator(self) -> int:
        target = self.q - 1
        for g in range(1, self.q):
            order = 1
            x = g
            while x != 1:
                x = self.mul[x][g]
                order += 1
            if order == target:
                return g
        raise AssertionError("multiplicative group must be cyclic")

    def sub(self, a, b):
        return self.add[a][self.neg[b]]

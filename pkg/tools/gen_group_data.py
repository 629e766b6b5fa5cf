#!/usr/bin/env python3
"""Generate the bundled centralizer character-table data for S3 and S4.

Run from the repo root:  python3 tools/gen_group_data.py
Writes src/hok/data/s3.json and s4.json.  Values are [conductor, coeffs]
pairs in the power basis of Q(zeta_N).  The package loader re-validates
orthogonality, so this script is only a convenience for regenerating the
files.
"""

import json
import sys
from fractions import Fraction
from itertools import permutations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hok.linalg import CycloNumber, as_cyclo  # noqa: E402


def perm_mul(p, q):
    """(p*q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def perm_inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def cycle_type(p):
    n = len(p)
    seen = [False] * n
    lens = []
    for i in range(n):
        if seen[i]:
            continue
        l = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            l += 1
        lens.append(l)
    return tuple(sorted(lens, reverse=True))


def elements_of_sym(n):
    return sorted(permutations(range(n)))


def conj_classes(elems):
    index = {e: i for i, e in enumerate(elems)}
    seen = set()
    reps = []
    for e in elems:
        if index[e] in seen:
            continue
        orbit = {index[perm_mul(perm_mul(g, e), perm_inv(g))] for g in elems}
        seen |= orbit
        reps.append(e)
    return reps


def centralizer(elems, x):
    return [g for g in elems if perm_mul(g, x) == perm_mul(x, g)]


def value_encode(v: CycloNumber):
    return [v.conductor, [str(c) for c in v.coeffs]]


def rat(x):
    return as_cyclo(Fraction(x))


def sym_characters(n):
    """Characters of S_n (n = 3, 4) by cycle type."""
    if n == 3:
        table = {
            "triv": {(1, 1, 1): 1, (2, 1): 1, (3,): 1},
            "sgn": {(1, 1, 1): 1, (2, 1): -1, (3,): 1},
            "std2": {(1, 1, 1): 2, (2, 1): 0, (3,): -1},
        }
    else:
        table = {
            "triv": {(1, 1, 1, 1): 1, (2, 1, 1): 1, (2, 2): 1, (3, 1): 1, (4,): 1},
            "sgn": {(1, 1, 1, 1): 1, (2, 1, 1): -1, (2, 2): 1, (3, 1): 1, (4,): -1},
            "deg2": {(1, 1, 1, 1): 2, (2, 1, 1): 0, (2, 2): 2, (3, 1): -1, (4,): 0},
            "std3": {(1, 1, 1, 1): 3, (2, 1, 1): 1, (2, 2): -1, (3, 1): 0, (4,): -1},
            "std3s": {(1, 1, 1, 1): 3, (2, 1, 1): -1, (2, 2): -1, (3, 1): 0, (4,): 1},
        }
    return table


def char_values_for_centralizer(cent, n):
    """Per-element character values for the centralizer subgroup."""
    size = len(cent)
    e = tuple(range(n))
    if size in (6, 24):  # the full S3 or S4 (only the identity's centralizer)
        table = sym_characters(3 if size == 6 else 4)
        return [
            [value_encode(rat(table[name][cycle_type(g)])) for g in cent]
            for name in table
        ]
    # cyclic case: generated by one element
    for g in cent:
        pows = {g}
        cur = g
        while cur != e:
            cur = perm_mul(cur, g)
            pows.add(cur)
        if len(pows) == size:
            order = size
            gen = g
            # log table
            logs = {}
            cur = e
            for k in range(order):
                logs[cur] = k
                cur = perm_mul(gen, cur)
            chars = []
            for j in range(order):
                vals = []
                for h in cent:
                    k = logs[h]
                    vals.append(value_encode(CycloNumber.zeta(order, (j * k) % order)))
                chars.append(vals)
            return chars
    if size == 4:  # Klein four group
        gens = [g for g in cent if g != e]
        a, b = gens[0], gens[1]
        chars = []
        for sa in (1, -1):
            for sb in (1, -1):
                vals = []
                for h in cent:
                    s = 1
                    if h == a:
                        s = sa
                    elif h == b:
                        s = sb
                    elif h != e:
                        s = sa * sb
                    vals.append(value_encode(rat(s)))
                chars.append(vals)
        return chars
    if size == 8:  # dihedral centralizer of a (2,2)-element in S4
        # find a rotation of order 4
        r = next(g for g in cent if cycle_type(g) == (4,))
        r2 = perm_mul(r, r)
        r3 = perm_mul(r2, r)
        rot = {e: 0, r: 1, r2: 2, r3: 3}
        s = next(g for g in cent if g not in rot)
        chars = []
        for cr in (1, -1):
            for cs in (1, -1):
                vals = []
                for h in cent:
                    if h in rot:
                        v = cr ** rot[h]
                    else:
                        # h = r^k s for some k
                        k = rot[perm_mul(h, perm_inv(s))]
                        v = (cr**k) * cs
                    vals.append(value_encode(rat(v)))
                chars.append(vals)
        two = []
        for h in cent:
            if h in rot:
                two.append(value_encode(rat([2, 0, -2, 0][rot[h]])))
            else:
                two.append(value_encode(rat(0)))
        chars.append(two)
        return chars
    raise AssertionError(f"unhandled centralizer of order {size}")


def build(n):
    elems = elements_of_sym(n)
    index = {e: i for i, e in enumerate(elems)}
    reps = conj_classes(elems)
    data = {
        "version": 1,
        "name": f"S{n}",
        "degree": n,
        "elements": [list(e) for e in elems],
        "class_representatives": [index[r] for r in reps],
        "centralizers": [],
    }
    for r in reps:
        cent = centralizer(elems, r)
        chars = char_values_for_centralizer(cent, n)
        data["centralizers"].append(
            {
                "rep": index[r],
                "elements": [index[c] for c in cent],
                "characters": chars,
            }
        )
    return data


def main():
    out_dir = Path(__file__).resolve().parent.parent / "src" / "hok" / "data"
    out_dir.mkdir(parents=True, exist_ok=True)
    for n in (3, 4):
        data = build(n)
        path = out_dir / f"s{n}.json"
        path.write_text(json.dumps(data, indent=1), encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()

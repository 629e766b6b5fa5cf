"""Two-row symbol combinatorics for the classical series.

A symbol is a pair of strictly increasing rows of non-negative integers whose
first entries are not both 0, with a series-specific defect condition and
rank = sum(entries) - floor(((a+b-1)/2)^2).  Symbols sharing an entry multiset
form a family; a family carries the set Z of entries occurring once, its split
Z = Z^* u Z_* (even- and odd-indexed elements of sorted Z), and the encoding
M -> M# = M symmetric-difference Z_*.

Row conventions for reading off M:
  BC: top row when the defect is 3 mod 4, bottom row otherwise.
  D:  rows unordered, so M is only defined up to complement; the canonical
      representative of {M#, Z - M#} avoids min(Z_*).
  2D: bottom row.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotAMember, ResourceLimit, SeriesMismatch

SERIES = ("BC", "D", "2D")
RANK_GUARD = 30


@dataclass(frozen=True)
class Symbol:
    top: tuple
    bottom: tuple
    series: str
    disambiguator: int | None = None

    @property
    def defect(self) -> int:
        return len(self.top) - len(self.bottom)

    @property
    def rank(self) -> int:
        a, b = len(self.top), len(self.bottom)
        return sum(self.top) + sum(self.bottom) - ((a + b - 1) ** 2) // 4

    @property
    def entries(self) -> tuple:
        return tuple(sorted(self.top + self.bottom))

    def is_degenerate(self) -> bool:
        return self.series == "D" and self.top == self.bottom

    def __str__(self):
        tag = "" if self.disambiguator is None else f"[{self.disambiguator}]"
        top = ",".join(map(str, self.top))
        bot = ",".join(map(str, self.bottom))
        return f"({top};{bot}){tag}"


def make_symbol(series, top, bottom, disambiguator=None) -> Symbol:
    top, bottom = tuple(top), tuple(bottom)
    if series not in SERIES:
        raise SeriesMismatch(f"unknown series {series!r}")
    if series == "D" and (len(top), top) < (len(bottom), bottom):
        top, bottom = bottom, top  # rows are unordered; fix one orientation
    for row in (top, bottom):
        if any(x < 0 for x in row) or any(x >= y for x, y in zip(row, row[1:])):
            raise SeriesMismatch(f"rows must strictly increase: {row}")
    if top and bottom and top[0] == 0 and bottom[0] == 0:
        raise SeriesMismatch("rows cannot both start at 0")
    s = Symbol(top, bottom, series, disambiguator)
    d = s.defect
    ok = {
        "BC": d > 0 and d % 2 == 1,
        "D": d >= 0 and d % 4 == 0,
        "2D": d > 0 and d % 4 == 2,
    }[series]
    if not ok:
        raise SeriesMismatch(f"defect {d} not allowed in series {series}")
    if series == "D" and (disambiguator is not None) != (top == bottom):
        raise SeriesMismatch("disambiguator exactly for degenerate D symbols")
    return s


def principal_series(s: Symbol) -> bool:
    return s.defect == {"BC": 1, "D": 0, "2D": 2}[s.series]


def _strict_rows(length, total, minimum=0):
    """Strictly increasing tuples of the given length and sum."""
    if length == 0:
        if total == 0:
            yield ()
        return
    first = minimum
    while True:
        rest = total - first
        tail_min = (length - 1) * first + length * (length - 1) // 2
        if rest < tail_min:
            return
        for tail in _strict_rows(length - 1, rest, first + 1):
            yield (first,) + tail
        first += 1


def _min_rank(series, d, b) -> int:
    """Smallest rank of a normalized symbol with defect d and bottom length b."""
    a = b + d
    base = a * (a - 1) // 2 + b * (b - 1) // 2
    if b > 0:
        base += min(a, b)  # one row must start at >= 1
    return base - ((a + b - 1) ** 2) // 4


def enumerate_symbols(series: str, n: int) -> list[Symbol]:
    """All symbols of the series with rank n, deterministically ordered.

    Degenerate D symbols are emitted twice with disambiguator 0 and 1.
    """
    if series not in SERIES:
        raise SeriesMismatch(f"unknown series {series!r}")
    if n > RANK_GUARD:
        raise ResourceLimit(f"rank {n} above guard {RANK_GUARD}")
    if n < {"BC": 1, "D": 2, "2D": 2}[series]:
        raise ResourceLimit(f"series {series} needs a larger rank than {n}")
    start, step = {"BC": (1, 2), "D": (0, 4), "2D": (2, 4)}[series]
    out = []
    d = start
    while _min_rank(series, d, 0) <= n:
        b = 0
        while _min_rank(series, d, b) <= n:
            a = b + d
            target = n + ((a + b - 1) ** 2) // 4
            for total_top in range(target + 1):
                for top in _strict_rows(a, total_top):
                    for bottom in _strict_rows(b, target - total_top):
                        if top and bottom and top[0] == 0 and bottom[0] == 0:
                            continue
                        if series == "D":
                            if (len(top), top) < (len(bottom), bottom):
                                continue
                            if top == bottom:
                                out.append(Symbol(top, bottom, "D", 0))
                                out.append(Symbol(top, bottom, "D", 1))
                                continue
                        out.append(Symbol(top, bottom, series))
            b += 1
        d += step
    out.sort(key=lambda s: (s.defect, s.top, s.bottom, s.disambiguator or 0))
    return out


@dataclass(frozen=True)
class Family:
    series: str
    rank: int
    members: tuple
    multiset: tuple
    z_singletons: tuple  # Z: sorted entries occurring exactly once
    z_star_low: frozenset  # Z_*: odd-indexed elements of sorted Z
    z_star_high: frozenset  # Z^*: even-indexed elements

    @property
    def z(self) -> int:
        if self.series == "BC":
            return (len(self.z_singletons) - 1) // 2
        return len(self.z_singletons) // 2

    def is_degenerate(self) -> bool:
        return len(self.members) == 1 and self.members[0].is_degenerate()

    def special_symbol(self) -> Symbol:
        """The unique interleaved member of minimal defect (BC: defect 1)."""
        wanted = {"BC": 1, "D": 0, "2D": 2}[self.series]
        hits = [
            m for m in self.members if m.defect == wanted and _interleaved(m)
        ]
        assert len(hits) == 1, f"family must have one special member, got {hits}"
        return hits[0]


def _chain(top, bottom) -> bool:
    return all(
        top[i] <= bottom[i] and (i + 1 >= len(top) or bottom[i] <= top[i + 1])
        for i in range(len(bottom))
    )


def _interleaved(s: Symbol) -> bool:
    """Chain condition lambda_1 <= mu_1 <= lambda_2 <= ...; for the unordered
    D series either orientation counts."""
    if _chain(s.top, s.bottom):
        return True
    return s.series == "D" and len(s.top) == len(s.bottom) and _chain(s.bottom, s.top)


def families(symbols) -> list[Family]:
    """Partition symbols (same series and rank) into families."""
    if not symbols:
        return []
    series = symbols[0].series
    rank = symbols[0].rank
    if any(s.series != series or s.rank != rank for s in symbols):
        raise SeriesMismatch("families need symbols of one series and rank")
    buckets: dict = {}
    for s in symbols:
        key = (s.entries, s.disambiguator if s.is_degenerate() else None)
        buckets.setdefault(key, []).append(s)
    out = []
    for (multiset, _), members in sorted(buckets.items()):
        counts = {x: multiset.count(x) for x in set(multiset)}
        z = tuple(sorted(x for x, c in counts.items() if c == 1))
        z_star = frozenset(z[i] for i in range(1, len(z), 2))
        z_high = frozenset(z[i] for i in range(0, len(z), 2))
        out.append(
            Family(
                series=series,
                rank=rank,
                members=tuple(members),
                multiset=multiset,
                z_singletons=z,
                z_star_low=z_star,
                z_star_high=z_high,
            )
        )
    return out


def row_subset(f: Family, s: Symbol):
    """Z-elements on the designated row of s (a pair of subsets for D)."""
    zset = set(f.z_singletons)
    top = frozenset(x for x in s.top if x in zset)
    bottom = frozenset(x for x in s.bottom if x in zset)
    if s.series == "BC":
        return top if s.defect % 4 == 3 else bottom
    if s.series == "2D":
        return bottom
    return frozenset({top, bottom})  # D: unordered pair


def subset_encoding(f: Family, s: Symbol) -> frozenset:
    """M# = M symmetric-difference Z_* (canonical representative for D)."""
    if s not in f.members:
        raise NotAMember(f"{s} not in family {f.multiset}")
    m = row_subset(f, s)
    if s.series == "D":
        pair = {part ^ f.z_star_low for part in m}
        if len(f.z_singletons) == 0:
            return frozenset()
        anchor = min(f.z_star_low)
        picked = [p for p in pair if anchor not in p]
        assert len(picked) == 1
        return frozenset(picked[0])
    return frozenset(m ^ f.z_star_low)


def decode_subset(f: Family, m_sharp) -> frozenset:
    """Round trip: recover M = (M# u Z_*) - (M# n Z_*)."""
    return frozenset(frozenset(m_sharp) ^ f.z_star_low)


def balanced(f: Family, m_sharp) -> bool:
    """Whether M# meets Z_* and Z^* in the same cardinality."""
    m = frozenset(m_sharp)
    return len(m & f.z_star_low) == len(m & f.z_star_high)

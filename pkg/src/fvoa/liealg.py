"""Semisimple Lie types: parsing, dimension and root tables, and the
dimension bookkeeping used when identifying weight-one Lie algebras."""

from __future__ import annotations

import re
from dataclasses import dataclass

_TOKEN = re.compile(
    r"""
    ([A-G])                      # family
    _?(?:\{(\d+)(?:,(\d+))?\}|(\d+))   # rank, optionally braced with a level
    (?:\^\{?(\d+)\}?)?           # multiplicity
    """,
    re.VERBOSE,
)

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_EXCEPTIONAL = {("E", 6): 78, ("E", 7): 133, ("E", 8): 248, ("F", 4): 52, ("G", 2): 14}


@dataclass(frozen=True)
class Factor:
    family: str
    rank: int
    mult: int = 1
    level: int | None = None

    def __post_init__(self):
        if self.family in _MIN_RANK:
            ok = self.rank >= _MIN_RANK[self.family]
        else:
            ok = (self.family, self.rank) in _EXCEPTIONAL
        if not ok or self.mult < 1:
            raise ValueError(f"invalid simple type {self.family}{self.rank}")

    @property
    def simple_dim(self) -> int:
        n = self.rank
        if self.family == "A":
            return n * n + 2 * n
        if self.family in "BC":
            return 2 * n * n + n
        if self.family == "D":
            return 2 * n * n - n
        return _EXCEPTIONAL[(self.family, n)]

    @property
    def simple_roots_count(self) -> int:
        return self.simple_dim - self.rank

    def as_tuple(self):
        return (self.family, self.rank, self.mult)


@dataclass(frozen=True)
class LieType:
    """A semisimple type; rank conventions: B, C from rank 2 and D from rank 3
    so that every type has a unique name."""

    factors: tuple[Factor, ...]

    @property
    def dim(self) -> int:
        return sum(f.mult * f.simple_dim for f in self.factors)

    @property
    def rank(self) -> int:
        return sum(f.mult * f.rank for f in self.factors)

    @property
    def roots(self) -> int:
        return self.dim - self.rank

    def ideal_dims(self) -> set[int]:
        """Dimensions of all ideals (sums over sub-multisets of simple factors)."""
        dims = {0}
        for f in self.factors:
            for _ in range(f.mult):
                dims |= {d + f.simple_dim for d in dims}
        return dims

    def __add__(self, other: "LieType") -> "LieType":
        return LieType(self.factors + other.factors)

    def __str__(self):
        return "".join(f"{f.family}{f.rank}" + (f"^{f.mult}" if f.mult > 1 else "") for f in self.factors)


def parse_type(s: str) -> LieType:
    """Parse strings such as 'C8F4^2', 'A_{7}C_{3}^2A_{3}' or 'C_{8,1}'.
    A level after a comma is accepted and dropped."""
    text = s.replace(" ", "").replace("\\g(", "").rstrip(")")
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"malformed Lie type {s!r} at position {pos}")
        fam = m.group(1)
        rank = int(m.group(2) or m.group(4))
        level = int(m.group(3)) if m.group(3) else None
        mult = int(m.group(5)) if m.group(5) else 1
        out.append(Factor(fam, rank, mult, level))
        pos = m.end()
    if not out:
        raise ValueError("empty Lie type")
    return LieType(tuple(out))


def dim_of(t) -> int:
    if isinstance(t, str):
        t = parse_type(t)
    return t.dim


# ---------------------------------------------------------------------------
# bookkeeping reports


@dataclass
class DimCheck:
    id: str
    anchor: str
    computed: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.computed == self.expected


def _roots_of(s: str) -> int:
    return parse_type(s).roots


def paper_dim_checks() -> list[DimCheck]:
    A7D5 = parse_type("A7^2D5^2")
    D9A7 = parse_type("D9A7")
    rows = [
        ("lie.dim.C8F4^2", "weight-one algebra of the first exceptional case", dim_of("C_{8}F_{4}^2"), 240),
        ("lie.dim.A7C3^2A3", "weight-one algebra of the second exceptional case", dim_of("A_{7}C_{3}^2A_{3}"), 120),
        ("lie.dim.A15D9", "weight-one dimension of V_N(A15 D9)", dim_of("A15D9"), 408),
        ("lie.dim.A7^2D5^2", "weight-one dimension of V_N(A7^2 D5^2)", dim_of("A_7^2D_5^2"), 216),
        ("lie.dim.C8", "fixed-point ideal of type C8", dim_of("C8"), 136),
        ("lie.dim.B4^2", "fixed-point ideal of type B4^2", dim_of("B4^2"), 72),
        ("lie.dim.A7", "63-dimensional ideal", dim_of("A7"), 63),
        ("lie.dim.A3B2^2A1^2", "41-dimensional complementary ideal", dim_of("A_3B_2^2A_1^2"), 41),
        ("lie.dim.A3B2^2A1^2.split", "ideal split 15+10+10+3+3",
         sum(dim_of(x) for x in ("A3", "B2", "B2", "A1", "A1")), 41),
        ("lie.dim.A7A3B2^2A1^2", "fixed-point algebra of the A7^2 D5^2 involution",
         dim_of("A_{7}A_{3}B_2^2A_{1}^2"), 104),
        ("lie.roots.A3B2^2A1^2", "root space of dimension 32", _roots_of("A3B2^2A1^2"), 32),
        ("lie.roots.A7", "root space of dimension 56", _roots_of("A7"), 56),
        ("lie.dim.A7^2", "126-dimensional ideal", dim_of("A7^2"), 126),
        ("lie.ideal126.A7^2D5^2", "A7^2 D5^2 has a 126-dimensional ideal", int(126 in A7D5.ideal_dims()), 1),
        ("lie.ideal126.D9A7", "D9 A7 has no 126-dimensional ideal", int(126 in D9A7.ideal_dims()), 0),
        ("lie.dim.D9A7", "weight-one algebra of the rejected orbifold branch", D9A7.dim, 216),
        ("lie.dim.A3A1^2", "fixed points of an inner root involution of D5", dim_of("A3A1^2"), 21),
        ("lie.dim.B2^2", "fixed points of a lift of -1 on D5", dim_of("B2^2"), 20),
        ("lie.dim.C8B4^2", "fixed-point algebra of the A15 D9 involution", dim_of("C8B4^2"), 208),
    ]
    return [DimCheck(*r) for r in rows]


COUNT_SUMMANDS = (
    ("D inside an extended doubling", 39),
    ("D inside RM(1,4)^3", 10),
    ("D inside RM(1,4) + extended doubling of d16+", 4),
    ("D a subcode of the triangular 48-code", 3),
)


@dataclass
class CountReport:
    summands: tuple[int, ...]
    partial_sums: tuple[int, ...]
    total: int

    @property
    def ok(self) -> bool:
        monotone = all(a < b for a, b in zip(self.partial_sums, self.partial_sums[1:]))
        return self.total == 56 and len(self.summands) == 4 and monotone


def count_56() -> CountReport:
    vals = tuple(v for _, v in COUNT_SUMMANDS)
    partial, run = [], 0
    for v in vals:
        run += v
        partial.append(run)
    return CountReport(vals, tuple(partial), run)
